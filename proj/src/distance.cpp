#include "dcm/distance.hpp"

#include <cmath>

#include "dcm/error.hpp"

namespace dcm {

const char* metric_name(Metric m) {
    return m == Metric::euclidean ? "euclidean" : "manhattan";
}

double row_distance(std::span<const double> a, std::span<const double> b, Metric m) {
    double acc = 0.0;
    if (m == Metric::euclidean) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double diff = a[j] - b[j];
            acc += diff * diff;
        }
        return std::sqrt(acc);
    }
    for (std::size_t j = 0; j < a.size(); ++j) acc += std::fabs(a[j] - b[j]);
    return acc;
}

DistanceMatrix distance_matrix(const Dataset& ds, Metric m) {
    if (!ds.normalized)
        throw PreconditionViolated("distance_matrix requires a normalized dataset");
    DistanceMatrix dm;
    dm.metric = m;
    dm.n = ds.n;
    dm.values.assign(ds.n * ds.n, 0.0);
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = i + 1; j < ds.n; ++j) {
            const double v = row_distance(ds.row(i), ds.row(j), m);
            dm.values[i * ds.n + j] = v;
            dm.values[j * ds.n + i] = v;
        }
    }
    return dm;
}

}  // namespace dcm
