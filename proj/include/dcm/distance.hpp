// Pairwise distance matrices shared by the distance-based metrics.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dcm/dataset.hpp"

namespace dcm {

enum class Metric { euclidean, manhattan };

const char* metric_name(Metric m);

struct DistanceMatrix {
    Metric metric = Metric::euclidean;
    std::size_t n = 0;
    std::vector<double> values;  // n * n, symmetric, zero diagonal

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

// Distance between two feature rows, fixed left-to-right summation order.
double row_distance(std::span<const double> a, std::span<const double> b, Metric m);

// Requires a normalized dataset so that all metrics see one canonical
// geometry; throws PreconditionViolated otherwise.
DistanceMatrix distance_matrix(const Dataset& ds, Metric m);

}  // namespace dcm
