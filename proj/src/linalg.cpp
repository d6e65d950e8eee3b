#include "dcm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dcm {

SymEigen jacobi_eigen(std::vector<double> a, std::size_t d, double tol, int max_sweeps) {
    std::vector<double> v(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0;

    double scale = 0.0;
    for (double x : a) scale += x * x;
    scale = std::sqrt(scale);
    const double threshold = tol * std::max(scale, 1e-300);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) off += a[p * d + q] * a[p * d + q];
        if (std::sqrt(2.0 * off) <= threshold) break;

        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = a[p * d + q];
                if (std::fabs(apq) <= threshold / (static_cast<double>(d) * static_cast<double>(d)))
                    continue;
                const double app = a[p * d + p];
                const double aqq = a[q * d + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < d; ++i) {
                    const double aip = a[i * d + p];
                    const double aiq = a[i * d + q];
                    a[i * d + p] = c * aip - s * aiq;
                    a[i * d + q] = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    const double api = a[p * d + i];
                    const double aqi = a[q * d + i];
                    a[p * d + i] = c * api - s * aqi;
                    a[q * d + i] = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    const double vpi = v[p * d + i];
                    const double vqi = v[q * d + i];
                    v[p * d + i] = c * vpi - s * vqi;
                    v[q * d + i] = s * vpi + c * vqi;
                }
            }
        }
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a[x * d + x] > a[y * d + y]; });

    SymEigen out;
    out.values.resize(d);
    out.vectors.resize(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        out.values[r] = a[order[r] * d + order[r]];
        for (std::size_t i = 0; i < d; ++i) out.vectors[r * d + i] = v[order[r] * d + i];
    }
    return out;
}

}  // namespace dcm
