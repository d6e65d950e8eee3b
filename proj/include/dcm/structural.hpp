// Dimensionality (PCA), class-balance and same-class-graph metrics. The
// graph metrics are emitted in the higher-is-more-complex orientation; the
// raw graph statistics stay available for diagnostics.
#pragma once

#include <cstddef>
#include <vector>

#include "dcm/dataset.hpp"
#include "dcm/distance.hpp"

namespace dcm {

struct DimensionalityMetrics {
    double t2 = 0.0;       // d / n
    double t3 = 0.0;       // pca components / n
    double t4 = 0.0;       // pca components / d
    std::size_t pca_m = 0; // components explaining >= threshold of variance
};

DimensionalityMetrics dimensionality_metrics(const Dataset& ds, double variance_threshold = 0.95);

struct BalanceMetrics {
    double c1 = 0.0;  // normalized entropy of class proportions (1 = balanced)
    double c2 = 0.0;  // 1 - 1/IR_multiclass (0 = balanced)
};

BalanceMetrics balance_metrics(const Dataset& ds);

struct EpsGraph {
    std::size_t n = 0;
    double quantile = 0.0;
    double threshold = 0.0;
    std::size_t edge_count = 0;
    std::vector<std::vector<int>> adj;  // sorted neighbour lists
};

// Connects same-class instances closer than the eps_quantile-quantile of the
// pairwise distance distribution (strict <).
EpsGraph build_eps_graph(const Dataset& ds, const DistanceMatrix& dm, double eps_quantile = 0.15);

struct NetworkMetrics {
    double density = 0.0;   // 1 - |E| / max edges
    double cls_coef = 0.0;  // 1 - mean local clustering coefficient
    double hubs = 0.0;      // 1 - mean normalized hub score
    double raw_density = 0.0;
    double raw_cls_coef = 0.0;
    double raw_hubs = 0.0;
};

NetworkMetrics network_metrics(const EpsGraph& g);

}  // namespace dcm
