// Feature-overlap metrics (Fisher ratios, overlap volume, feature
// efficiency) and linearity metrics backed by a deterministic soft-margin
// linear classifier. Multiclass problems decompose one-vs-one with
// unweighted pair averaging.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dcm/dataset.hpp"

namespace dcm {

struct FeatureOverlapMetrics {
    double f1 = 0.0;   // max per-feature between/within scatter ratio (may be +inf)
    double f1v = 0.0;  // Fisher ratio along the pooled-scatter discriminant direction
    double f2 = 0.0;   // product of per-feature overlap-interval ratios
    double f3 = 0.0;   // max per-feature fraction of points outside the overlap interval
    double f4 = 0.0;   // fraction discriminated by iterated F3 with point/feature removal
};

FeatureOverlapMetrics feature_overlap_metrics(const Dataset& ds);

struct LinearModel {
    std::vector<double> w;
    double b = 0.0;
    int epochs = 0;
    double objective = 0.0;  // final hinge + L2 objective
};

// Full-batch subgradient descent on hinge loss + (lambda/2)|w|^2 with
// lambda = 0.01, 500 epochs, step 1/(lambda * t), zero start. `y` holds +1 /
// -1 labels. Bit-for-bit reproducible.
LinearModel train_linear(const std::vector<std::vector<double>>& rows,
                         const std::vector<int>& y);

struct LinearityMetrics {
    double l1 = 0.0;  // mean error distance to the hyperplane over all points
    double l2 = 0.0;  // training error rate
    double l3 = 0.0;  // error rate on seeded same-class interpolants
};

struct PairLinearity {
    int class_a = 0;
    int class_b = 0;
    LinearityMetrics metrics;
};

LinearityMetrics linearity_metrics(const Dataset& ds, std::uint64_t seed,
                                   std::vector<PairLinearity>* per_pair = nullptr);

}  // namespace dcm
