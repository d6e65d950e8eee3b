// The single source of metric names, groups, directions and declared ranges,
// plus the orchestration that computes any selection of metrics over one
// dataset.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcm/dataset.hpp"
#include "dcm/onb.hpp"
#include "dcm/rng.hpp"

namespace dcm {

enum class Direction { more_complex, simpler };

struct MetricDef {
    const char* name;
    const char* group;  // onb | neighborhood | feature | linearity | dimensionality | balance | network
    Direction direction;  // what larger values mean
    bool bounded;
    double lo;
    double hi;
};

// 26 metrics in report order.
const std::vector<MetricDef>& metric_registry();
const MetricDef* find_metric(const std::string& name);

// Expands group names ("onb", "neighborhood", "feature", "linearity",
// "dimensionality", "balance", "network"), "all", or individual metric names
// into a registry-ordered unique list. Throws Error on unknown tokens.
std::vector<std::string> resolve_metric_selection(const std::vector<std::string>& tokens);

struct MeasureOptions {
    std::uint64_t seed = kDefaultSeed;
    double eps_quantile = 0.15;
    double pca_threshold = 0.95;
    bool raw_network = false;  // report raw graph statistics instead of 1-x
    int jobs = 1;
};

struct MetricValue {
    std::string name;
    std::optional<double> value;  // empty on error or non-finite sentinel
    std::string error;            // failure or undefined-flag reason
    double seconds = 0.0;         // where the shared work was timed
};

// Computes the selected metrics on a normalized dataset. Individual metric
// failures are captured per entry; shared inputs (distance matrices) are
// computed once. With jobs > 1 the metric groups run concurrently; values
// are independent of scheduling.
std::vector<MetricValue> compute_metrics(const Dataset& ds, const std::vector<std::string>& which,
                                         const MeasureOptions& options);

// Per-class covers for the --dump-balls output.
std::vector<BallCover> all_covers(const Dataset& ds, Metric metric);

}  // namespace dcm
