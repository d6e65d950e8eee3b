// Drives the metric-versus-performance correlation experiment over a
// collection of datasets: all requested metrics, 5-fold CV of the requested
// classifiers, and Pearson/Spearman tables over the collection.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcm/dataset.hpp"
#include "dcm/eval.hpp"
#include "dcm/registry.hpp"

namespace dcm {

struct StudyInput {
    std::string id;
    Dataset data;  // raw; normalized internally
    std::optional<double> theoretical_overlap;
};

struct StudyOptions {
    std::uint64_t seed = kDefaultSeed;  // governs fold assignment only
    int jobs = 1;
    std::vector<std::string> metrics;      // registry names; empty = all
    std::vector<std::string> classifiers;  // empty = {1nn, 3nn, nb}
    MeasureOptions measure;                // metric seeds stay at their fixed default
};

struct PerfCell {
    std::optional<double> auc;
    std::optional<double> geom;
    std::string error;  // classifier-level failure
};

struct StudyDatasetResult {
    std::string id;
    std::size_t n = 0, d = 0, k = 0;
    std::optional<double> theoretical_overlap;
    std::string load_error;  // whole-dataset failure
    std::vector<MetricValue> metrics;
    std::vector<std::pair<std::string, PerfCell>> performance;  // classifier order
};

struct CorrelationTable {
    std::vector<std::string> metric_names;
    std::vector<std::string> columns;  // "<classifier>_<auc|geom>"
    // cells[m][c]; empty = undefined (zero variance or < 3 paired samples)
    std::vector<std::vector<std::optional<double>>> pearson_cells;
    std::vector<std::vector<std::optional<double>>> spearman_cells;
    std::vector<std::optional<double>> overlap_pearson;   // per metric
    std::vector<std::optional<double>> overlap_spearman;  // per metric
    bool has_overlap = false;

    std::optional<double> pearson_cell(const std::string& metric, const std::string& column) const;
};

struct StudyResult {
    std::uint64_t seed = 0;
    std::vector<StudyDatasetResult> datasets;
    CorrelationTable table;
};

// Throws PreconditionViolated with fewer than 3 datasets. Per-dataset work
// units run concurrently with jobs > 1; the aggregation is an ordered
// reduction, so results do not depend on scheduling.
StudyResult run_study(const std::vector<StudyInput>& inputs, const StudyOptions& options);

}  // namespace dcm
