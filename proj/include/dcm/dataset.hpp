// Dataset representation, ingestion (CSV / KEEL .dat) and min-max scaling.
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dcm {

// Immutable once built: a dense n x d feature matrix with integer class ids
// in [0, k) and the original class names in first-appearance order.
struct Dataset {
    std::vector<double> features;  // row-major, size n * d
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<int> labels;
    std::vector<std::string> class_names;
    bool normalized = false;

    std::size_t k() const { return class_names.size(); }

    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * d, d};
    }

    double at(std::size_t i, std::size_t j) const { return features[i * d + j]; }

    std::vector<std::size_t> class_counts() const;
    std::vector<std::vector<int>> class_indices() const;

    // Checks the structural invariants (finite features, k >= 2, every class
    // non-empty, normalized range if flagged). Throws on violation.
    void validate() const;
};

// Comma-delimited text with a header row. The label column is selected by
// name, defaulting to the last column. Label values become dense integer ids
// in first-appearance order.
Dataset load_csv(std::istream& in, const std::optional<std::string>& label_column = {});

// KEEL .dat: @relation / @attribute declarations followed by @data rows.
// The output attribute (default: last declared) is the class; nominal input
// attributes are rejected.
Dataset load_keel(std::istream& in);

// Dispatches on extension: .dat -> load_keel, anything else -> load_csv.
Dataset load_file(const std::filesystem::path& path,
                  const std::optional<std::string>& label_column = {});

// Rescales every column to [0,1] via (x - min) / (max - min); constant
// columns map to all zeros. Idempotent.
Dataset normalize_minmax(const Dataset& ds);

// Writes the load_csv format (header "f0,...,fD,class"), full precision.
void write_csv(const Dataset& ds, std::ostream& out);

}  // namespace dcm
