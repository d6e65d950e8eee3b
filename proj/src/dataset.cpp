#include "dcm/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "dcm/error.hpp"

namespace dcm {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_comma(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool parse_double(const std::string& cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

// Shared tail: map label strings to dense ids in first-appearance order and
// assemble the Dataset.
Dataset assemble(std::vector<double> features, std::size_t d,
                 const std::vector<std::string>& label_cells) {
    Dataset ds;
    ds.d = d;
    ds.n = label_cells.size();
    ds.features = std::move(features);
    ds.labels.reserve(ds.n);
    std::unordered_map<std::string, int> ids;
    for (const auto& name : label_cells) {
        auto it = ids.find(name);
        if (it == ids.end()) {
            int id = static_cast<int>(ds.class_names.size());
            ids.emplace(name, id);
            ds.class_names.push_back(name);
            ds.labels.push_back(id);
        } else {
            ds.labels.push_back(it->second);
        }
    }
    if (ds.class_names.size() < 2)
        throw DegenerateDataset("dataset has fewer than 2 distinct class labels");
    return ds;
}

}  // namespace

std::vector<std::size_t> Dataset::class_counts() const {
    std::vector<std::size_t> counts(k(), 0);
    for (int label : labels) counts[static_cast<std::size_t>(label)]++;
    return counts;
}

std::vector<std::vector<int>> Dataset::class_indices() const {
    std::vector<std::vector<int>> idx(k());
    for (std::size_t i = 0; i < n; ++i) idx[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));
    return idx;
}

void Dataset::validate() const {
    if (features.size() != n * d) throw Error("feature buffer size mismatch");
    if (labels.size() != n) throw Error("label count mismatch");
    for (double v : features)
        if (!std::isfinite(v)) throw Error("non-finite feature value");
    if (k() < 2) throw DegenerateDataset("dataset has fewer than 2 classes");
    auto counts = class_counts();
    for (std::size_t c = 0; c < counts.size(); ++c)
        if (counts[c] == 0) throw DegenerateDataset("class " + class_names[c] + " has no instances");
    for (int label : labels)
        if (label < 0 || static_cast<std::size_t>(label) >= k()) throw Error("label id out of range");
    if (normalized) {
        for (double v : features)
            if (v < 0.0 || v > 1.0) throw Error("normalized feature outside [0,1]");
    }
}

Dataset load_csv(std::istream& in, const std::optional<std::string>& label_column) {
    std::string line;
    if (!std::getline(in, line)) throw MalformedInput("empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_comma(line);
    if (header.size() < 2) throw MalformedInput("header must have at least 2 columns");

    std::size_t label_idx = header.size() - 1;
    if (label_column) {
        auto it = std::find(header.begin(), header.end(), *label_column);
        if (it == header.end())
            throw MalformedInput("label column '" + *label_column + "' not found in header");
        label_idx = static_cast<std::size_t>(it - header.begin());
    }
    const std::size_t d = header.size() - 1;

    std::vector<double> features;
    std::vector<std::string> label_cells;
    long row_no = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        ++row_no;
        std::vector<std::string> cells = split_comma(line);
        if (cells.size() != header.size())
            throw MalformedInput("row has " + std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()),
                                 row_no);
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j == label_idx) continue;
            double v;
            if (!parse_double(cells[j], v))
                throw MalformedInput("non-numeric feature cell '" + cells[j] + "'", row_no,
                                     static_cast<long>(j + 1));
            features.push_back(v);
        }
        label_cells.push_back(cells[label_idx]);
    }
    if (label_cells.empty()) throw DegenerateDataset("no data rows");
    return assemble(std::move(features), d, label_cells);
}

Dataset load_keel(std::istream& in) {
    struct Attribute {
        std::string name;
        bool nominal = false;
    };
    std::vector<Attribute> attrs;
    std::vector<std::string> inputs, outputs;
    bool in_data = false;

    std::vector<std::vector<std::string>> data_rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty()) continue;
        if (!in_data && t[0] == '@') {
            std::string lt = lower(t);
            if (lt.rfind("@relation", 0) == 0) continue;
            if (lt.rfind("@attribute", 0) == 0) {
                std::string rest = trim(t.substr(10));
                // name runs to the first space, '{' or '['
                std::size_t pos = rest.find_first_of(" \t{[");
                Attribute a;
                a.name = pos == std::string::npos ? rest : rest.substr(0, pos);
                std::string type = pos == std::string::npos ? "" : trim(rest.substr(pos));
                a.nominal = !type.empty() && type[0] == '{';
                attrs.push_back(a);
                continue;
            }
            if (lt.rfind("@inputs", 0) == 0) {
                inputs = split_comma(trim(t.substr(7)));
                continue;
            }
            if (lt.rfind("@outputs", 0) == 0) {
                outputs = split_comma(trim(t.substr(8)));
                continue;
            }
            if (lt.rfind("@data", 0) == 0) {
                in_data = true;
                continue;
            }
            throw MalformedInput("unrecognized directive: " + t);
        }
        if (in_data) data_rows.push_back(split_comma(t));
    }
    if (!in_data) throw MalformedInput("missing @data section");
    if (attrs.empty()) throw MalformedInput("no @attribute declarations");

    // Resolve the class attribute: @outputs when present, else the last one.
    std::size_t class_idx = attrs.size() - 1;
    if (!outputs.empty()) {
        if (outputs.size() != 1) throw UnsupportedFeatureType("multiple output attributes");
        auto it = std::find_if(attrs.begin(), attrs.end(),
                               [&](const Attribute& a) { return a.name == outputs[0]; });
        if (it == attrs.end()) throw MalformedInput("@outputs names unknown attribute " + outputs[0]);
        class_idx = static_cast<std::size_t>(it - attrs.begin());
    }

    // Feature columns: @inputs when present (order from the header), else all
    // non-class attributes in declaration order.
    std::vector<std::size_t> feature_cols;
    if (!inputs.empty()) {
        for (const auto& name : inputs) {
            auto it = std::find_if(attrs.begin(), attrs.end(),
                                   [&](const Attribute& a) { return a.name == name; });
            if (it == attrs.end()) throw MalformedInput("@inputs names unknown attribute " + name);
            std::size_t idx = static_cast<std::size_t>(it - attrs.begin());
            if (idx != class_idx) feature_cols.push_back(idx);
        }
    } else {
        for (std::size_t j = 0; j < attrs.size(); ++j)
            if (j != class_idx) feature_cols.push_back(j);
    }
    for (std::size_t j : feature_cols)
        if (attrs[j].nominal)
            throw UnsupportedFeatureType("nominal input attribute '" + attrs[j].name + "'");

    std::vector<double> features;
    std::vector<std::string> label_cells;
    long row_no = 0;
    for (const auto& cells : data_rows) {
        ++row_no;
        if (cells.size() != attrs.size())
            throw MalformedInput("data row has " + std::to_string(cells.size()) +
                                     " values, expected " + std::to_string(attrs.size()),
                                 row_no);
        for (std::size_t j : feature_cols) {
            double v;
            if (!parse_double(cells[j], v))
                throw MalformedInput("non-numeric value '" + cells[j] + "' for attribute " +
                                         attrs[j].name,
                                     row_no, static_cast<long>(j + 1));
            features.push_back(v);
        }
        label_cells.push_back(cells[class_idx]);
    }
    if (label_cells.empty()) throw DegenerateDataset("no data rows");
    return assemble(std::move(features), feature_cols.size(), label_cells);
}

Dataset load_file(const std::filesystem::path& path,
                  const std::optional<std::string>& label_column) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path.string());
    if (lower(path.extension().string()) == ".dat") return load_keel(in);
    return load_csv(in, label_column);
}

Dataset normalize_minmax(const Dataset& ds) {
    Dataset out = ds;
    for (std::size_t j = 0; j < ds.d; ++j) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ds.n; ++i) {
            lo = std::min(lo, ds.at(i, j));
            hi = std::max(hi, ds.at(i, j));
        }
        const double range = hi - lo;
        for (std::size_t i = 0; i < ds.n; ++i)
            out.features[i * ds.d + j] = range > 0.0 ? (ds.at(i, j) - lo) / range : 0.0;
    }
    out.normalized = true;
    return out;
}

void write_csv(const Dataset& ds, std::ostream& out) {
    for (std::size_t j = 0; j < ds.d; ++j) out << 'f' << j << ',';
    out << "class\n";
    char buf[64];
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = 0; j < ds.d; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", ds.at(i, j));
            out << buf << ',';
        }
        out << ds.class_names[static_cast<std::size_t>(ds.labels[i])] << '\n';
    }
}

}  // namespace dcm
