#include "dcm/study.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "dcm/error.hpp"

namespace dcm {

std::optional<double> CorrelationTable::pearson_cell(const std::string& metric,
                                                     const std::string& column) const {
    const auto mi = std::find(metric_names.begin(), metric_names.end(), metric);
    const auto ci = std::find(columns.begin(), columns.end(), column);
    if (mi == metric_names.end() || ci == columns.end()) return std::nullopt;
    return pearson_cells[static_cast<std::size_t>(mi - metric_names.begin())]
                        [static_cast<std::size_t>(ci - columns.begin())];
}

StudyResult run_study(const std::vector<StudyInput>& inputs, const StudyOptions& options) {
    if (inputs.size() < 3) throw PreconditionViolated("a study needs at least 3 datasets");

    const std::vector<std::string> metric_names =
        options.metrics.empty() ? resolve_metric_selection({"all"}) : options.metrics;
    const std::vector<std::string> classifiers =
        options.classifiers.empty() ? kClassifierNames : options.classifiers;

    StudyResult result;
    result.seed = options.seed;
    result.datasets.resize(inputs.size());

    auto process = [&](std::size_t i) {
        const StudyInput& in = inputs[i];
        StudyDatasetResult& r = result.datasets[i];
        r.id = in.id;
        r.theoretical_overlap = in.theoretical_overlap;
        try {
            Dataset norm = normalize_minmax(in.data);
            norm.validate();
            r.n = norm.n;
            r.d = norm.d;
            r.k = norm.k();
            // Metric randomness stays pinned to the fixed default so metric
            // values are a property of the dataset alone; the study seed only
            // moves fold assignments.
            r.metrics = compute_metrics(norm, metric_names, options.measure);
            const DatasetEval eval =
                evaluate_dataset(norm, derive_seed(options.seed, i), classifiers);
            for (const ClassifierEval& ce : eval.classifiers) {
                PerfCell cell;
                if (ce.ok) {
                    cell.auc = ce.mean_auc;
                    cell.geom = ce.mean_geom;
                } else {
                    cell.error = ce.error;
                }
                r.performance.emplace_back(ce.name, cell);
            }
        } catch (const std::exception& e) {
            r.load_error = e.what();
        }
    };

    const std::size_t workers = std::min<std::size_t>(
        std::max(1, options.jobs), inputs.size());
    if (workers > 1) {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < inputs.size(); i = next.fetch_add(1))
                    process(i);
            });
        }
        for (auto& t : pool) t.join();
    } else {
        for (std::size_t i = 0; i < inputs.size(); ++i) process(i);
    }

    // Correlation tables over the collection, cell by cell; a dataset joins a
    // cell only when both series are defined for it.
    CorrelationTable& table = result.table;
    table.metric_names = metric_names;
    for (const std::string& clf : classifiers) {
        table.columns.push_back(clf + "_auc");
        table.columns.push_back(clf + "_geom");
    }
    auto metric_value_of = [&](const StudyDatasetResult& r,
                               const std::string& name) -> std::optional<double> {
        if (!r.load_error.empty()) return std::nullopt;
        for (const MetricValue& v : r.metrics)
            if (v.name == name) return v.value;
        return std::nullopt;
    };
    auto perf_value_of = [&](const StudyDatasetResult& r,
                             const std::string& column) -> std::optional<double> {
        if (!r.load_error.empty()) return std::nullopt;
        for (const auto& [clf, cell] : r.performance) {
            if (column == clf + "_auc") return cell.auc;
            if (column == clf + "_geom") return cell.geom;
        }
        return std::nullopt;
    };

    for (const StudyDatasetResult& r : result.datasets)
        if (r.theoretical_overlap) table.has_overlap = true;

    for (const std::string& metric : table.metric_names) {
        std::vector<std::optional<double>> prow, srow;
        for (const std::string& column : table.columns) {
            std::vector<double> xs, ys;
            for (const StudyDatasetResult& r : result.datasets) {
                const auto x = metric_value_of(r, metric);
                const auto y = perf_value_of(r, column);
                if (x && y) {
                    xs.push_back(*x);
                    ys.push_back(*y);
                }
            }
            prow.push_back(pearson(xs, ys));
            srow.push_back(spearman(xs, ys));
        }
        table.pearson_cells.push_back(std::move(prow));
        table.spearman_cells.push_back(std::move(srow));

        std::vector<double> xs, ys;
        for (const StudyDatasetResult& r : result.datasets) {
            const auto x = metric_value_of(r, metric);
            if (x && r.theoretical_overlap) {
                xs.push_back(*x);
                ys.push_back(*r.theoretical_overlap);
            }
        }
        table.overlap_pearson.push_back(pearson(xs, ys));
        table.overlap_spearman.push_back(spearman(xs, ys));
    }
    return result;
}

}  // namespace dcm
