#include "dcm/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace dcm {

namespace {

using json = nlohmann::ordered_json;

json json_or_null(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

std::string format_cell(const std::optional<double>& v) {
    if (!v) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", *v);
    return buf;
}

json metric_entry(const MetricValue& v, bool include_timings) {
    const MetricDef* def = find_metric(v.name);
    json e;
    e["value"] = json_or_null(v.value);
    if (!v.error.empty()) e["error"] = v.error;
    e["direction"] =
        def->direction == Direction::more_complex ? "higher_more_complex" : "higher_simpler";
    if (include_timings) e["seconds"] = v.seconds;
    return e;
}

}  // namespace

std::string measure_report_json(const MeasureReport& report) {
    json root;
    root["schema_version"] = kSchemaVersion;
    root["source"] = report.source;
    root["n"] = report.n;
    root["d"] = report.d;
    root["k"] = report.k;
    root["seed"] = report.seed;
    json metrics = json::object();
    for (const MetricValue& v : report.metrics)
        metrics[v.name] = metric_entry(v, report.include_timings);
    root["metrics"] = metrics;
    if (!report.ball_dump.empty()) {
        json covers = json::array();
        for (const BallCover& cover : report.ball_dump) {
            json c;
            c["class_id"] = cover.class_id;
            c["metric"] = metric_name(cover.metric);
            json balls = json::array();
            for (const Ball& b : cover.balls) {
                json jb;
                jb["center"] = b.center;
                jb["radius"] = b.radius;
                jb["covered"] = b.covered;
                balls.push_back(jb);
            }
            c["balls"] = balls;
            covers.push_back(c);
        }
        root["ball_covers"] = covers;
    }
    if (!report.per_pair.empty()) {
        json pairs = json::array();
        for (const PairLinearity& p : report.per_pair) {
            json jp;
            jp["class_a"] = p.class_a;
            jp["class_b"] = p.class_b;
            jp["l1"] = p.metrics.l1;
            jp["l2"] = p.metrics.l2;
            jp["l3"] = p.metrics.l3;
            pairs.push_back(jp);
        }
        root["linearity_per_pair"] = pairs;
    }
    return root.dump(2) + "\n";
}

std::string measure_report_csv(const MeasureReport& report) {
    std::string out = "metric,value,direction,error\n";
    char buf[40];
    for (const MetricValue& v : report.metrics) {
        const MetricDef* def = find_metric(v.name);
        out += v.name;
        out += ',';
        if (v.value) {
            std::snprintf(buf, sizeof buf, "%.17g", *v.value);
            out += buf;
        }
        out += ',';
        out += def->direction == Direction::more_complex ? "higher_more_complex" : "higher_simpler";
        out += ',';
        out += v.error;
        out += '\n';
    }
    return out;
}

namespace {

json classifier_entry(const ClassifierEval& ce) {
    json e;
    if (!ce.ok) {
        e["error"] = ce.error;
        return e;
    }
    e["auc"] = json_or_null(ce.mean_auc);
    e["geom"] = json_or_null(ce.mean_geom);
    json folds = json::array();
    for (const FoldPerf& p : ce.folds) {
        json f;
        f["auc"] = json_or_null(p.auc);
        f["geom"] = p.geom;
        if (p.geom_flagged) f["degenerate_row"] = true;
        json cm = json::array();
        for (std::size_t t = 0; t < p.cm.k; ++t) {
            json row = json::array();
            for (std::size_t q = 0; q < p.cm.k; ++q) row.push_back(p.cm.at(t, q));
            cm.push_back(row);
        }
        f["confusion"] = cm;
        folds.push_back(f);
    }
    e["folds"] = folds;
    return e;
}

}  // namespace

std::string evaluate_report_json(const std::string& source, const DatasetEval& eval,
                                 std::uint64_t seed) {
    json root;
    root["schema_version"] = kSchemaVersion;
    root["source"] = source;
    root["seed"] = seed;
    json classifiers = json::object();
    for (const ClassifierEval& ce : eval.classifiers) classifiers[ce.name] = classifier_entry(ce);
    root["classifiers"] = classifiers;
    return root.dump(2) + "\n";
}

std::string evaluate_report_csv(const DatasetEval& eval) {
    std::string out = "classifier,auc,geom,error\n";
    for (const ClassifierEval& ce : eval.classifiers) {
        out += ce.name;
        out += ',';
        out += format_cell(ce.mean_auc);
        out += ',';
        out += format_cell(ce.mean_geom);
        out += ',';
        out += ce.error;
        out += '\n';
    }
    return out;
}

std::string study_report_json(const StudyResult& result) {
    json root;
    root["schema_version"] = kSchemaVersion;
    root["seed"] = result.seed;

    json datasets = json::array();
    for (const StudyDatasetResult& r : result.datasets) {
        json e;
        e["id"] = r.id;
        if (!r.load_error.empty()) {
            e["error"] = r.load_error;
            datasets.push_back(e);
            continue;
        }
        e["n"] = r.n;
        e["d"] = r.d;
        e["k"] = r.k;
        if (r.theoretical_overlap) e["theoretical_overlap"] = *r.theoretical_overlap;
        json metrics = json::object();
        json errors = json::object();
        for (const MetricValue& v : r.metrics) {
            metrics[v.name] = json_or_null(v.value);
            if (!v.error.empty()) errors[v.name] = v.error;
        }
        e["metrics"] = metrics;
        if (!errors.empty()) e["metric_errors"] = errors;
        json perf = json::object();
        for (const auto& [clf, cell] : r.performance) {
            json pc;
            if (!cell.error.empty()) {
                pc["error"] = cell.error;
            } else {
                pc["auc"] = json_or_null(cell.auc);
                pc["geom"] = json_or_null(cell.geom);
            }
            perf[clf] = pc;
        }
        e["performance"] = perf;
        datasets.push_back(e);
    }
    root["datasets"] = datasets;

    auto table_json = [&](const std::vector<std::vector<std::optional<double>>>& cells) {
        json t = json::object();
        for (std::size_t m = 0; m < result.table.metric_names.size(); ++m) {
            json row = json::object();
            for (std::size_t c = 0; c < result.table.columns.size(); ++c)
                row[result.table.columns[c]] = json_or_null(cells[m][c]);
            t[result.table.metric_names[m]] = row;
        }
        return t;
    };
    json correlations;
    correlations["pearson"] = table_json(result.table.pearson_cells);
    correlations["spearman"] = table_json(result.table.spearman_cells);
    root["correlations"] = correlations;

    if (result.table.has_overlap) {
        json oc;
        json op = json::object(), os = json::object();
        for (std::size_t m = 0; m < result.table.metric_names.size(); ++m) {
            op[result.table.metric_names[m]] = json_or_null(result.table.overlap_pearson[m]);
            os[result.table.metric_names[m]] = json_or_null(result.table.overlap_spearman[m]);
        }
        oc["pearson"] = op;
        oc["spearman"] = os;
        root["overlap_correlations"] = oc;
    }
    return root.dump(2) + "\n";
}

std::string study_report_csv(const StudyResult& result) {
    std::string out = "series";
    for (const std::string& m : result.table.metric_names) out += "," + m;
    out += '\n';
    for (std::size_t c = 0; c < result.table.columns.size(); ++c) {
        out += "pearson_" + result.table.columns[c];
        for (std::size_t m = 0; m < result.table.metric_names.size(); ++m)
            out += "," + format_cell(result.table.pearson_cells[m][c]);
        out += '\n';
    }
    if (result.table.has_overlap) {
        out += "pearson_theoretical_overlap";
        for (std::size_t m = 0; m < result.table.metric_names.size(); ++m)
            out += "," + format_cell(result.table.overlap_pearson[m]);
        out += '\n';
    }
    return out;
}

std::string generation_metadata_json(const SyntheticSpec& spec, const GenerationInfo& info) {
    json root;
    root["schema_version"] = kSchemaVersion;
    root["shape"] = shape_name(spec.shape);
    root["target_overlap"] = spec.overlap_pct;
    json achieved = json::array();
    for (const PairwiseOverlap& p : info.achieved) {
        json e;
        e["class_a"] = p.class_a;
        e["class_b"] = p.class_b;
        e["pct"] = p.pct;
        achieved.push_back(e);
    }
    root["achieved_pairwise_overlaps"] = achieved;
    root["imbalance"] = spec.imbalance;
    root["seed"] = spec.seed;
    root["n_per_class"] = info.n_per_class;
    root["points_per_class_base"] = spec.points_per_class_base;
    return root.dump(2) + "\n";
}

}  // namespace dcm
