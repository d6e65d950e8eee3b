#include "dcm/registry.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <thread>

#include "dcm/error.hpp"
#include "dcm/feature_linearity.hpp"
#include "dcm/neighborhood.hpp"
#include "dcm/structural.hpp"

namespace dcm {

const std::vector<MetricDef>& metric_registry() {
    static const std::vector<MetricDef> defs = {
        {"onb_tot_euc", "onb", Direction::more_complex, true, 0.0, 1.0},
        {"onb_avg_euc", "onb", Direction::more_complex, true, 0.0, 1.0},
        {"onb_tot_man", "onb", Direction::more_complex, true, 0.0, 1.0},
        {"onb_avg_man", "onb", Direction::more_complex, true, 0.0, 1.0},
        {"n1", "neighborhood", Direction::more_complex, true, 0.0, 1.0},
        {"n2", "neighborhood", Direction::more_complex, true, 0.0, 1.0},
        {"n3", "neighborhood", Direction::more_complex, true, 0.0, 1.0},
        {"n4", "neighborhood", Direction::more_complex, true, 0.0, 1.0},
        {"t1", "neighborhood", Direction::more_complex, true, 0.0, 1.0},
        {"lsc", "neighborhood", Direction::more_complex, true, 0.0, 1.0},
        {"f1", "feature", Direction::simpler, false, 0.0, 0.0},
        {"f1v", "feature", Direction::simpler, false, 0.0, 0.0},
        {"f2", "feature", Direction::more_complex, true, 0.0, 1.0},
        {"f3", "feature", Direction::simpler, true, 0.0, 1.0},
        {"f4", "feature", Direction::simpler, true, 0.0, 1.0},
        {"l1", "linearity", Direction::more_complex, false, 0.0, 0.0},
        {"l2", "linearity", Direction::more_complex, true, 0.0, 1.0},
        {"l3", "linearity", Direction::more_complex, true, 0.0, 1.0},
        {"t2", "dimensionality", Direction::more_complex, false, 0.0, 0.0},
        {"t3", "dimensionality", Direction::more_complex, true, 0.0, 1.0},
        {"t4", "dimensionality", Direction::more_complex, true, 0.0, 1.0},
        {"c1", "balance", Direction::simpler, true, 0.0, 1.0},
        {"c2", "balance", Direction::more_complex, true, 0.0, 1.0},
        {"density", "network", Direction::more_complex, true, 0.0, 1.0},
        {"cls_coef", "network", Direction::more_complex, true, 0.0, 1.0},
        {"hubs", "network", Direction::more_complex, true, 0.0, 1.0},
    };
    return defs;
}

const MetricDef* find_metric(const std::string& name) {
    for (const MetricDef& def : metric_registry())
        if (name == def.name) return &def;
    return nullptr;
}

std::vector<std::string> resolve_metric_selection(const std::vector<std::string>& tokens) {
    std::vector<bool> selected(metric_registry().size(), false);
    auto select_group = [&](const std::string& group) {
        bool any = false;
        for (std::size_t i = 0; i < metric_registry().size(); ++i) {
            if (group == metric_registry()[i].group) {
                selected[i] = true;
                any = true;
            }
        }
        return any;
    };
    for (const std::string& token : tokens) {
        if (token == "all") {
            std::fill(selected.begin(), selected.end(), true);
            continue;
        }
        if (select_group(token)) continue;
        bool found = false;
        for (std::size_t i = 0; i < metric_registry().size(); ++i) {
            if (token == metric_registry()[i].name) {
                selected[i] = true;
                found = true;
                break;
            }
        }
        if (!found) throw Error("unknown metric or group: " + token);
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < metric_registry().size(); ++i)
        if (selected[i]) out.push_back(metric_registry()[i].name);
    return out;
}

std::vector<BallCover> all_covers(const Dataset& ds, Metric metric) {
    const DistanceMatrix dm = distance_matrix(ds, metric);
    std::vector<BallCover> covers;
    for (std::size_t c = 0; c < ds.k(); ++c)
        covers.push_back(pcccd_cover(dm, ds.labels, static_cast<int>(c)));
    return covers;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct GroupTask {
    std::vector<std::string> metrics;  // this group's requested metrics
    std::function<void()> run;
};

}  // namespace

std::vector<MetricValue> compute_metrics(const Dataset& ds, const std::vector<std::string>& which,
                                         const MeasureOptions& options) {
    if (!ds.normalized) throw PreconditionViolated("metrics require a normalized dataset");

    std::map<std::string, std::size_t> slot;
    std::vector<MetricValue> out;
    for (const MetricDef& def : metric_registry()) {
        if (std::find(which.begin(), which.end(), def.name) == which.end()) continue;
        slot[def.name] = out.size();
        out.push_back({def.name, std::nullopt, "", 0.0});
    }

    auto wants_group = [&](const char* group) {
        for (const MetricValue& v : out)
            if (find_metric(v.name)->group == std::string(group)) return true;
        return false;
    };
    auto set_value = [&](const std::string& name, double v, double secs) {
        auto it = slot.find(name);
        if (it == slot.end()) return;
        MetricValue& mv = out[it->second];
        mv.seconds = secs;
        if (std::isfinite(v))
            mv.value = v;
        else
            mv.error = "undefined (non-finite value)";
    };
    auto set_error = [&](const char* group, const std::string& message) {
        for (MetricValue& v : out)
            if (find_metric(v.name)->group == std::string(group) && !v.value && v.error.empty())
                v.error = message;
    };

    // Distance matrices shared across groups, built up front.
    const bool need_euc = wants_group("onb") || wants_group("neighborhood") || wants_group("network");
    const bool need_man = wants_group("onb");
    DistanceMatrix dm_euc, dm_man;
    if (need_euc) dm_euc = distance_matrix(ds, Metric::euclidean);
    if (need_man) dm_man = distance_matrix(ds, Metric::manhattan);

    std::vector<GroupTask> tasks;

    if (wants_group("onb")) {
        tasks.push_back({{"onb_tot_euc", "onb_avg_euc", "onb_tot_man", "onb_avg_man"}, [&] {
            try {
                const auto class_sizes = ds.class_counts();
                auto run_metric = [&](const DistanceMatrix& dm, const char* tot_name,
                                      const char* avg_name) {
                    const auto start = Clock::now();
                    const auto balls = pcccd_ball_counts(dm, ds.labels, ds.k());
                    const double secs = seconds_since(start);
                    std::size_t total = 0;
                    double ratio_sum = 0.0;
                    for (std::size_t c = 0; c < balls.size(); ++c) {
                        total += balls[c];
                        ratio_sum += static_cast<double>(balls[c]) /
                                     static_cast<double>(class_sizes[c]);
                    }
                    set_value(tot_name, static_cast<double>(total) / static_cast<double>(ds.n),
                              secs);
                    set_value(avg_name, ratio_sum / static_cast<double>(balls.size()), 0.0);
                };
                run_metric(dm_euc, "onb_tot_euc", "onb_avg_euc");
                run_metric(dm_man, "onb_tot_man", "onb_avg_man");
            } catch (const std::exception& e) {
                set_error("onb", e.what());
            }
        }});
    }

    if (wants_group("neighborhood")) {
        tasks.push_back({{"n1", "n2", "n3", "n4", "t1", "lsc"}, [&] {
            auto timed = [&](const char* name, auto&& fn) {
                const auto start = Clock::now();
                try {
                    const double v = fn();
                    set_value(name, v, seconds_since(start));
                } catch (const std::exception& e) {
                    out[slot[name]].error = e.what();
                }
            };
            timed("n1", [&] { return n1(ds, dm_euc); });
            timed("n2", [&] { return n2(ds, dm_euc); });
            timed("n3", [&] { return n3(ds, dm_euc); });
            timed("n4", [&] { return n4(ds, dm_euc, options.seed); });
            timed("t1", [&] { return t1(ds, dm_euc); });
            timed("lsc", [&] { return lsc(ds, dm_euc); });
        }});
    }

    if (wants_group("feature")) {
        tasks.push_back({{"f1", "f1v", "f2", "f3", "f4"}, [&] {
            const auto start = Clock::now();
            try {
                const FeatureOverlapMetrics m = feature_overlap_metrics(ds);
                set_value("f1", m.f1, seconds_since(start));
                set_value("f1v", m.f1v, 0.0);
                set_value("f2", m.f2, 0.0);
                set_value("f3", m.f3, 0.0);
                set_value("f4", m.f4, 0.0);
            } catch (const std::exception& e) {
                set_error("feature", e.what());
            }
        }});
    }

    if (wants_group("linearity")) {
        tasks.push_back({{"l1", "l2", "l3"}, [&] {
            const auto start = Clock::now();
            try {
                const LinearityMetrics m = linearity_metrics(ds, options.seed);
                set_value("l1", m.l1, seconds_since(start));
                set_value("l2", m.l2, 0.0);
                set_value("l3", m.l3, 0.0);
            } catch (const std::exception& e) {
                set_error("linearity", e.what());
            }
        }});
    }

    if (wants_group("dimensionality") || wants_group("balance")) {
        tasks.push_back({{"t2", "t3", "t4", "c1", "c2"}, [&] {
            if (wants_group("dimensionality")) {
                const auto start = Clock::now();
                try {
                    const DimensionalityMetrics m =
                        dimensionality_metrics(ds, options.pca_threshold);
                    set_value("t2", m.t2, seconds_since(start));
                    set_value("t3", m.t3, 0.0);
                    set_value("t4", m.t4, 0.0);
                } catch (const std::exception& e) {
                    set_error("dimensionality", e.what());
                }
            }
            if (wants_group("balance")) {
                const auto start = Clock::now();
                try {
                    const BalanceMetrics m = balance_metrics(ds);
                    set_value("c1", m.c1, seconds_since(start));
                    set_value("c2", m.c2, 0.0);
                } catch (const std::exception& e) {
                    set_error("balance", e.what());
                }
            }
        }});
    }

    if (wants_group("network")) {
        tasks.push_back({{"density", "cls_coef", "hubs"}, [&] {
            const auto start = Clock::now();
            try {
                const EpsGraph g = build_eps_graph(ds, dm_euc, options.eps_quantile);
                const NetworkMetrics m = network_metrics(g);
                if (options.raw_network) {
                    set_value("density", m.raw_density, seconds_since(start));
                    set_value("cls_coef", m.raw_cls_coef, 0.0);
                    set_value("hubs", m.raw_hubs, 0.0);
                } else {
                    set_value("density", m.density, seconds_since(start));
                    set_value("cls_coef", m.cls_coef, 0.0);
                    set_value("hubs", m.hubs, 0.0);
                }
            } catch (const std::exception& e) {
                set_error("network", e.what());
            }
        }});
    }

    if (options.jobs > 1 && tasks.size() > 1) {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        const std::size_t workers =
            std::min<std::size_t>(static_cast<std::size_t>(options.jobs), tasks.size());
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
                    tasks[i].run();
            });
        }
        for (auto& t : pool) t.join();
    } else {
        for (auto& task : tasks) task.run();
    }
    return out;
}

}  // namespace dcm
