#include "dcm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dcm/distance.hpp"
#include "dcm/error.hpp"
#include "dcm/rng.hpp"

namespace dcm {

int predict_row(const ScoreTable& st, std::size_t r) {
    int best = 0;
    double best_score = st.at(r, 0);
    for (std::size_t c = 1; c < st.k; ++c) {
        if (st.at(r, c) > best_score) {
            best_score = st.at(r, c);
            best = static_cast<int>(c);
        }
    }
    return best;
}

ConfusionMatrix confusion_from_scores(const ScoreTable& st) {
    ConfusionMatrix cm(st.k);
    for (std::size_t r = 0; r < st.rows(); ++r)
        cm.add(static_cast<std::size_t>(st.labels[r]), static_cast<std::size_t>(predict_row(st, r)));
    return cm;
}

ScoreTable knn_scores(const Dataset& ds, const std::vector<int>& train_idx,
                      const std::vector<int>& test_idx, int k) {
    if (!ds.normalized) throw PreconditionViolated("knn requires a normalized dataset");
    if (k != 1 && k != 3) throw PreconditionViolated("knn supports k = 1 or 3");
    ScoreTable st;
    st.k = ds.k();
    st.scores.assign(test_idx.size() * ds.k(), 0.0);
    st.labels.reserve(test_idx.size());

    struct Neighbor {
        double dist;
        int idx;
    };
    std::vector<Neighbor> best(static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < test_idx.size(); ++r) {
        const auto row = ds.row(static_cast<std::size_t>(test_idx[r]));
        std::size_t filled = 0;
        for (int ti : train_idx) {
            const Neighbor cand{row_distance(row, ds.row(static_cast<std::size_t>(ti)),
                                             Metric::euclidean),
                                ti};
            // Insertion keeps (distance, index) order; equal distances favour
            // the lower instance index.
            std::size_t pos = filled < best.size() ? filled : best.size();
            while (pos > 0 && (cand.dist < best[pos - 1].dist ||
                               (cand.dist == best[pos - 1].dist && cand.idx < best[pos - 1].idx))) {
                if (pos < best.size()) best[pos] = best[pos - 1];
                --pos;
            }
            if (pos < best.size()) {
                best[pos] = cand;
                if (filled < best.size()) ++filled;
            }
        }
        for (std::size_t m = 0; m < filled; ++m) {
            const int label = ds.labels[static_cast<std::size_t>(best[m].idx)];
            st.scores[r * st.k + static_cast<std::size_t>(label)] +=
                1.0 / static_cast<double>(filled);
        }
        st.labels.push_back(ds.labels[static_cast<std::size_t>(test_idx[r])]);
    }
    return st;
}

NbModel nb_train(const Dataset& ds, const std::vector<int>& train_idx) {
    NbModel model;
    model.k = ds.k();
    model.d = ds.d;
    model.mean.assign(model.k * model.d, 0.0);
    model.variance.assign(model.k * model.d, 0.0);
    model.log_prior.assign(model.k, 0.0);

    std::vector<std::size_t> counts(model.k, 0);
    for (int i : train_idx) counts[static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(i)])]++;
    for (std::size_t c = 0; c < model.k; ++c)
        if (counts[c] < 2)
            throw DegenerateFold("class " + ds.class_names[c] +
                                 " has fewer than 2 training instances");

    for (int i : train_idx) {
        const auto c = static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(i)]);
        for (std::size_t j = 0; j < model.d; ++j)
            model.mean[c * model.d + j] += ds.at(static_cast<std::size_t>(i), j);
    }
    for (std::size_t c = 0; c < model.k; ++c)
        for (std::size_t j = 0; j < model.d; ++j)
            model.mean[c * model.d + j] /= static_cast<double>(counts[c]);
    for (int i : train_idx) {
        const auto c = static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(i)]);
        for (std::size_t j = 0; j < model.d; ++j) {
            const double diff = ds.at(static_cast<std::size_t>(i), j) - model.mean[c * model.d + j];
            model.variance[c * model.d + j] += diff * diff;
        }
    }
    const double total = static_cast<double>(train_idx.size());
    for (std::size_t c = 0; c < model.k; ++c) {
        for (std::size_t j = 0; j < model.d; ++j) {
            double& var = model.variance[c * model.d + j];
            var /= static_cast<double>(counts[c] - 1);
            var = std::max(var, 1e-9);
        }
        model.log_prior[c] = std::log(static_cast<double>(counts[c]) / total);
    }
    return model;
}

ScoreTable nb_scores(const NbModel& model, const Dataset& ds, const std::vector<int>& test_idx) {
    ScoreTable st;
    st.k = model.k;
    st.scores.assign(test_idx.size() * model.k, 0.0);
    st.labels.reserve(test_idx.size());
    constexpr double kLog2Pi = 1.8378770664093454836;
    std::vector<double> logp(model.k);
    for (std::size_t r = 0; r < test_idx.size(); ++r) {
        const auto row = ds.row(static_cast<std::size_t>(test_idx[r]));
        for (std::size_t c = 0; c < model.k; ++c) {
            double acc = model.log_prior[c];
            for (std::size_t j = 0; j < model.d; ++j) {
                const double var = model.variance[c * model.d + j];
                const double diff = row[j] - model.mean[c * model.d + j];
                acc += -0.5 * (kLog2Pi + std::log(var)) - diff * diff / (2.0 * var);
            }
            logp[c] = acc;
        }
        const double mx = *std::max_element(logp.begin(), logp.end());
        double denom = 0.0;
        for (std::size_t c = 0; c < model.k; ++c) denom += std::exp(logp[c] - mx);
        const double log_denom = mx + std::log(denom);
        for (std::size_t c = 0; c < model.k; ++c)
            st.scores[r * st.k + c] = std::exp(logp[c] - log_denom);
        st.labels.push_back(ds.labels[static_cast<std::size_t>(test_idx[r])]);
    }
    return st;
}

FoldAssignment stratified_kfold(const Dataset& ds, int folds, std::uint64_t seed) {
    FoldAssignment fa;
    fa.folds = folds;
    fa.fold_of.assign(ds.n, 0);
    const auto by_class = ds.class_indices();
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        std::vector<int> idx = by_class[c];
        Rng rng(derive_seed(seed, c));
        rng.shuffle(idx);
        for (std::size_t pos = 0; pos < idx.size(); ++pos)
            fa.fold_of[static_cast<std::size_t>(idx[pos])] =
                static_cast<int>((c + pos) % static_cast<std::size_t>(folds));
    }
    return fa;
}

std::vector<double> midranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
        i = j + 1;
    }
    return ranks;
}

namespace {

// Rank-sum estimate that a random member of group A scores higher than a
// random member of group B; ties count one half.
double rank_sum_estimate(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> combined;
    combined.reserve(a.size() + b.size());
    combined.insert(combined.end(), a.begin(), a.end());
    combined.insert(combined.end(), b.begin(), b.end());
    const auto ranks = midranks(combined);
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) rank_sum += ranks[i];
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double u = rank_sum - na * (na + 1.0) / 2.0;
    return u / (na * nb);
}

}  // namespace

AucResult auc_multiclass(const ScoreTable& st) {
    AucResult out;
    std::vector<std::vector<std::size_t>> rows_of(st.k);
    for (std::size_t r = 0; r < st.rows(); ++r)
        rows_of[static_cast<std::size_t>(st.labels[r])].push_back(r);

    double total = 0.0;
    std::size_t computed = 0;
    for (std::size_t i = 0; i < st.k; ++i) {
        for (std::size_t j = i + 1; j < st.k; ++j) {
            if (rows_of[i].empty() || rows_of[j].empty()) {
                out.pairs_skipped = true;
                continue;
            }
            auto collect = [&](const std::vector<std::size_t>& rows, std::size_t cls) {
                std::vector<double> v;
                v.reserve(rows.size());
                for (std::size_t r : rows) v.push_back(st.at(r, cls));
                return v;
            };
            const double a_ij = rank_sum_estimate(collect(rows_of[i], i), collect(rows_of[j], i));
            const double a_ji = rank_sum_estimate(collect(rows_of[j], j), collect(rows_of[i], j));
            total += 0.5 * (a_ij + a_ji);
            ++computed;
        }
    }
    if (computed > 0) out.value = total / static_cast<double>(computed);
    return out;
}

GeomResult geom_multiclass(const ConfusionMatrix& cm) {
    GeomResult out;
    double product = 1.0;
    for (std::size_t i = 0; i < cm.k; ++i) {
        const long row = cm.row_sum(i);
        if (row == 0) {
            out.degenerate_row = true;
            product = 0.0;
            continue;
        }
        product *= static_cast<double>(cm.at(i, i)) / static_cast<double>(row);
    }
    out.value = product > 0.0 ? std::pow(product, 1.0 / static_cast<double>(cm.k)) : 0.0;
    return out;
}

std::optional<double> pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 3) return std::nullopt;
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 3) return std::nullopt;
    return pearson(midranks(xs), midranks(ys));
}

ClassifierEval run_cv(const Dataset& ds, const std::string& classifier, int folds,
                      std::uint64_t seed) {
    ClassifierEval eval;
    eval.name = classifier;
    for (int attempt = 0; attempt < 3; ++attempt) {
        const FoldAssignment fa =
            stratified_kfold(ds, folds, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<FoldPerf> perfs;
        try {
            for (int f = 0; f < folds; ++f) {
                std::vector<int> train, test;
                for (std::size_t i = 0; i < ds.n; ++i) {
                    if (fa.fold_of[i] == f)
                        test.push_back(static_cast<int>(i));
                    else
                        train.push_back(static_cast<int>(i));
                }
                if (test.empty() || train.empty()) continue;
                ScoreTable st;
                if (classifier == "1nn")
                    st = knn_scores(ds, train, test, 1);
                else if (classifier == "3nn")
                    st = knn_scores(ds, train, test, 3);
                else if (classifier == "nb")
                    st = nb_scores(nb_train(ds, train), ds, test);
                else
                    throw Error("unknown classifier: " + classifier);
                FoldPerf perf;
                perf.cm = confusion_from_scores(st);
                perf.auc = auc_multiclass(st).value;
                const GeomResult g = geom_multiclass(perf.cm);
                perf.geom = g.value;
                perf.geom_flagged = g.degenerate_row;
                perfs.push_back(std::move(perf));
            }
        } catch (const DegenerateFold& e) {
            eval.error = e.what();
            continue;  // re-stratify with a different fold seed
        }
        eval.ok = true;
        eval.error.clear();
        eval.folds = std::move(perfs);
        break;
    }
    if (!eval.ok) return eval;

    double auc_sum = 0.0, geom_sum = 0.0;
    std::size_t auc_n = 0, geom_n = 0;
    for (const FoldPerf& p : eval.folds) {
        if (p.auc) {
            auc_sum += *p.auc;
            ++auc_n;
        }
        geom_sum += p.geom;
        ++geom_n;
    }
    if (auc_n > 0) eval.mean_auc = auc_sum / static_cast<double>(auc_n);
    if (geom_n > 0) eval.mean_geom = geom_sum / static_cast<double>(geom_n);
    return eval;
}

DatasetEval evaluate_dataset(const Dataset& ds, std::uint64_t seed,
                             const std::vector<std::string>& classifiers) {
    if (!ds.normalized) throw PreconditionViolated("evaluation requires a normalized dataset");
    DatasetEval out;
    for (const std::string& clf : classifiers) out.classifiers.push_back(run_cv(ds, clf, 5, seed));
    return out;
}

}  // namespace dcm
