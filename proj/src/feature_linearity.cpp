#include "dcm/feature_linearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dcm/error.hpp"
#include "dcm/linalg.hpp"
#include "dcm/rng.hpp"

namespace dcm {

namespace {

constexpr double kLambda = 0.01;
constexpr int kEpochs = 500;

struct PairView {
    // Row indices of the two classes within the parent dataset.
    std::vector<int> idx_a;
    std::vector<int> idx_b;
    std::size_t size() const { return idx_a.size() + idx_b.size(); }
};

std::vector<PairView> class_pairs(const Dataset& ds) {
    const auto by_class = ds.class_indices();
    std::vector<PairView> pairs;
    for (std::size_t a = 0; a < by_class.size(); ++a)
        for (std::size_t b = a + 1; b < by_class.size(); ++b)
            pairs.push_back({by_class[a], by_class[b]});
    return pairs;
}

// Per-feature min/max of a set of rows.
void feature_range(const Dataset& ds, const std::vector<int>& idx, std::size_t j, double& lo,
                   double& hi) {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (int i : idx) {
        const double v = ds.at(static_cast<std::size_t>(i), j);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
}

double pair_f1(const Dataset& ds, const PairView& p) {
    double best = 0.0;
    const double na = static_cast<double>(p.idx_a.size());
    const double nb = static_cast<double>(p.idx_b.size());
    for (std::size_t j = 0; j < ds.d; ++j) {
        double ma = 0.0, mb = 0.0;
        for (int i : p.idx_a) ma += ds.at(static_cast<std::size_t>(i), j);
        for (int i : p.idx_b) mb += ds.at(static_cast<std::size_t>(i), j);
        ma /= na;
        mb /= nb;
        const double mg = (na * ma + nb * mb) / (na + nb);
        const double between = na * (ma - mg) * (ma - mg) + nb * (mb - mg) * (mb - mg);
        double within = 0.0;
        for (int i : p.idx_a) {
            const double dlt = ds.at(static_cast<std::size_t>(i), j) - ma;
            within += dlt * dlt;
        }
        for (int i : p.idx_b) {
            const double dlt = ds.at(static_cast<std::size_t>(i), j) - mb;
            within += dlt * dlt;
        }
        double ratio;
        if (within > 0.0)
            ratio = between / within;
        else
            ratio = between > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        best = std::max(best, ratio);
    }
    return best;
}

double pair_f1v(const Dataset& ds, const PairView& p) {
    const std::size_t d = ds.d;
    const double na = static_cast<double>(p.idx_a.size());
    const double nb = static_cast<double>(p.idx_b.size());
    std::vector<double> ma(d, 0.0), mb(d, 0.0);
    for (int i : p.idx_a)
        for (std::size_t j = 0; j < d; ++j) ma[j] += ds.at(static_cast<std::size_t>(i), j);
    for (int i : p.idx_b)
        for (std::size_t j = 0; j < d; ++j) mb[j] += ds.at(static_cast<std::size_t>(i), j);
    for (std::size_t j = 0; j < d; ++j) {
        ma[j] /= na;
        mb[j] /= nb;
    }
    // Pooled within-class scatter (sums, not means).
    std::vector<double> w(d * d, 0.0);
    auto accumulate = [&](const std::vector<int>& idx, const std::vector<double>& mean) {
        std::vector<double> diff(d);
        for (int i : idx) {
            for (std::size_t j = 0; j < d; ++j)
                diff[j] = ds.at(static_cast<std::size_t>(i), j) - mean[j];
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) w[r * d + c] += diff[r] * diff[c];
        }
    };
    accumulate(p.idx_a, ma);
    accumulate(p.idx_b, mb);

    std::vector<double> delta(d);
    double delta_norm = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        delta[j] = ma[j] - mb[j];
        delta_norm += delta[j] * delta[j];
    }
    delta_norm = std::sqrt(delta_norm);
    if (delta_norm == 0.0) return 0.0;

    const SymEigen eig = jacobi_eigen(w, d);
    const double lead = std::max(std::fabs(eig.values.front()), 1.0);
    // dir = pinv(W) * delta
    std::vector<double> dir(d, 0.0);
    for (std::size_t r = 0; r < d; ++r) {
        if (eig.values[r] <= 1e-12 * lead) continue;
        double proj = 0.0;
        for (std::size_t j = 0; j < d; ++j) proj += eig.vectors[r * d + j] * delta[j];
        proj /= eig.values[r];
        for (std::size_t j = 0; j < d; ++j) dir[j] += proj * eig.vectors[r * d + j];
    }
    // A mean-difference component in the null space of W separates the means
    // with zero within-class scatter.
    std::vector<double> wd(d, 0.0);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) wd[r] += w[r * d + c] * dir[c];
    double resid = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double e = delta[j] - wd[j];
        resid += e * e;
    }
    if (std::sqrt(resid) > 1e-9 * std::max(1.0, delta_norm))
        return std::numeric_limits<double>::infinity();

    double wtd = 0.0;  // dir . delta
    double wtww = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        wtd += dir[j] * delta[j];
        wtww += dir[j] * wd[j];
    }
    if (wtww <= 0.0) return wtd > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    const double between = (na * nb / (na + nb)) * wtd * wtd;
    return between / wtww;
}

double pair_f2(const Dataset& ds, const PairView& p) {
    double product = 1.0;
    for (std::size_t j = 0; j < ds.d; ++j) {
        double alo, ahi, blo, bhi;
        feature_range(ds, p.idx_a, j, alo, ahi);
        feature_range(ds, p.idx_b, j, blo, bhi);
        const double overlap = std::min(ahi, bhi) - std::max(alo, blo);
        const double range = std::max(ahi, bhi) - std::min(alo, blo);
        if (range > 0.0)
            product *= std::max(0.0, overlap) / range;
        // zero range: both classes constant and equal on this feature -> full
        // overlap, factor 1
    }
    return product;
}

// Count of `rows` outside the closed overlap interval of feature j, using
// per-class ranges computed over those same rows.
std::size_t discriminated_count(const Dataset& ds, const std::vector<int>& rows_a,
                                const std::vector<int>& rows_b, std::size_t j) {
    if (rows_a.empty() || rows_b.empty()) return rows_a.size() + rows_b.size();
    double alo, ahi, blo, bhi;
    feature_range(ds, rows_a, j, alo, ahi);
    feature_range(ds, rows_b, j, blo, bhi);
    const double lo = std::max(alo, blo);
    const double hi = std::min(ahi, bhi);
    std::size_t out = 0;
    auto count_outside = [&](const std::vector<int>& rows) {
        for (int i : rows) {
            const double v = ds.at(static_cast<std::size_t>(i), j);
            if (v < lo || v > hi) ++out;
        }
    };
    count_outside(rows_a);
    count_outside(rows_b);
    return out;
}

double pair_f3(const Dataset& ds, const PairView& p) {
    std::size_t best = 0;
    for (std::size_t j = 0; j < ds.d; ++j)
        best = std::max(best, discriminated_count(ds, p.idx_a, p.idx_b, j));
    return static_cast<double>(best) / static_cast<double>(p.size());
}

double pair_f4(const Dataset& ds, const PairView& p) {
    std::vector<int> rows_a = p.idx_a;
    std::vector<int> rows_b = p.idx_b;
    std::vector<bool> used(ds.d, false);
    const std::size_t total = p.size();
    std::size_t features_left = ds.d;
    while (features_left > 0 && !rows_a.empty() && !rows_b.empty()) {
        std::size_t best_j = 0;
        std::size_t best_count = 0;
        for (std::size_t j = 0; j < ds.d; ++j) {
            if (used[j]) continue;
            const std::size_t c = discriminated_count(ds, rows_a, rows_b, j);
            if (c > best_count) {
                best_count = c;
                best_j = j;
            }
        }
        if (best_count == 0) break;
        used[best_j] = true;
        --features_left;
        double alo, ahi, blo, bhi;
        feature_range(ds, rows_a, best_j, alo, ahi);
        feature_range(ds, rows_b, best_j, blo, bhi);
        const double lo = std::max(alo, blo);
        const double hi = std::min(ahi, bhi);
        auto keep_inside = [&](std::vector<int>& rows) {
            std::vector<int> next;
            for (int i : rows) {
                const double v = ds.at(static_cast<std::size_t>(i), best_j);
                if (v >= lo && v <= hi) next.push_back(i);
            }
            rows = std::move(next);
        };
        keep_inside(rows_a);
        keep_inside(rows_b);
    }
    const std::size_t remaining = rows_a.size() + rows_b.size();
    return static_cast<double>(total - remaining) / static_cast<double>(total);
}

}  // namespace

FeatureOverlapMetrics feature_overlap_metrics(const Dataset& ds) {
    if (ds.k() < 2) throw PreconditionViolated("feature metrics require k >= 2");
    if (ds.d < 1) throw PreconditionViolated("feature metrics require d >= 1");
    const auto pairs = class_pairs(ds);
    FeatureOverlapMetrics acc;
    for (const PairView& p : pairs) {
        acc.f1 += pair_f1(ds, p);
        acc.f1v += pair_f1v(ds, p);
        acc.f2 += pair_f2(ds, p);
        acc.f3 += pair_f3(ds, p);
        acc.f4 += pair_f4(ds, p);
    }
    const double np = static_cast<double>(pairs.size());
    acc.f1 /= np;
    acc.f1v /= np;
    acc.f2 /= np;
    acc.f3 /= np;
    acc.f4 /= np;
    return acc;
}

LinearModel train_linear(const std::vector<std::vector<double>>& rows, const std::vector<int>& y) {
    const std::size_t n = rows.size();
    if (n == 0) throw PreconditionViolated("train_linear needs at least one instance");
    const std::size_t d = rows[0].size();
    LinearModel model;
    model.w.assign(d, 0.0);
    model.b = 0.0;
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> grad(d);
    for (int t = 1; t <= kEpochs; ++t) {
        const double eta = 1.0 / (kLambda * static_cast<double>(t));
        for (std::size_t j = 0; j < d; ++j) grad[j] = kLambda * model.w[j];
        double grad_b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double decision = model.b;
            for (std::size_t j = 0; j < d; ++j) decision += model.w[j] * rows[i][j];
            if (static_cast<double>(y[i]) * decision < 1.0) {
                for (std::size_t j = 0; j < d; ++j) grad[j] -= y[i] * rows[i][j] * inv_n;
                grad_b -= y[i] * inv_n;
            }
        }
        for (std::size_t j = 0; j < d; ++j) model.w[j] -= eta * grad[j];
        model.b -= eta * grad_b;
    }
    model.epochs = kEpochs;
    double hinge = 0.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double decision = model.b;
        for (std::size_t j = 0; j < d; ++j) decision += model.w[j] * rows[i][j];
        hinge += std::max(0.0, 1.0 - static_cast<double>(y[i]) * decision);
    }
    for (double wj : model.w) norm2 += wj * wj;
    model.objective = 0.5 * kLambda * norm2 + hinge * inv_n;
    return model;
}

LinearityMetrics linearity_metrics(const Dataset& ds, std::uint64_t seed,
                                   std::vector<PairLinearity>* per_pair) {
    const auto by_class = ds.class_indices();
    for (std::size_t c = 0; c < by_class.size(); ++c)
        if (by_class[c].size() < 2)
            throw DegenerateClass("class " + ds.class_names[c] +
                                  " has a single member; interpolation undefined");
    LinearityMetrics acc;
    if (per_pair) per_pair->clear();
    std::size_t pair_index = 0;
    std::size_t pair_count = 0;
    for (std::size_t a = 0; a < by_class.size(); ++a) {
        for (std::size_t b = a + 1; b < by_class.size(); ++b, ++pair_index) {
            const auto& ia = by_class[a];
            const auto& ib = by_class[b];
            std::vector<std::vector<double>> rows;
            std::vector<int> y;
            rows.reserve(ia.size() + ib.size());
            for (int i : ia) {
                const auto r = ds.row(static_cast<std::size_t>(i));
                rows.emplace_back(r.begin(), r.end());
                y.push_back(+1);
            }
            for (int i : ib) {
                const auto r = ds.row(static_cast<std::size_t>(i));
                rows.emplace_back(r.begin(), r.end());
                y.push_back(-1);
            }
            const LinearModel model = train_linear(rows, y);

            double wnorm = 0.0;
            for (double wj : model.w) wnorm += wj * wj;
            wnorm = std::sqrt(wnorm);

            auto decision_of = [&](const std::vector<double>& x) {
                double dec = model.b;
                for (std::size_t j = 0; j < x.size(); ++j) dec += model.w[j] * x[j];
                return dec;
            };

            LinearityMetrics pm;
            std::size_t errors = 0;
            double error_distance = 0.0;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const double dec = decision_of(rows[i]);
                const int predicted = dec >= 0.0 ? +1 : -1;
                if (predicted != y[i]) {
                    ++errors;
                    if (wnorm > 0.0) error_distance += std::fabs(dec) / wnorm;
                }
            }
            pm.l2 = static_cast<double>(errors) / static_cast<double>(rows.size());
            pm.l1 = error_distance / static_cast<double>(rows.size());

            // Interpolants: one per pair instance, class proportions preserved,
            // classified by the pair's model.
            Rng rng(derive_seed(seed, pair_index));
            std::size_t interp_errors = 0;
            std::size_t interp_total = 0;
            std::vector<double> point(ds.d);
            auto run_class = [&](const std::vector<int>& idx, int label) {
                for (std::size_t t = 0; t < idx.size(); ++t) {
                    const std::size_t u = rng.below(idx.size());
                    std::size_t v = u;
                    while (v == u) v = rng.below(idx.size());
                    const double lambda = rng.uniform();
                    const auto ru = ds.row(static_cast<std::size_t>(idx[u]));
                    const auto rv = ds.row(static_cast<std::size_t>(idx[v]));
                    for (std::size_t j = 0; j < ds.d; ++j)
                        point[j] = lambda * ru[j] + (1.0 - lambda) * rv[j];
                    const double dec = decision_of(point);
                    const int predicted = dec >= 0.0 ? +1 : -1;
                    if (predicted != label) ++interp_errors;
                    ++interp_total;
                }
            };
            run_class(ia, +1);
            run_class(ib, -1);
            pm.l3 = static_cast<double>(interp_errors) / static_cast<double>(interp_total);

            acc.l1 += pm.l1;
            acc.l2 += pm.l2;
            acc.l3 += pm.l3;
            if (per_pair)
                per_pair->push_back({static_cast<int>(a), static_cast<int>(b), pm});
            ++pair_count;
        }
    }
    acc.l1 /= static_cast<double>(pair_count);
    acc.l2 /= static_cast<double>(pair_count);
    acc.l3 /= static_cast<double>(pair_count);
    return acc;
}

}  // namespace dcm
