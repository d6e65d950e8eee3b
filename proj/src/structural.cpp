#include "dcm/structural.hpp"

#include <algorithm>
#include <cmath>

#include "dcm/error.hpp"
#include "dcm/linalg.hpp"

namespace dcm {

DimensionalityMetrics dimensionality_metrics(const Dataset& ds, double variance_threshold) {
    if (ds.n < 2) throw PreconditionViolated("dimensionality metrics require n >= 2");
    DimensionalityMetrics out;
    out.t2 = static_cast<double>(ds.d) / static_cast<double>(ds.n);

    // Covariance of centered columns.
    std::vector<double> mean(ds.d, 0.0);
    for (std::size_t i = 0; i < ds.n; ++i)
        for (std::size_t j = 0; j < ds.d; ++j) mean[j] += ds.at(i, j);
    for (double& m : mean) m /= static_cast<double>(ds.n);
    std::vector<double> cov(ds.d * ds.d, 0.0);
    std::vector<double> diff(ds.d);
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = 0; j < ds.d; ++j) diff[j] = ds.at(i, j) - mean[j];
        for (std::size_t r = 0; r < ds.d; ++r)
            for (std::size_t c = r; c < ds.d; ++c) cov[r * ds.d + c] += diff[r] * diff[c];
    }
    for (std::size_t r = 0; r < ds.d; ++r)
        for (std::size_t c = r; c < ds.d; ++c) {
            cov[r * ds.d + c] /= static_cast<double>(ds.n - 1);
            cov[c * ds.d + r] = cov[r * ds.d + c];
        }

    const SymEigen eig = jacobi_eigen(cov, ds.d);
    double total = 0.0;
    for (double v : eig.values) total += std::max(0.0, v);
    std::size_t m = 0;
    if (total > 0.0) {
        double cum = 0.0;
        for (double v : eig.values) {
            cum += std::max(0.0, v);
            ++m;
            if (cum >= variance_threshold * total) break;
        }
    }
    out.pca_m = m;
    out.t3 = static_cast<double>(m) / static_cast<double>(ds.n);
    out.t4 = static_cast<double>(m) / static_cast<double>(ds.d);
    return out;
}

BalanceMetrics balance_metrics(const Dataset& ds) {
    if (ds.k() < 2) throw PreconditionViolated("balance metrics require k >= 2");
    const auto counts = ds.class_counts();
    const double n = static_cast<double>(ds.n);
    const double k = static_cast<double>(ds.k());
    BalanceMetrics out;
    double entropy = 0.0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        const double p = static_cast<double>(counts[c]) / n;
        if (p > 0.0) entropy -= p * std::log(p);
    }
    out.c1 = entropy / std::log(k);
    double ir = 0.0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        const double nc = static_cast<double>(counts[c]);
        ir += nc / (n - nc);
    }
    ir *= (k - 1.0) / k;
    out.c2 = 1.0 - 1.0 / ir;
    return out;
}

EpsGraph build_eps_graph(const Dataset& ds, const DistanceMatrix& dm, double eps_quantile) {
    if (ds.n < 2) throw PreconditionViolated("graph build requires n >= 2");
    if (eps_quantile < 0.0 || eps_quantile > 1.0)
        throw PreconditionViolated("eps quantile must be in [0,1]");
    std::vector<double> dists;
    dists.reserve(ds.n * (ds.n - 1) / 2);
    for (std::size_t i = 0; i < ds.n; ++i)
        for (std::size_t j = i + 1; j < ds.n; ++j) dists.push_back(dm.at(i, j));
    std::sort(dists.begin(), dists.end());
    const std::size_t pos = static_cast<std::size_t>(
        std::floor(eps_quantile * static_cast<double>(dists.size() - 1)));
    EpsGraph g;
    g.n = ds.n;
    g.quantile = eps_quantile;
    g.threshold = dists[pos];
    g.adj.assign(ds.n, {});
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = i + 1; j < ds.n; ++j) {
            if (ds.labels[i] != ds.labels[j]) continue;
            if (dm.at(i, j) < g.threshold) {
                g.adj[i].push_back(static_cast<int>(j));
                g.adj[j].push_back(static_cast<int>(i));
                ++g.edge_count;
            }
        }
    }
    return g;
}

NetworkMetrics network_metrics(const EpsGraph& g) {
    NetworkMetrics out;
    const double n = static_cast<double>(g.n);
    const double max_edges = n * (n - 1.0) / 2.0;
    out.raw_density = static_cast<double>(g.edge_count) / max_edges;
    out.density = 1.0 - out.raw_density;

    // Mean local clustering coefficient; isolated and degree-1 nodes count 0.
    double coef_sum = 0.0;
    for (std::size_t v = 0; v < g.n; ++v) {
        const auto& nb = g.adj[v];
        if (nb.size() < 2) continue;
        std::size_t links = 0;
        for (std::size_t x = 0; x < nb.size(); ++x) {
            for (std::size_t y = x + 1; y < nb.size(); ++y) {
                const auto& list = g.adj[static_cast<std::size_t>(nb[x])];
                if (std::binary_search(list.begin(), list.end(), nb[y])) ++links;
            }
        }
        const double possible = static_cast<double>(nb.size()) *
                                static_cast<double>(nb.size() - 1) / 2.0;
        coef_sum += static_cast<double>(links) / possible;
    }
    out.raw_cls_coef = coef_sum / n;
    out.cls_coef = 1.0 - out.raw_cls_coef;

    // HITS-style hub scores by power iteration on the adjacency.
    std::vector<double> h(g.n, 1.0);
    std::vector<double> next(g.n, 0.0);
    for (int it = 0; it < 100; ++it) {
        for (std::size_t v = 0; v < g.n; ++v) {
            double acc = 0.0;
            for (int u : g.adj[v]) acc += h[static_cast<std::size_t>(u)];
            next[v] = acc;
        }
        double norm = 0.0;
        for (double x : next) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            std::fill(h.begin(), h.end(), 0.0);
            break;
        }
        double delta = 0.0;
        for (std::size_t v = 0; v < g.n; ++v) {
            next[v] /= norm;
            delta = std::max(delta, std::fabs(next[v] - h[v]));
        }
        h.swap(next);
        if (delta < 1e-9) break;
    }
    double hmax = 0.0;
    for (double x : h) hmax = std::max(hmax, x);
    double mean_score = 0.0;
    if (hmax > 0.0) {
        for (double x : h) mean_score += x / hmax;
        mean_score /= n;
    }
    out.raw_hubs = mean_score;
    out.hubs = 1.0 - out.raw_hubs;
    return out;
}

}  // namespace dcm
