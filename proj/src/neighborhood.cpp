#include "dcm/neighborhood.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "dcm/error.hpp"
#include "dcm/rng.hpp"

namespace dcm {

namespace {

// Union-find with path halving.
struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
    std::vector<std::size_t> parent;
};

std::vector<double> enemy_distances(const Dataset& ds, const DistanceMatrix& dm) {
    std::vector<double> out(ds.n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < ds.n; ++i)
        for (std::size_t j = 0; j < ds.n; ++j)
            if (ds.labels[i] != ds.labels[j]) out[i] = std::min(out[i], dm.at(i, j));
    return out;
}

}  // namespace

std::vector<MstEdge> mst(const DistanceMatrix& dm) {
    const std::size_t n = dm.n;
    if (n < 2) throw PreconditionViolated("mst requires at least 2 instances");
    std::vector<MstEdge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            edges.push_back({static_cast<int>(i), static_cast<int>(j), dm.at(i, j)});
    std::sort(edges.begin(), edges.end(), [](const MstEdge& x, const MstEdge& y) {
        if (x.w != y.w) return x.w < y.w;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    std::vector<MstEdge> tree;
    tree.reserve(n - 1);
    DisjointSets sets(n);
    for (const MstEdge& e : edges) {
        if (sets.unite(static_cast<std::size_t>(e.a), static_cast<std::size_t>(e.b))) {
            tree.push_back(e);
            if (tree.size() == n - 1) break;
        }
    }
    return tree;
}

double n1(const Dataset& ds, const DistanceMatrix& dm) {
    const auto tree = mst(dm);
    std::vector<bool> borderline(ds.n, false);
    for (const MstEdge& e : tree) {
        if (ds.labels[static_cast<std::size_t>(e.a)] != ds.labels[static_cast<std::size_t>(e.b)]) {
            borderline[static_cast<std::size_t>(e.a)] = true;
            borderline[static_cast<std::size_t>(e.b)] = true;
        }
    }
    const auto count = static_cast<double>(std::count(borderline.begin(), borderline.end(), true));
    return count / static_cast<double>(ds.n);
}

double n2(const Dataset& ds, const DistanceMatrix& dm) {
    const auto counts = ds.class_counts();
    for (std::size_t c = 0; c < counts.size(); ++c)
        if (counts[c] < 2)
            throw DegenerateClass("class " + ds.class_names[c] +
                                  " has a single member; intra-class 1NN undefined");
    double intra_sum = 0.0;
    double extra_sum = 0.0;
    for (std::size_t i = 0; i < ds.n; ++i) {
        double intra = std::numeric_limits<double>::infinity();
        double extra = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < ds.n; ++j) {
            if (j == i) continue;
            if (ds.labels[i] == ds.labels[j])
                intra = std::min(intra, dm.at(i, j));
            else
                extra = std::min(extra, dm.at(i, j));
        }
        intra_sum += intra;
        extra_sum += extra;
    }
    if (extra_sum == 0.0) return 1.0;
    const double r = intra_sum / extra_sum;
    return r / (1.0 + r);
}

double n3(const Dataset& ds, const DistanceMatrix& dm) {
    std::size_t errors = 0;
    for (std::size_t i = 0; i < ds.n; ++i) {
        std::size_t nn = i;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < ds.n; ++j) {
            if (j == i) continue;
            if (dm.at(i, j) < best) {
                best = dm.at(i, j);
                nn = j;
            }
        }
        if (ds.labels[nn] != ds.labels[i]) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(ds.n);
}

double n4(const Dataset& ds, const DistanceMatrix& dm, std::uint64_t seed) {
    const auto by_class = ds.class_indices();
    for (std::size_t c = 0; c < by_class.size(); ++c)
        if (by_class[c].size() < 2)
            throw DegenerateClass("class " + ds.class_names[c] +
                                  " has a single member; interpolation undefined");
    Rng rng(seed);
    std::vector<double> point(ds.d);
    std::size_t errors = 0;
    std::size_t total = 0;
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        const auto& idx = by_class[c];
        for (std::size_t t = 0; t < idx.size(); ++t) {
            const std::size_t a = rng.below(idx.size());
            std::size_t b = a;
            while (b == a) b = rng.below(idx.size());
            const double lambda = rng.uniform();
            const auto ra = ds.row(static_cast<std::size_t>(idx[a]));
            const auto rb = ds.row(static_cast<std::size_t>(idx[b]));
            for (std::size_t j = 0; j < ds.d; ++j)
                point[j] = lambda * ra[j] + (1.0 - lambda) * rb[j];
            std::size_t nn = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < ds.n; ++i) {
                const double dist = row_distance({point.data(), ds.d}, ds.row(i), dm.metric);
                if (dist < best) {
                    best = dist;
                    nn = i;
                }
            }
            if (ds.labels[nn] != static_cast<int>(c)) ++errors;
            ++total;
        }
    }
    return static_cast<double>(errors) / static_cast<double>(total);
}

double t1(const Dataset& ds, const DistanceMatrix& dm) {
    const auto radius = enemy_distances(ds, dm);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < ds.n; ++i) {
        bool contained = false;
        for (std::size_t j = 0; j < ds.n && !contained; ++j) {
            if (j == i) continue;
            if (dm.at(i, j) + radius[i] <= radius[j]) contained = true;
        }
        if (!contained) ++kept;
    }
    return static_cast<double>(kept) / static_cast<double>(ds.n);
}

double lsc(const Dataset& ds, const DistanceMatrix& dm) {
    const auto enemy = enemy_distances(ds, dm);
    double total = 0.0;
    for (std::size_t i = 0; i < ds.n; ++i) {
        std::size_t count = 0;
        for (std::size_t j = 0; j < ds.n; ++j)
            if (dm.at(i, j) < enemy[i]) ++count;
        total += static_cast<double>(count);
    }
    return 1.0 - total / (static_cast<double>(ds.n) * static_cast<double>(ds.n));
}

}  // namespace dcm
