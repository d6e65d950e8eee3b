#include "dcm/onb.hpp"

#include <algorithm>
#include <limits>

#include "dcm/error.hpp"

namespace dcm {

BallCover pcccd_cover(const DistanceMatrix& dm, const std::vector<int>& labels,
                      int target_class) {
    const std::size_t n = dm.n;
    std::vector<int> targets;
    std::vector<int> enemies;
    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] == target_class)
            targets.push_back(static_cast<int>(i));
        else
            enemies.push_back(static_cast<int>(i));
    }
    if (targets.empty()) throw PreconditionViolated("target class has no instances");
    if (enemies.empty())
        throw PreconditionViolated("target class has no enemies (single-class data)");

    const std::size_t m = targets.size();
    std::vector<int> pos_of(n, -1);  // instance id -> position in `targets`
    for (std::size_t p = 0; p < m; ++p) pos_of[static_cast<std::size_t>(targets[p])] = static_cast<int>(p);

    // Maximal pure radius per center: min distance to any enemy.
    std::vector<double> enemy_dist(m);
    for (std::size_t p = 0; p < m; ++p) {
        double best = std::numeric_limits<double>::infinity();
        const std::size_t i = static_cast<std::size_t>(targets[p]);
        for (int e : enemies) best = std::min(best, dm.at(i, static_cast<std::size_t>(e)));
        enemy_dist[p] = best;
    }

    // members[p]: ally positions strictly inside center p's maximal ball
    // (includes p itself whenever its radius is positive). containers[q]
    // inverts that relation so candidate counts can be maintained under
    // removals in O(1) per membership.
    std::vector<std::vector<int>> members(m);
    std::vector<std::vector<int>> containers(m);
    std::vector<std::size_t> count(m, 0);
    for (std::size_t p = 0; p < m; ++p) {
        const std::size_t i = static_cast<std::size_t>(targets[p]);
        for (std::size_t q = 0; q < m; ++q) {
            if (dm.at(i, static_cast<std::size_t>(targets[q])) < enemy_dist[p]) {
                members[p].push_back(static_cast<int>(q));
                containers[q].push_back(static_cast<int>(p));
            }
        }
        count[p] = members[p].size();
    }

    BallCover cover;
    cover.class_id = target_class;
    cover.metric = dm.metric;

    std::vector<bool> covered(m, false);
    std::size_t uncovered = m;
    while (uncovered > 0) {
        int best = -1;
        std::size_t best_count = 0;
        for (std::size_t p = 0; p < m; ++p) {
            if (count[p] > best_count) {
                best = static_cast<int>(p);
                best_count = count[p];
            }
        }
        if (best < 0) {
            // No ball can claim anything; the stragglers have zero enemy
            // distance. One zero-radius singleton each, in index order.
            for (std::size_t q = 0; q < m; ++q) {
                if (covered[q]) continue;
                Ball b;
                b.center = targets[q];
                b.radius = 0.0;
                b.covered = {targets[q]};
                cover.balls.push_back(std::move(b));
            }
            break;
        }
        Ball ball;
        ball.center = targets[static_cast<std::size_t>(best)];
        ball.radius = enemy_dist[static_cast<std::size_t>(best)];
        for (int q : members[static_cast<std::size_t>(best)]) {
            if (covered[static_cast<std::size_t>(q)]) continue;
            ball.covered.push_back(targets[static_cast<std::size_t>(q)]);
            covered[static_cast<std::size_t>(q)] = true;
            --uncovered;
            for (int holder : containers[static_cast<std::size_t>(q)]) --count[static_cast<std::size_t>(holder)];
        }
        if (std::find(ball.covered.begin(), ball.covered.end(), ball.center) == ball.covered.end())
            ball.covered.insert(
                std::lower_bound(ball.covered.begin(), ball.covered.end(), ball.center),
                ball.center);
        cover.balls.push_back(std::move(ball));
    }
    return cover;
}

std::vector<std::size_t> pcccd_ball_counts(const DistanceMatrix& dm,
                                           const std::vector<int>& labels, std::size_t k) {
    std::vector<std::size_t> counts(k);
    for (std::size_t c = 0; c < k; ++c)
        counts[c] = pcccd_cover(dm, labels, static_cast<int>(c)).balls.size();
    return counts;
}

double onb_tot_from(const DistanceMatrix& dm, const Dataset& ds) {
    const auto balls = pcccd_ball_counts(dm, ds.labels, ds.k());
    std::size_t total = 0;
    for (std::size_t b : balls) total += b;
    return static_cast<double>(total) / static_cast<double>(ds.n);
}

double onb_avg_from(const DistanceMatrix& dm, const Dataset& ds) {
    const auto balls = pcccd_ball_counts(dm, ds.labels, ds.k());
    const auto counts = ds.class_counts();
    double acc = 0.0;
    for (std::size_t c = 0; c < balls.size(); ++c)
        acc += static_cast<double>(balls[c]) / static_cast<double>(counts[c]);
    return acc / static_cast<double>(balls.size());
}

double onb_tot(const Dataset& ds, Metric metric) {
    return onb_tot_from(distance_matrix(ds, metric), ds);
}

double onb_avg(const Dataset& ds, Metric metric) {
    return onb_avg_from(distance_matrix(ds, metric), ds);
}

OnbSuite onb_suite(const Dataset& ds) {
    OnbSuite s;
    {
        const DistanceMatrix dm = distance_matrix(ds, Metric::euclidean);
        s.tot_euc = onb_tot_from(dm, ds);
        s.avg_euc = onb_avg_from(dm, ds);
    }
    {
        const DistanceMatrix dm = distance_matrix(ds, Metric::manhattan);
        s.tot_man = onb_tot_from(dm, ds);
        s.avg_man = onb_avg_from(dm, ds);
    }
    return s;
}

std::size_t exhaustive_min_cover(const DistanceMatrix& dm, const std::vector<int>& labels,
                                 int target_class) {
    std::vector<int> targets;
    std::vector<int> enemies;
    for (std::size_t i = 0; i < dm.n; ++i) {
        if (labels[i] == target_class)
            targets.push_back(static_cast<int>(i));
        else
            enemies.push_back(static_cast<int>(i));
    }
    if (targets.empty()) throw PreconditionViolated("target class has no instances");
    if (enemies.empty()) throw PreconditionViolated("target class has no enemies");
    const std::size_t m = targets.size();
    if (m > 15) throw InstanceTooLarge("exhaustive cover limited to 15 instances per class");

    std::vector<std::uint32_t> candidate(m, 0);
    for (std::size_t p = 0; p < m; ++p) {
        const std::size_t i = static_cast<std::size_t>(targets[p]);
        double r = std::numeric_limits<double>::infinity();
        for (int e : enemies) r = std::min(r, dm.at(i, static_cast<std::size_t>(e)));
        for (std::size_t q = 0; q < m; ++q)
            if (dm.at(i, static_cast<std::size_t>(targets[q])) < r)
                candidate[p] |= 1u << q;
        candidate[p] |= 1u << p;  // zero-radius singleton at minimum
    }

    const std::uint32_t full = m == 32 ? ~0u : (1u << m) - 1u;
    const std::size_t inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dp(static_cast<std::size_t>(full) + 1, inf);
    dp[0] = 0;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        if (dp[mask] == inf || mask == full) continue;
        // Cover the first uncovered element; restricting choices to its
        // containing balls preserves optimality.
        std::uint32_t first = ~mask & full;
        first &= static_cast<std::uint32_t>(-static_cast<std::int32_t>(first));
        for (std::size_t p = 0; p < m; ++p) {
            if (!(candidate[p] & first)) continue;
            const std::uint32_t next = mask | candidate[p];
            dp[next] = std::min(dp[next], dp[mask] + 1);
        }
    }
    return dp[full];
}

std::size_t exhaustive_min_cover(const Dataset& ds, Metric metric, int target_class) {
    return exhaustive_min_cover(distance_matrix(ds, metric), ds.labels, target_class);
}

}  // namespace dcm
