// Greedy per-class pure-ball covers and the ball-count complexity metrics
// derived from them, plus an exhaustive minimal-cover oracle for small
// instances.
#pragma once

#include <cstddef>
#include <vector>

#include "dcm/dataset.hpp"
#include "dcm/distance.hpp"

namespace dcm {

// An open ball centered on an instance. Its radius is the center's distance
// to the nearest instance of a different class, so no enemy lies strictly
// inside. `covered` lists the center plus the allies this ball claimed when
// it was selected. A zero-radius ball covers only its own center.
struct Ball {
    int center = 0;
    double radius = 0.0;
    std::vector<int> covered;  // ascending instance ids, includes center
};

struct BallCover {
    int class_id = 0;
    Metric metric = Metric::euclidean;
    std::vector<Ball> balls;  // selection order
};

// Greedy cover: every iteration scans all target-class centers (covered ones
// included), counts the uncovered allies strictly inside each center's
// maximal pure ball, and keeps the largest candidate set (first-scanned wins
// ties). When no candidate covers anything (zero enemy distances), each
// remaining ally becomes its own zero-radius singleton ball. Throws
// PreconditionViolated when the class has no enemies.
BallCover pcccd_cover(const DistanceMatrix& dm, const std::vector<int>& labels, int target_class);

// Ball counts for classes 0..k-1 using pcccd_cover.
std::vector<std::size_t> pcccd_ball_counts(const DistanceMatrix& dm,
                                           const std::vector<int>& labels, std::size_t k);

// Total balls over total points.
double onb_tot(const Dataset& ds, Metric metric);
// Per-class ball/point ratios, averaged over classes.
double onb_avg(const Dataset& ds, Metric metric);

double onb_tot_from(const DistanceMatrix& dm, const Dataset& ds);
double onb_avg_from(const DistanceMatrix& dm, const Dataset& ds);

struct OnbSuite {
    double tot_euc = 0.0;
    double avg_euc = 0.0;
    double tot_man = 0.0;
    double avg_man = 0.0;
};

// The four combinations: {total, average} x {euclidean, manhattan}.
OnbSuite onb_suite(const Dataset& ds);

// Minimum number of pure balls (each centered on a target-class instance
// with its maximal pure radius) covering the class, by exact set-cover
// search. Throws InstanceTooLarge when the class has more than 15 members.
std::size_t exhaustive_min_cover(const DistanceMatrix& dm, const std::vector<int>& labels,
                                 int target_class);
std::size_t exhaustive_min_cover(const Dataset& ds, Metric metric, int target_class);

}  // namespace dcm
