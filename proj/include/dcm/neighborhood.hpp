// Neighbourhood complexity metrics over a shared distance matrix: borderline
// fraction (MST), intra/extra nearest-neighbour ratio, leave-one-out 1NN
// error, interpolation non-linearity, hypersphere coverage and local-set
// cardinality.
#pragma once

#include <cstdint>
#include <vector>

#include "dcm/dataset.hpp"
#include "dcm/distance.hpp"

namespace dcm {

struct MstEdge {
    int a = 0;
    int b = 0;
    double w = 0.0;
};

// Kruskal over all pairs; edges sorted by (weight, min index, max index) so
// the tree is unique under ties.
std::vector<MstEdge> mst(const DistanceMatrix& dm);

// Fraction of vertices incident to at least one inter-class MST edge.
double n1(const Dataset& ds, const DistanceMatrix& dm);

// r = sum intra-1NN distance / sum extra-1NN distance, reported as r/(1+r).
// A zero extra sum (coincident enemies) maps to 1.0. Throws DegenerateClass
// when a class has a single member.
double n2(const Dataset& ds, const DistanceMatrix& dm);

// Leave-one-out 1NN error rate; equidistant neighbours resolve to the lowest
// instance index.
double n3(const Dataset& ds, const DistanceMatrix& dm);

// Error of 1NN (against the original set) on n seeded interpolants of
// same-class pairs, class proportions preserved.
double n4(const Dataset& ds, const DistanceMatrix& dm, std::uint64_t seed);

// One hypersphere per instance with its nearest-enemy radius; spheres fully
// contained in another (d + r_i <= r_j) are dropped; returns kept / n.
double t1(const Dataset& ds, const DistanceMatrix& dm);

// 1 - mean local-set cardinality over n: the local set of x counts every
// instance (x itself included) strictly closer to x than x's nearest enemy.
double lsc(const Dataset& ds, const DistanceMatrix& dm);

}  // namespace dcm
