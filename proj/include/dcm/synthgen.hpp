// Synthetic 2-D datasets: congruent plane shapes placed at offsets solved so
// that adjacent class pairs intersect in an exact target fraction of one
// shape's area, with configurable per-class imbalance ratios.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dcm/dataset.hpp"
#include "dcm/rng.hpp"

namespace dcm {

enum class ShapeKind {
    circles2,
    rectangles2,
    triangles2,
    circles3_pairs,
    circles3_together,
    circles3_inside,
    rectangles4,
    triangles4,
};

inline constexpr std::array<ShapeKind, 8> kAllShapeKinds = {
    ShapeKind::circles2,         ShapeKind::rectangles2,    ShapeKind::triangles2,
    ShapeKind::circles3_pairs,   ShapeKind::circles3_together, ShapeKind::circles3_inside,
    ShapeKind::rectangles4,      ShapeKind::triangles4,
};

const char* shape_name(ShapeKind k);
ShapeKind shape_from_name(const std::string& name);  // throws Error on unknown
std::size_t shape_class_count(ShapeKind k);

// The nine overlap levels used by the generated suites.
inline constexpr std::array<double, 9> kOverlapLevels = {0, 5, 10, 15, 20, 25, 30, 50, 100};

struct SyntheticSpec {
    ShapeKind shape = ShapeKind::circles2;
    double overlap_pct = 0.0;              // in [0, 100]
    std::vector<double> imbalance;         // one ratio per class, [0] == 1, all >= 1
    int points_per_class_base = 500;
    std::uint64_t seed = kDefaultSeed;
};

struct OverlapSolution {
    double offset = 0.0;        // center-to-center displacement
    double achieved_pct = 0.0;  // intersection area / single-shape area * 100
    double residual = 0.0;      // |achieved - target|
};

// ---- geometry primitives ----------------------------------------------

struct Circle {
    double cx, cy, r;
};
struct Rect {
    double x0, y0, w, h;  // axis-aligned, corner + extents
};
using Polygon = std::vector<std::array<double, 2>>;  // convex, CCW

using Shape = std::variant<Circle, Rect, Polygon>;

double shape_area(const Shape& s);
bool shape_contains(const Shape& s, double x, double y);
std::array<double, 4> shape_bbox(const Shape& s);  // x0, y0, x1, y1
Shape shape_translate(const Shape& s, double dx, double dy);

double circle_intersection_area(const Circle& a, const Circle& b);
double rect_intersection_area(const Rect& a, const Rect& b);
double polygon_area(const Polygon& p);
Polygon convex_clip(const Polygon& subject, const Polygon& clip);  // Sutherland-Hodgman
double shape_intersection_area(const Shape& a, const Shape& b);

// ---- canonical congruent pairs -----------------------------------------

enum class PairShape { circle, rectangle, triangle };

// Canonical shapes: unit circle; 2 x 1 rectangle; isosceles triangle with
// base 2 and height 1.5 (symmetric about its vertical axis, so the mirrored
// copy used for the two-class layout is the same polygon).
Shape canonical_shape(PairShape kind);

// Intersection area of the canonical shape with its own copy translated by
// `offset` along +x. Continuous and non-increasing in offset.
double intersection_area(PairShape kind, double offset);

// Bisection for the offset whose intersection covers target_pct percent of
// the single-shape area. target 100 -> 0, target 0 -> the tangency offset.
OverlapSolution solve_offset(PairShape kind, double target_pct);

// ---- layout + generation ------------------------------------------------

struct Layout {
    std::vector<Shape> class_shapes;
};

Layout layout_for(ShapeKind kind, double overlap_pct);

struct PairwiseOverlap {
    int class_a = 0;
    int class_b = 0;
    double pct = 0.0;  // intersection / min(shape areas) * 100
};

std::vector<PairwiseOverlap> achieved_pairwise_overlaps(const Layout& layout);

struct GenerationInfo {
    std::vector<std::size_t> n_per_class;
    std::vector<PairwiseOverlap> achieved;
};

// Samples round(base / imbalance[c]) points (min 1) uniformly inside each
// class shape by seeded rejection sampling; per-class substreams are derived
// from (seed, class index). Output is an unnormalized 2-feature dataset.
Dataset generate(const SyntheticSpec& spec, GenerationInfo* info = nullptr);

// 8 shapes x 9 overlap levels, balanced classes. Seeds derived from root.
std::vector<SyntheticSpec> suite_balanced(std::uint64_t root_seed = kDefaultSeed,
                                          int points_per_class_base = 500);

// Binary shapes x 9 levels x IR in {3,6,9,12,15}; multiclass shapes get both
// the shared and the compounded ratio scheme. 585 specs total.
std::vector<SyntheticSpec> suite_imbalanced(std::uint64_t root_seed = kDefaultSeed,
                                            int points_per_class_base = 500);

// Stable file stem for a spec, used by the CLI for dataset ids / filenames.
std::string spec_stem(const SyntheticSpec& spec);

}  // namespace dcm
