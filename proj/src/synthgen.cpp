#include "dcm/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "dcm/error.hpp"

namespace dcm {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp01(double v) { return std::min(1.0, std::max(-1.0, v)); }

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

}  // namespace

// ---- shape kinds ---------------------------------------------------------

const char* shape_name(ShapeKind k) {
    switch (k) {
        case ShapeKind::circles2: return "circles2";
        case ShapeKind::rectangles2: return "rectangles2";
        case ShapeKind::triangles2: return "triangles2";
        case ShapeKind::circles3_pairs: return "circles3_pairs";
        case ShapeKind::circles3_together: return "circles3_together";
        case ShapeKind::circles3_inside: return "circles3_inside";
        case ShapeKind::rectangles4: return "rectangles4";
        case ShapeKind::triangles4: return "triangles4";
    }
    return "?";
}

ShapeKind shape_from_name(const std::string& name) {
    for (ShapeKind k : kAllShapeKinds)
        if (name == shape_name(k)) return k;
    throw Error("unknown shape: " + name);
}

std::size_t shape_class_count(ShapeKind k) {
    switch (k) {
        case ShapeKind::circles2:
        case ShapeKind::rectangles2:
        case ShapeKind::triangles2: return 2;
        case ShapeKind::circles3_pairs:
        case ShapeKind::circles3_together:
        case ShapeKind::circles3_inside: return 3;
        case ShapeKind::rectangles4:
        case ShapeKind::triangles4: return 4;
    }
    return 0;
}

// ---- geometry primitives --------------------------------------------------

double polygon_area(const Polygon& p) {
    if (p.size() < 3) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& a = p[i];
        const auto& b = p[(i + 1) % p.size()];
        acc += a[0] * b[1] - b[0] * a[1];
    }
    return std::fabs(acc) * 0.5;
}

Polygon convex_clip(const Polygon& subject, const Polygon& clip) {
    Polygon output = subject;
    for (std::size_t e = 0; e < clip.size() && !output.empty(); ++e) {
        const auto& A = clip[e];
        const auto& B = clip[(e + 1) % clip.size()];
        Polygon input = std::move(output);
        output.clear();
        for (std::size_t i = 0; i < input.size(); ++i) {
            const auto& P = input[i];
            const auto& Q = input[(i + 1) % input.size()];
            const double sp = cross(B[0] - A[0], B[1] - A[1], P[0] - A[0], P[1] - A[1]);
            const double sq = cross(B[0] - A[0], B[1] - A[1], Q[0] - A[0], Q[1] - A[1]);
            const bool in_p = sp >= 0.0;
            const bool in_q = sq >= 0.0;
            if (in_p != in_q) {
                const double t = sp / (sp - sq);
                output.push_back({P[0] + t * (Q[0] - P[0]), P[1] + t * (Q[1] - P[1])});
            }
            if (in_q) output.push_back(Q);
        }
    }
    return output;
}

double circle_intersection_area(const Circle& a, const Circle& b) {
    const double d = std::hypot(b.cx - a.cx, b.cy - a.cy);
    if (d >= a.r + b.r) return 0.0;
    const double rmin = std::min(a.r, b.r);
    if (d <= std::fabs(a.r - b.r)) return kPi * rmin * rmin;
    const double r1 = a.r, r2 = b.r;
    const double alpha = std::acos(clamp01((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)));
    const double beta = std::acos(clamp01((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)));
    const double tri = 0.5 * std::sqrt(std::max(
                                 0.0, (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)));
    return r1 * r1 * alpha + r2 * r2 * beta - tri;
}

double rect_intersection_area(const Rect& a, const Rect& b) {
    const double w = std::min(a.x0 + a.w, b.x0 + b.w) - std::max(a.x0, b.x0);
    const double h = std::min(a.y0 + a.h, b.y0 + b.h) - std::max(a.y0, b.y0);
    return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

double shape_area(const Shape& s) {
    if (const auto* c = std::get_if<Circle>(&s)) return kPi * c->r * c->r;
    if (const auto* r = std::get_if<Rect>(&s)) return r->w * r->h;
    return polygon_area(std::get<Polygon>(s));
}

bool shape_contains(const Shape& s, double x, double y) {
    if (const auto* c = std::get_if<Circle>(&s)) {
        const double dx = x - c->cx, dy = y - c->cy;
        return dx * dx + dy * dy <= c->r * c->r;
    }
    if (const auto* r = std::get_if<Rect>(&s))
        return x >= r->x0 && x <= r->x0 + r->w && y >= r->y0 && y <= r->y0 + r->h;
    const auto& p = std::get<Polygon>(s);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& a = p[i];
        const auto& b = p[(i + 1) % p.size()];
        if (cross(b[0] - a[0], b[1] - a[1], x - a[0], y - a[1]) < 0.0) return false;
    }
    return true;
}

std::array<double, 4> shape_bbox(const Shape& s) {
    if (const auto* c = std::get_if<Circle>(&s))
        return {c->cx - c->r, c->cy - c->r, c->cx + c->r, c->cy + c->r};
    if (const auto* r = std::get_if<Rect>(&s)) return {r->x0, r->y0, r->x0 + r->w, r->y0 + r->h};
    const auto& p = std::get<Polygon>(s);
    std::array<double, 4> bb = {p[0][0], p[0][1], p[0][0], p[0][1]};
    for (const auto& v : p) {
        bb[0] = std::min(bb[0], v[0]);
        bb[1] = std::min(bb[1], v[1]);
        bb[2] = std::max(bb[2], v[0]);
        bb[3] = std::max(bb[3], v[1]);
    }
    return bb;
}

Shape shape_translate(const Shape& s, double dx, double dy) {
    if (const auto* c = std::get_if<Circle>(&s)) return Circle{c->cx + dx, c->cy + dy, c->r};
    if (const auto* r = std::get_if<Rect>(&s)) return Rect{r->x0 + dx, r->y0 + dy, r->w, r->h};
    Polygon p = std::get<Polygon>(s);
    for (auto& v : p) {
        v[0] += dx;
        v[1] += dy;
    }
    return p;
}

double shape_intersection_area(const Shape& a, const Shape& b) {
    if (std::holds_alternative<Circle>(a) && std::holds_alternative<Circle>(b))
        return circle_intersection_area(std::get<Circle>(a), std::get<Circle>(b));
    if (std::holds_alternative<Rect>(a) && std::holds_alternative<Rect>(b))
        return rect_intersection_area(std::get<Rect>(a), std::get<Rect>(b));
    if (std::holds_alternative<Polygon>(a) && std::holds_alternative<Polygon>(b))
        return polygon_area(convex_clip(std::get<Polygon>(a), std::get<Polygon>(b)));
    throw Error("intersection of mixed shape kinds is not supported");
}

// ---- canonical pairs -------------------------------------------------------

Shape canonical_shape(PairShape kind) {
    switch (kind) {
        case PairShape::circle: return Circle{0.0, 0.0, 1.0};
        case PairShape::rectangle: return Rect{0.0, 0.0, 2.0, 1.0};
        case PairShape::triangle: return Polygon{{{-1.0, 0.0}, {1.0, 0.0}, {0.0, 1.5}}};
    }
    throw Error("bad shape kind");
}

namespace {

double pair_area(PairShape kind, double dx, double dy) {
    const Shape base = canonical_shape(kind);
    return shape_intersection_area(base, shape_translate(base, dx, dy));
}

// Tangency offset along the chosen axis (where the intersection first hits 0).
double tangency_offset(PairShape kind, bool along_y) {
    switch (kind) {
        case PairShape::circle: return 2.0;
        case PairShape::rectangle: return along_y ? 1.0 : 2.0;
        case PairShape::triangle: return along_y ? 1.5 : 2.0;
    }
    throw Error("bad shape kind");
}

OverlapSolution solve_axis(PairShape kind, double target_pct, bool along_y) {
    if (target_pct < 0.0 || target_pct > 100.0)
        throw Error("target overlap must be in [0, 100]");
    const double area0 = shape_area(canonical_shape(kind));
    auto pct_at = [&](double t) {
        return 100.0 * pair_area(kind, along_y ? 0.0 : t, along_y ? t : 0.0) / area0;
    };
    OverlapSolution sol;
    if (target_pct >= 100.0) {
        sol.offset = 0.0;
    } else if (target_pct <= 0.0) {
        sol.offset = tangency_offset(kind, along_y);
    } else {
        double lo = 0.0, hi = tangency_offset(kind, along_y);
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (pct_at(mid) > target_pct)
                lo = mid;
            else
                hi = mid;
        }
        sol.offset = 0.5 * (lo + hi);
    }
    sol.achieved_pct = pct_at(sol.offset);
    sol.residual = std::fabs(sol.achieved_pct - target_pct);
    return sol;
}

}  // namespace

double intersection_area(PairShape kind, double offset) { return pair_area(kind, offset, 0.0); }

OverlapSolution solve_offset(PairShape kind, double target_pct) {
    return solve_axis(kind, target_pct, false);
}

// ---- layouts ---------------------------------------------------------------

Layout layout_for(ShapeKind kind, double overlap_pct) {
    Layout layout;
    switch (kind) {
        case ShapeKind::circles2: {
            const double t = solve_offset(PairShape::circle, overlap_pct).offset;
            layout.class_shapes = {Circle{0, 0, 1}, Circle{t, 0, 1}};
            break;
        }
        case ShapeKind::rectangles2: {
            const double t = solve_offset(PairShape::rectangle, overlap_pct).offset;
            layout.class_shapes = {Rect{0, 0, 2, 1}, Rect{t, 0, 2, 1}};
            break;
        }
        case ShapeKind::triangles2: {
            // The second class is the mirrored copy of the first; the canonical
            // triangle is symmetric about its vertical axis so the mirror is the
            // same polygon, translated along +x.
            const double t = solve_offset(PairShape::triangle, overlap_pct).offset;
            const Shape base = canonical_shape(PairShape::triangle);
            layout.class_shapes = {base, shape_translate(base, t, 0)};
            break;
        }
        case ShapeKind::circles3_pairs: {
            const double t = solve_offset(PairShape::circle, overlap_pct).offset;
            layout.class_shapes = {Circle{0, 0, 1}, Circle{t, 0, 1}, Circle{2 * t, 0, 1}};
            break;
        }
        case ShapeKind::circles3_together: {
            const double t = solve_offset(PairShape::circle, overlap_pct).offset;
            layout.class_shapes = {Circle{0, 0, 1}, Circle{t, 0, 1},
                                   Circle{0.5 * t, 0.5 * std::sqrt(3.0) * t, 1}};
            break;
        }
        case ShapeKind::circles3_inside: {
            // Two congruent small circles inside a larger one; the target
            // percentage applies to the small-small pair, scaled from the unit
            // solution. The small circles always stay fully inside the big one.
            const double small_r = 0.8;
            const double big_r = 2.0;
            const double t = small_r * solve_offset(PairShape::circle, overlap_pct).offset;
            layout.class_shapes = {Circle{0, 0, big_r}, Circle{-0.5 * t, 0, small_r},
                                   Circle{0.5 * t, 0, small_r}};
            break;
        }
        case ShapeKind::rectangles4: {
            const double ox = solve_axis(PairShape::rectangle, overlap_pct, false).offset;
            const double oy = solve_axis(PairShape::rectangle, overlap_pct, true).offset;
            layout.class_shapes = {Rect{0, 0, 2, 1}, Rect{ox, 0, 2, 1}, Rect{0, oy, 2, 1},
                                   Rect{ox, oy, 2, 1}};
            break;
        }
        case ShapeKind::triangles4: {
            const double ox = solve_axis(PairShape::triangle, overlap_pct, false).offset;
            const double oy = solve_axis(PairShape::triangle, overlap_pct, true).offset;
            const Shape base = canonical_shape(PairShape::triangle);
            layout.class_shapes = {base, shape_translate(base, ox, 0), shape_translate(base, 0, oy),
                                   shape_translate(base, ox, oy)};
            break;
        }
    }
    return layout;
}

std::vector<PairwiseOverlap> achieved_pairwise_overlaps(const Layout& layout) {
    std::vector<PairwiseOverlap> out;
    const auto& shapes = layout.class_shapes;
    for (std::size_t a = 0; a < shapes.size(); ++a) {
        for (std::size_t b = a + 1; b < shapes.size(); ++b) {
            const double inter = shape_intersection_area(shapes[a], shapes[b]);
            const double denom = std::min(shape_area(shapes[a]), shape_area(shapes[b]));
            out.push_back({static_cast<int>(a), static_cast<int>(b), 100.0 * inter / denom});
        }
    }
    return out;
}

// ---- generation -------------------------------------------------------------

Dataset generate(const SyntheticSpec& spec, GenerationInfo* info) {
    const std::size_t k = shape_class_count(spec.shape);
    std::vector<double> imbalance = spec.imbalance;
    if (imbalance.empty()) imbalance.assign(k, 1.0);
    if (imbalance.size() != k)
        throw Error("imbalance vector has " + std::to_string(imbalance.size()) +
                    " entries, shape has " + std::to_string(k) + " classes");
    if (imbalance[0] != 1.0) throw Error("imbalance[0] must be 1");
    for (double r : imbalance)
        if (!(r >= 1.0)) throw Error("imbalance ratios must be >= 1");
    if (spec.points_per_class_base < 1) throw Error("points_per_class_base must be >= 1");
    if (spec.overlap_pct < 0.0 || spec.overlap_pct > 100.0)
        throw Error("overlap_pct must be in [0, 100]");

    const Layout layout = layout_for(spec.shape, spec.overlap_pct);

    Dataset ds;
    ds.d = 2;
    if (info) {
        info->n_per_class.clear();
        info->achieved = achieved_pairwise_overlaps(layout);
    }
    for (std::size_t c = 0; c < k; ++c) {
        const auto count = static_cast<std::size_t>(
            std::max<long long>(1, std::llround(spec.points_per_class_base / imbalance[c])));
        if (info) info->n_per_class.push_back(count);
        Rng rng(derive_seed(spec.seed, c));
        const Shape& shape = layout.class_shapes[c];
        const auto bb = shape_bbox(shape);
        for (std::size_t i = 0; i < count; ++i) {
            double x, y;
            do {
                x = rng.uniform(bb[0], bb[2]);
                y = rng.uniform(bb[1], bb[3]);
            } while (!shape_contains(shape, x, y));
            ds.features.push_back(x);
            ds.features.push_back(y);
            ds.labels.push_back(static_cast<int>(c));
        }
        ds.class_names.push_back("c" + std::to_string(c));
    }
    ds.n = ds.labels.size();
    return ds;
}

// ---- suites -----------------------------------------------------------------

std::vector<SyntheticSpec> suite_balanced(std::uint64_t root_seed, int points_per_class_base) {
    std::vector<SyntheticSpec> specs;
    const std::uint64_t stream = derive_seed(root_seed, 1);
    std::uint64_t i = 0;
    for (ShapeKind shape : kAllShapeKinds) {
        for (double level : kOverlapLevels) {
            SyntheticSpec s;
            s.shape = shape;
            s.overlap_pct = level;
            s.imbalance.assign(shape_class_count(shape), 1.0);
            s.points_per_class_base = points_per_class_base;
            s.seed = derive_seed(stream, i++);
            specs.push_back(std::move(s));
        }
    }
    return specs;
}

std::vector<SyntheticSpec> suite_imbalanced(std::uint64_t root_seed, int points_per_class_base) {
    std::vector<SyntheticSpec> specs;
    const std::uint64_t stream = derive_seed(root_seed, 2);
    const std::array<double, 5> irs = {3, 6, 9, 12, 15};
    std::uint64_t idx = 0;
    for (ShapeKind shape : kAllShapeKinds) {
        const std::size_t k = shape_class_count(shape);
        // Shared scheme (1, i, ..., i) for every shape; multiclass shapes add
        // the compounded scheme ending in i^2.
        std::vector<bool> schemes = k == 2 ? std::vector<bool>{false}
                                           : std::vector<bool>{false, true};
        for (bool compounded : schemes) {
            for (double level : kOverlapLevels) {
                for (double ir : irs) {
                    SyntheticSpec s;
                    s.shape = shape;
                    s.overlap_pct = level;
                    s.imbalance.assign(k, ir);
                    s.imbalance[0] = 1.0;
                    if (compounded) s.imbalance[k - 1] = ir * ir;
                    s.points_per_class_base = points_per_class_base;
                    s.seed = derive_seed(stream, idx++);
                    specs.push_back(std::move(s));
                }
            }
        }
    }
    return specs;
}

std::string spec_stem(const SyntheticSpec& spec) {
    char buf[32];
    std::string out = shape_name(spec.shape);
    std::snprintf(buf, sizeof buf, "_ov%g", spec.overlap_pct);
    out += buf;
    bool balanced = true;
    for (double r : spec.imbalance)
        if (r != 1.0) balanced = false;
    if (balanced) {
        out += "_bal";
    } else {
        out += "_ir";
        for (std::size_t c = 0; c < spec.imbalance.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%g", spec.imbalance[c]);
            if (c) out += '-';
            out += buf;
        }
    }
    return out;
}

}  // namespace dcm
