#include "qcx/mapexpr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "qcx/errors.hpp"

namespace qcx {

namespace {

Rect hull(const std::vector<Rect>& rects) {
    double x0 = rects[0].x0(), x1 = rects[0].x1();
    double y0 = rects[0].y0(), y1 = rects[0].y1();
    for (const Rect& r : rects) {
        x0 = std::min(x0, r.x0());
        x1 = std::max(x1, r.x1());
        y0 = std::min(y0, r.y0());
        y1 = std::max(y1, r.y1());
    }
    return Rect{(x0 + x1) / 2, (y0 + y1) / 2, (x1 - x0) / 2, (y1 - y0) / 2};
}

Support merge_supports(const std::vector<MapExpr>& children) {
    Support s;
    for (const MapExpr& c : children) {
        if (c.support.unbounded) s.unbounded = true;
        s.rects.insert(s.rects.end(), c.support.rects.begin(), c.support.rects.end());
    }
    if (!s.rects.empty()) s.bbox = hull(s.rects);
    return s;
}

}  // namespace

bool Support::contains(Point z) const {
    if (unbounded) return true;
    if (rects.empty()) return false;
    if (!bbox.contains_open(z)) return false;
    return std::any_of(rects.begin(), rects.end(),
                       [&](const Rect& r) { return r.contains_open(z); });
}

MapExpr make_leaf(const TentSlide& t) {
    MapExpr e{t, {}};
    e.support.rects = {t.rect};
    e.support.bbox = t.rect;
    return e;
}

MapExpr make_leaf(const Similarity& s) {
    if (s.sign != 1 && s.sign != -1)
        throw InputError("Similarity: sign must be +1 or -1");
    if (!std::isfinite(s.shift.real()) || !std::isfinite(s.shift.imag()))
        throw InputError("Similarity: shift must be finite");
    MapExpr e{s, {}};
    e.support.unbounded = !s.is_identity();
    return e;
}

MapExpr make_seq(std::vector<MapExpr> children) {
    Support s = merge_supports(children);
    return MapExpr{SeqNode{std::move(children)}, std::move(s)};
}

MapExpr make_disjoint(std::vector<MapExpr> children) {
    for (const MapExpr& c : children)
        if (c.support.unbounded)
            throw InputError("make_disjoint: child with unbounded support");
    for (size_t i = 0; i < children.size(); ++i) {
        for (size_t j = i + 1; j < children.size(); ++j) {
            const Support& a = children[i].support;
            const Support& b = children[j].support;
            if (a.rects.empty() || b.rects.empty()) continue;
            if (!a.bbox.overlaps_open(b.bbox)) continue;
            for (const Rect& ra : a.rects)
                for (const Rect& rb : b.rects)
                    if (ra.overlaps_open(rb))
                        throw InputError("make_disjoint: child supports overlap");
        }
    }
    Support s = merge_supports(children);
    return MapExpr{DisjointNode{std::move(children)}, std::move(s)};
}

MapExpr make_inv(MapExpr child) {
    Support s = child.support;
    InvNode n;
    n.child.push_back(std::move(child));
    return MapExpr{std::move(n), std::move(s)};
}

MapExpr make_identity() { return make_seq({}); }

Point expr_eval(const MapExpr& e, Point z) {
    switch (e.node.index()) {
        case 0:
            return tent_eval(std::get<TentSlide>(e.node), z);
        case 1: {
            const Similarity& s = std::get<Similarity>(e.node);
            return double(s.sign) * z + s.shift;
        }
        case 2: {
            for (const MapExpr& c : std::get<SeqNode>(e.node).children)
                if (c.support.unbounded || c.support.contains(z)) z = expr_eval(c, z);
            return z;
        }
        case 3: {
            for (const MapExpr& c : std::get<DisjointNode>(e.node).children)
                if (c.support.contains(z)) return expr_eval(c, z);
            return z;
        }
        default:
            return expr_inverse_eval(std::get<InvNode>(e.node).child.front(), z);
    }
}

Point expr_inverse_eval(const MapExpr& e, Point w) {
    switch (e.node.index()) {
        case 0:
            return tent_inverse(std::get<TentSlide>(e.node), w);
        case 1: {
            const Similarity& s = std::get<Similarity>(e.node);
            // sign is its own inverse: z = sign*(w - shift).
            return double(s.sign) * (w - s.shift);
        }
        case 2: {
            const auto& ch = std::get<SeqNode>(e.node).children;
            for (auto it = ch.rbegin(); it != ch.rend(); ++it)
                if (it->support.unbounded || it->support.contains(w))
                    w = expr_inverse_eval(*it, w);
            return w;
        }
        case 3: {
            // Children map their support onto itself, so membership of w
            // identifies the unique child that produced it.
            for (const MapExpr& c : std::get<DisjointNode>(e.node).children)
                if (c.support.contains(w)) return expr_inverse_eval(c, w);
            return w;
        }
        default:
            return expr_eval(std::get<InvNode>(e.node).child.front(), w);
    }
}

namespace {

// Dilatation of a tent depends only on (axis extent, transverse extent, p, q);
// pipeline expressions repeat a handful of shapes thousands of times, so the
// bound computation memoizes per shape within one top-level call.
struct ShapeKey {
    double a, b, p, q;
    bool operator==(const ShapeKey&) const = default;
};

struct ShapeHash {
    size_t operator()(const ShapeKey& k) const {
        uint64_t h = 1469598103934665603ull;
        for (double d : {k.a, k.b, k.p, k.q}) {
            h ^= std::bit_cast<uint64_t>(d);
            h *= 1099511628211ull;
        }
        return size_t(h);
    }
};

using ShapeCache = std::unordered_map<ShapeKey, double, ShapeHash>;

double bound_rec(const MapExpr& e, ShapeCache& cache) {
    switch (e.node.index()) {
        case 0: {
            const TentSlide& t = std::get<TentSlide>(e.node);
            ShapeKey key{t.axis_half(), t.transverse_half(), t.p, t.q};
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
            double k = tent_dilatation(t);
            cache.emplace(key, k);
            return k;
        }
        case 1:
            return 1.0;
        case 2: {
            double prod = 1.0;
            for (const MapExpr& c : std::get<SeqNode>(e.node).children)
                prod *= bound_rec(c, cache);
            return prod;
        }
        case 3: {
            double best = 1.0;
            for (const MapExpr& c : std::get<DisjointNode>(e.node).children)
                best = std::max(best, bound_rec(c, cache));
            return best;
        }
        default:
            return bound_rec(std::get<InvNode>(e.node).child.front(), cache);
    }
}

}  // namespace

double expr_dilatation_bound(const MapExpr& e) {
    ShapeCache cache;
    return bound_rec(e, cache);
}

BeltramiSample numeric_beltrami(const MapExpr& e, Point at, double h) {
    if (!(h > 0.0)) throw InputError("numeric_beltrami: step must be positive");
    const Point fxp = expr_eval(e, at + Point{h, 0.0});
    const Point fxm = expr_eval(e, at - Point{h, 0.0});
    const Point fyp = expr_eval(e, at + Point{0.0, h});
    const Point fym = expr_eval(e, at - Point{0.0, h});
    const Point fx = (fxp - fxm) / (2.0 * h);
    const Point fy = (fyp - fym) / (2.0 * h);
    const Point i{0.0, 1.0};
    const Point fz = (fx - i * fy) / 2.0;
    const Point fzb = (fx + i * fy) / 2.0;
    const double n = std::abs(fz);
    const double m = std::abs(fzb);
    if (n <= m)
        throw CheckError("numeric_beltrami: degenerate sample (stencil on a kink?)");
    return BeltramiSample{at, fzb / fz, (n + m) / (n - m)};
}

namespace {

double rect_kink_distance(const TentSlide& t, Point z) {
    const double X = (t.axis == Axis::Horizontal ? z.real() - t.rect.cx
                                                 : z.imag() - t.rect.cy);
    const double Y = (t.axis == Axis::Horizontal ? z.imag() - t.rect.cy
                                                 : z.real() - t.rect.cx);
    const double a = t.axis_half();
    const double b = t.transverse_half();
    if (std::abs(X) < a && std::abs(Y) < b) {
        return std::min(std::min(std::abs(X - t.p), std::abs(Y)),
                        std::min(a - std::abs(X), b - std::abs(Y)));
    }
    // Outside: nearest kink is the support boundary; per-axis excess is a
    // lower bound for the true distance.
    return std::max(std::max(std::abs(X) - a, std::abs(Y) - b), 0.0);
}

}  // namespace

double expr_kink_distance(const MapExpr& e, Point z) {
    constexpr double far = 1e300;
    switch (e.node.index()) {
        case 0:
            return rect_kink_distance(std::get<TentSlide>(e.node), z);
        case 1:
            return far;  // similarities are globally smooth
        case 2: {
            double d = far;
            for (const MapExpr& c : std::get<SeqNode>(e.node).children) {
                d = std::min(d, expr_kink_distance(c, z));
                z = expr_eval(c, z);
            }
            return d;
        }
        case 3: {
            double d = far;
            for (const MapExpr& c : std::get<DisjointNode>(e.node).children)
                d = std::min(d, expr_kink_distance(c, z));
            return d;
        }
        default: {
            const MapExpr& c = std::get<InvNode>(e.node).child.front();
            // Kinks of the inverse are images of the child's kinks; measure at
            // the preimage. Conservative only up to the child's stretch, which
            // callers absorb in their threshold.
            return expr_kink_distance(c, expr_inverse_eval(c, z));
        }
    }
}

}  // namespace qcx
