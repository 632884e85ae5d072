#include "qcx/splitflow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcx/errors.hpp"
#include "qcx/permbuild.hpp"

namespace qcx {

namespace {

constexpr double kClaimEps = 1e-9;

// Mutable view of the sequence on [wlo, whi], identity outside.
struct Working {
    int wlo;
    std::vector<int> v;

    int val(int n) const {
        if (n < wlo || n >= wlo + int(v.size())) return n;
        return v[n - wlo];
    }
    void set(int n, int x) { v[n - wlo] = x; }
    int whi() const { return wlo + int(v.size()) - 1; }
};

// Applies the value permutation (target[j] is where value interval.lo + j
// goes) to every entry of the working array.
void apply_value_perm(Working& w, int vlo, const std::vector<int>& target) {
    const int vhi = vlo + int(target.size()) - 1;
    for (int n = w.wlo; n <= w.whi(); ++n) {
        const int x = w.val(n);
        if (x >= vlo && x <= vhi) w.set(n, target[x - vlo]);
    }
}

bool is_identity_perm(int lo, const std::vector<int>& target) {
    for (size_t j = 0; j < target.size(); ++j)
        if (target[j] != lo + int(j)) return false;
    return true;
}

// Compacts the block's value set onto the left end of [vlo, vhi] and the
// complement past it, both order preserving. Returns the plan; target gets
// the value permutation.
SortPlan plan_sort(const Working& w, int blk_lo, int blk_hi, int vlo, int vhi,
                   std::vector<int>& target) {
    std::vector<char> in_block(vhi - vlo + 1, 0);
    for (int n = blk_lo; n <= blk_hi; ++n) {
        const int x = w.val(n);
        if (x >= vlo && x <= vhi) in_block[x - vlo] = 1;
    }
    SortPlan plan;
    plan.value_interval = {vlo, vhi};
    for (int x = vlo; x <= vhi; ++x)
        (in_block[x - vlo] ? plan.block_image_sorted : plan.complement_sorted)
            .push_back(x);
    plan.pivot_split = vlo + int(plan.block_image_sorted.size()) - 1;

    target.assign(vhi - vlo + 1, 0);
    for (size_t j = 0; j < plan.block_image_sorted.size(); ++j)
        target[plan.block_image_sorted[j] - vlo] = vlo + int(j);
    for (size_t j = 0; j < plan.complement_sorted.size(); ++j)
        target[plan.complement_sorted[j] - vlo] = plan.pivot_split + 1 + int(j);
    return plan;
}

}  // namespace

SplittableResult make_splittable(const IntBijection& seq, double lambda, double delta) {
    const auto* tail = std::get_if<IdentityTail>(&seq.form);
    if (!tail)
        throw InputError("make_splittable: identity-tail form required (periodic "
                         "inputs are analysis-only)");
    if (!(delta > 0.0)) throw InputError("make_splittable: delta must be positive");
    if (!(lambda >= 1.0)) throw InputError("make_splittable: lambda must be >= 1");

    {
        const int d = max_displacement(seq);
        const int h = std::max(structure_reach(seq) + 2 * d + 1, 40);
        const ThreePointReport rep = three_point_lambda(seq, h);
        if (rep.lambda_certified > lambda + 1e-9)
            throw InputError("make_splittable: certified three-point constant " +
                             std::to_string(rep.lambda_certified) +
                             " exceeds the passed lambda");
    }

    const double lp = lambda + 1.0;  // per-step reach bound
    const int margin = 4 * int(std::ceil(lp)) + 16;
    const int lo = tail->lo, hi = tail->hi;

    Working w;
    w.wlo = lo - margin;
    w.v.resize(hi + margin - w.wlo + 1);
    for (int n = w.wlo; n <= hi + margin; ++n)
        w.set(n, bijection_eval(seq, n));

    SplittableResult out;
    std::vector<MapExpr> layers;
    std::vector<int> cuts;

    auto run_step = [&](int step_index, int blk_lo, int blk_hi, int vlo) {
        int amax = blk_lo, amin = blk_lo;
        for (int n = blk_lo; n <= blk_hi; ++n) {
            if (w.val(n) > w.val(amax)) amax = n;
            if (w.val(n) < w.val(amin)) amin = n;
        }
        const int vhi = w.val(amax);

        StepTrace tr;
        tr.step_index = step_index;
        tr.interval = {blk_lo, blk_hi};
        tr.argmax_idx = amax;
        tr.argmin_idx = amin;
        tr.claim_bound_ok = (blk_hi - blk_lo + 1) <= 2.0 * lp + 1.0 + kClaimEps;

        std::vector<int> target;
        SortPlan plan = plan_sort(w, blk_lo, blk_hi, vlo, vhi, target);
        if (double(plan.complement_sorted.size()) > lp + kClaimEps)
            tr.claim_bound_ok = false;
        out.steps.push_back(tr);
        out.plans.push_back(std::move(plan));
        if (!tr.claim_bound_ok)
            throw CheckError("make_splittable: internal assertion failed, step " +
                             std::to_string(step_index) +
                             " violates the three-point size bounds");

        if (!is_identity_perm(vlo, target))
            layers.push_back(build_block_permutation(
                make_block_permutation(vlo, vhi, target, delta)));
        apply_value_perm(w, vlo, target);
        cuts.push_back(blk_hi);
        return vhi;
    };

    // Leading block: the pivot is the leftmost window index, so everything
    // below it is already settled singleton territory.
    const int v0 = w.val(lo);
    int k1 = lo;
    for (int n = w.whi(); n >= lo; --n)
        if (w.val(n) <= v0) {
            k1 = n;
            break;
        }
    {
        int amax = lo, amin = lo;
        for (int n = lo; n <= k1; ++n) {
            if (w.val(n) > w.val(amax)) amax = n;
            if (w.val(n) < w.val(amin)) amin = n;
        }
        if (std::abs(w.val(amax) - v0) > lp + kClaimEps ||
            std::abs(w.val(amin) - v0) > lp + kClaimEps)
            throw CheckError(
                "make_splittable: internal assertion failed, leading block "
                "extremes exceed the three-point reach bound");
        if (w.val(amin) != lo)
            throw CheckError("make_splittable: internal assertion failed, leading "
                             "block must contain the smallest window value");
    }
    cuts.push_back(lo - 1);
    int v_right = run_step(0, lo, k1, lo);
    int k_right = k1;
    int m_right = lo + (k1 - lo);  // block image is now [lo, m_right]

    // March right: each block is the maximal index range whose current
    // values fall in (m_right, v_right + 1].
    const int max_steps = (hi - lo + 1) + margin;
    for (int step = 1;; ++step) {
        if (step > max_steps)
            throw CheckError("make_splittable: internal assertion failed, right "
                             "march did not terminate");
        bool settled = true;
        for (int n = k_right + 1; n <= w.whi(); ++n)
            if (w.val(n) != n) {
                settled = false;
                break;
            }
        if (settled) break;

        int k_next = k_right;  // any hit lies strictly above k_right
        for (int n = w.whi(); n > k_right; --n)
            if (w.val(n) >= m_right + 1 && w.val(n) <= v_right + 1) {
                k_next = n;
                break;
            }
        if (k_next == k_right)
            throw CheckError("make_splittable: internal assertion failed, "
                             "designated value range vanished mid-march");

        const int prev_v = v_right;
        v_right = run_step(step, k_right + 1, k_next, prev_v + 1);
        if (v_right < prev_v + 1 ||
            double(v_right - (prev_v + 1)) > lp + kClaimEps) {
            out.steps.back().claim_bound_ok = false;
            throw CheckError("make_splittable: internal assertion failed, step " +
                             std::to_string(step) +
                             " value reach exceeds the three-point bound");
        }
        m_right += k_next - k_right;
        k_right = k_next;
    }
    if (m_right != k_right)
        throw CheckError("make_splittable: internal assertion failed, processed "
                         "region is not value-aligned after the march");

    // Transformed sequence (identity outside [lo, max(hi, k_right)]).
    const int b_hi = std::max(hi, k_right);
    for (int n = w.wlo; n < lo; ++n)
        if (w.val(n) != n)
            throw CheckError("make_splittable: internal assertion failed, values "
                             "below the window moved");
    std::vector<int> b_vals;
    for (int n = lo; n <= b_hi; ++n) b_vals.push_back(w.val(n));
    out.b = make_identity_tail(lo, b_hi, std::move(b_vals));

    // Decomposition: singleton blocks pad both tails out to the coverage rim.
    const int rim = std::max({std::abs(lo - 1), std::abs(k_right),
                              structure_reach(seq)}) +
                    1;
    SplitDecomposition dec;
    for (int c = -rim - 1; c < lo - 1; ++c) dec.cuts.push_back(c);
    dec.cuts.insert(dec.cuts.end(), cuts.begin(), cuts.end());
    for (int c = k_right + 1; c <= rim; ++c) dec.cuts.push_back(c);
    for (size_t i = 1; i < dec.cuts.size(); ++i)
        dec.bound_c = std::max(dec.bound_c, dec.cuts[i] - dec.cuts[i - 1]);
    dec.coverage = {dec.cuts.front() + 1, dec.cuts.back()};
    out.dec = std::move(dec);

    out.f1 = layers.empty() ? make_identity() : make_disjoint(std::move(layers));

    // The construction moves marked integers exactly; verify before handing
    // the pieces to the assembler.
    for (int n = w.wlo; n <= w.whi(); ++n) {
        const Point img = expr_eval(out.f1, Point(double(bijection_eval(seq, n)), 0.0));
        if (img != Point(double(w.val(n)), 0.0))
            throw CheckError("make_splittable: internal assertion failed, built map "
                             "does not reproduce the transformed sequence at n = " +
                             std::to_string(n));
    }
    return out;
}

MapExpr assemble(const IntBijection& b, const SplitDecomposition& dec, double delta) {
    if (!(delta > 0.0)) throw InputError("assemble: delta must be positive");
    if (dec.cuts.size() < 2)
        throw InputError("assemble: decomposition needs at least one block");
    for (size_t i = 1; i < dec.cuts.size(); ++i)
        if (dec.cuts[i] <= dec.cuts[i - 1])
            throw InputError("assemble: cuts must be strictly increasing");

    std::vector<MapExpr> blocks;
    for (size_t i = 0; i + 1 < dec.cuts.size(); ++i) {
        const int blo = dec.cuts[i] + 1;
        const int bhi = dec.cuts[i + 1];
        std::vector<int> img;
        for (int n = blo; n <= bhi; ++n) img.push_back(bijection_eval(b, n));
        const auto [mn, mx] = std::minmax_element(img.begin(), img.end());
        if (*mx - *mn + 1 != int(img.size()))
            throw InputError("assemble: decomposition mismatch, block [" +
                             std::to_string(blo) + ", " + std::to_string(bhi) +
                             "] does not map onto an equal-size interval");
        if (*mn != blo)
            throw InputError("assemble: decomposition mismatch, block [" +
                             std::to_string(blo) + ", " + std::to_string(bhi) +
                             "] image is shifted by " + std::to_string(*mn - blo) +
                             " (identity tails pin the alignment to zero)");
        bool ident = true;
        for (int n = blo; n <= bhi && ident; ++n) ident = (img[n - blo] == n);
        if (ident) continue;
        blocks.push_back(build_block_permutation(
            make_block_permutation(blo, bhi, std::move(img), delta)));
    }
    return blocks.empty() ? make_identity() : make_disjoint(std::move(blocks));
}

MapExpr extend_automorphism(const IntBijection& seq, double delta) {
    const int d = max_displacement(seq);
    const int h = std::max(structure_reach(seq) + 2 * d + 1, 40);
    const ThreePointReport rep = three_point_lambda(seq, h);

    SplittableResult split = make_splittable(seq, rep.lambda_certified, delta);
    MapExpr f2 = assemble(split.b, split.dec, delta);
    return make_seq({std::move(f2), make_inv(std::move(split.f1))});
}

MapExpr extend_automorphism(const AutoInput& in, double delta) {
    MapExpr base = extend_automorphism(in.base, delta);
    if (!in.negated) return base;
    return make_seq({std::move(base), make_leaf(Similarity{-1, Point(0.0, 0.0)})});
}

namespace {

double support_strip_height(const MapExpr& e) {
    double h = 0.0;
    for (const Rect& r : e.support.rects) h = std::max(h, std::abs(r.cy) + r.hh);
    return h;
}

ExtensionReport run_extension_checks(const MapExpr& expr, const IntBijection& seq,
                                     int window, double tol, bool negated) {
    ExtensionReport rep;
    rep.dilatation_bound = expr_dilatation_bound(expr);

    for (int n = -window; n <= window; ++n) {
        const double want =
            negated ? -double(bijection_eval(seq, n)) : double(bijection_eval(seq, n));
        const Point got = expr_eval(expr, Point(double(n), 0.0));
        const double r = std::abs(got - Point(want, 0.0));
        if (r > rep.max_integer_residual) {
            rep.max_integer_residual = r;
            rep.worst_integer = n;
        }
    }

    const double h = support_strip_height(expr);
    // Fixed low-discrepancy sweep along both strip edges and beyond.
    for (int i = 0; i < 100; ++i) {
        const double x = -double(window) + (2.0 * window) * ((i * 0.6180339887498949) -
                                                             std::floor(i * 0.6180339887498949));
        const double y = (i % 2 ? 1.0 : -1.0) * (h + 0.25 + 3.0 * (i % 7));
        const Point z(x, y);
        const Point want = negated ? -z : z;
        rep.max_outside_residual =
            std::max(rep.max_outside_residual, std::abs(expr_eval(expr, z) - want));
    }

    // Injectivity and local dilatation on a coarse interior grid.
    const double gy = std::max(h, 1.0);
    std::vector<Point> pre, img;
    for (int iy = 0; iy < 16; ++iy)
        for (int ix = 0; ix < 16; ++ix) {
            const Point z(-double(window) + (2.0 * window) * (ix + 0.37) / 16.0,
                          -gy + 2.0 * gy * (iy + 0.41) / 16.0);
            pre.push_back(z);
            img.push_back(expr_eval(expr, z));
        }
    for (size_t i = 0; i < pre.size(); ++i)
        for (size_t j = i + 1; j < pre.size(); ++j)
            if (std::abs(img[i] - img[j]) < 1e-9 && std::abs(pre[i] - pre[j]) > 1e-6)
                ++rep.injective_failures;
    const double fd_h = 1e-5;
    for (size_t i = 0; i < pre.size(); ++i) {
        if (std::abs(pre[i].imag()) < 1e-3) continue;
        if (expr_kink_distance(expr, pre[i]) < 10.0 * fd_h) continue;
        try {
            rep.max_k_local =
                std::max(rep.max_k_local, numeric_beltrami(expr, pre[i], fd_h).k_local);
        } catch (const CheckError&) {
            ++rep.orientation_failures;
        }
    }

    rep.integers_ok = rep.max_integer_residual <= tol;
    rep.outside_ok = rep.max_outside_residual <= tol;
    rep.injective_ok = rep.injective_failures == 0 && rep.orientation_failures == 0;
    rep.pass = rep.integers_ok && rep.outside_ok && rep.injective_ok;
    return rep;
}

}  // namespace

ExtensionReport verify_extension(const MapExpr& expr, const IntBijection& seq,
                                 int window, double tol) {
    return run_extension_checks(expr, seq, window, tol, false);
}

ExtensionReport verify_extension(const MapExpr& expr, const AutoInput& in, int window,
                                 double tol) {
    return run_extension_checks(expr, in.base, window, tol, in.negated);
}

}  // namespace qcx
