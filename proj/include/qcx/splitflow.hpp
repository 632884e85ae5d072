#pragma once

#include <utility>
#include <vector>

#include "qcx/intbijection.hpp"
#include "qcx/mapexpr.hpp"

namespace qcx {

// Record of one per-step value sort: the block's image values are compacted
// onto the left end of the value interval (order preserved) and the missing
// values are pushed past them, again in order. pivot_split is the last target
// index of the compacted part.
struct SortPlan {
    std::pair<int, int> value_interval{0, 0};
    std::vector<int> block_image_sorted;
    std::vector<int> complement_sorted;
    int pivot_split = 0;
};

// Per-step bookkeeping: the index block processed, where its extreme values
// sit, and whether the size and reach bounds predicted by the three-point
// constant actually held.
struct StepTrace {
    int step_index = 0;
    std::pair<int, int> interval{0, 0};  // inclusive index block
    int argmax_idx = 0;
    int argmin_idx = 0;
    bool claim_bound_ok = false;
};

struct SplittableResult {
    MapExpr f1;               // disjoint union of the per-step value sorts
    IntBijection b;           // transformed sequence, b_n = f1(a_n)
    SplitDecomposition dec;   // splits b with bound <= 2*lambda + 3
    std::vector<StepTrace> steps;
    std::vector<SortPlan> plans;
};

// Transforms an identity-tail bijection into a splittable one by a map that
// is the identity outside |Im z| < delta. Walks index blocks left to right
// starting from the leftmost window index: each block is the maximal index
// range whose values fall in the currently designated value interval; its
// image values are then compacted by a block permutation. Per-step size and
// reach stay bounded by the three-point constant (asserted via StepTrace).
// lambda must dominate the certified three-point constant of seq.
SplittableResult make_splittable(const IntBijection& seq, double lambda, double delta);

// Realizes a splittable bijection: every decomposition block maps onto an
// integer interval of equal size and zero shift (identity tails pin the
// alignment), so a block permutation per block, all supports disjoint,
// reproduces b_n at every integer while staying identity outside the strip.
MapExpr assemble(const IntBijection& b, const SplitDecomposition& dec, double delta);

// End-to-end extension of an integer bijection: split (F1), assemble (F2),
// compose F2 then F1 inverse. Evaluates to a_n at every integer n, identity
// outside |Im z| < delta, finite dilatation bound.
MapExpr extend_automorphism(const IntBijection& seq, double delta);

// Mirrored inputs compose the base extension with the point reflection; the
// result is -z (not the identity) outside the strip, which is inherent to
// orientation-reversing boundary data.
MapExpr extend_automorphism(const AutoInput& in, double delta);

struct ExtensionReport {
    double max_integer_residual = 0.0;
    int worst_integer = 0;
    double max_outside_residual = 0.0;
    int injective_failures = 0;
    int orientation_failures = 0;
    double dilatation_bound = 1.0;
    double max_k_local = 1.0;
    bool integers_ok = false;
    bool outside_ok = false;
    bool injective_ok = false;
    bool pass = false;
};

// Compares expr against the bijection on [-window, window], against the
// identity outside the support strip, and samples injectivity plus local
// dilatation on a grid. Report-based: never throws on mismatch.
ExtensionReport verify_extension(const MapExpr& expr, const IntBijection& seq,
                                 int window, double tol);

// Same checks for a possibly mirrored input: outside the strip the expected
// map is -z when negated.
ExtensionReport verify_extension(const MapExpr& expr, const AutoInput& in, int window,
                                 double tol);

}  // namespace qcx
