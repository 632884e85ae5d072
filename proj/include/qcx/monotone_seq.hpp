#pragma once

#include <utility>
#include <vector>

namespace qcx {

// Strictly increasing real sequence a_n with a finite window of explicit
// values and affine tails on both sides. Positive tail slopes force
// a_n -> +-inf, so sup = +inf and inf = -inf hold by construction.
struct MonotoneSeq {
    int lo = 0;
    int hi = 0;
    std::vector<double> values;  // a_lo .. a_hi, strictly increasing
    double left_slope = 1.0;     // a_n = a_lo + (n - lo) * left_slope for n < lo
    double right_slope = 1.0;    // a_n = a_hi + (n - hi) * right_slope for n > hi
};

// Validates invariants (window matches, strict monotonicity, positive finite
// slopes). Throws InputError on violation.
MonotoneSeq make_monotone_seq(int lo, int hi, std::vector<double> values,
                              double left_slope, double right_slope);

double seq_eval(const MonotoneSeq& e, int n);

// M-ratio certificate: max over n in [lo - horizon, hi + horizon] and
// k in [1, horizon] of max(r, 1/r) where r = (a_{n+k} - a_n)/(a_n - a_{n-k}).
// Requires horizon >= max(1, hi - lo) so the scan reaches far enough past the
// window that remaining ratios are pinned by the affine tails (they approach
// the already-sampled slope ratios monotonically).
double monotone_M(const MonotoneSeq& e, int horizon);

// Empirical quasisymmetry profile of the correspondence xs[i] -> ys[i].
// One sample per ordered triple (x, y, z) with x != z and x != y:
// t = |x - y| / |x - z|, rho = |f(x) - f(y)| / |f(x) - f(z)|.
struct QsProfile {
    std::vector<std::pair<double, double>> samples;   // (t, rho), sorted by t
    std::vector<std::pair<double, double>> envelope;  // upper staircase, both coords nondecreasing
};

QsProfile qs_profile(const std::vector<double>& xs, const std::vector<double>& ys);

// Staircase value at t: max rho over samples with t' <= t (0 if none).
double envelope_at(const QsProfile& p, double t);

}  // namespace qcx
