#pragma once

#include <array>

#include "qcx/intbijection.hpp"
#include "qcx/mapexpr.hpp"

namespace qcx {

// Three-point data of the exponentiated sequence b_n = e^{a_n} and the
// derived strip constant: c_lambda = log(lambda_b + 1) bounds inversion gaps
// of a, and a then satisfies the (c_lambda + 1)-three-point condition.
struct ExpLatticeReport {
    double lambda_b = 0.0;
    double c_lambda = 0.0;
    double lambda_a = 1.0;
    bool tends_to_zero = true;
    int horizon = 0;
    std::array<int, 3> witness{0, 0, 0};
};

// Measures lambda_b by brute force over the horizon (window reach + 40; the
// measured value carries no tail certificate, unlike the integer-scale one).
// Throws CheckError if the exponentiated sequence fails to tend to 0 in the
// negative direction, which only happens for mirrored inputs.
ExpLatticeReport log_conjugate(const IntBijection& a);
ExpLatticeReport log_conjugate(const AutoInput& a);

// Inversion gap bound: every pair k < l with a_l < a_k in the horizon must
// satisfy a_k - a_l <= log(lambda_b + 1).
bool check_lemma_3_4(const IntBijection& a, double lambda_b, int horizon);

// Strip extension of the log-conjugated automorphism, strip half-height pi so
// the exponential projection is well defined across the branch seam.
struct ExpLatticeMap {
    MapExpr g;       // identity outside |Im z| < pi, g(n) = a_n
    IntBijection a;  // the log-conjugated automorphism
};

ExpLatticeMap extend_exp_automorphism(const IntBijection& a);

// Projection through w = e^z: lift w by the principal branch (Im in
// (-pi, pi]), apply g, exponentiate. Points whose lift g fixes (everything
// near the seam, in particular the negative real axis) return w unchanged,
// exactly. w = 0 is a puncture and rejected.
Point exp_eval(const ExpLatticeMap& map, Point w);

// Same evaluation through the lift shifted by 2*pi*branch: the periodized
// extension g(z + 2 pi i k) = g(z) + 2 pi i k makes the result independent of
// the branch up to roundoff.
Point exp_eval_branch(const ExpLatticeMap& map, Point w, int branch);

}  // namespace qcx
