#include "qcx/explattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qcx/errors.hpp"
#include "qcx/splitflow.hpp"

namespace qcx {

ExpLatticeReport log_conjugate(const IntBijection& a) {
    return log_conjugate(AutoInput{a, false});
}

ExpLatticeReport log_conjugate(const AutoInput& a) {
    ExpLatticeReport rep;
    rep.tends_to_zero = (limit_classification(a) == LimitClass::SameDirection);
    if (!rep.tends_to_zero)
        throw CheckError("log_conjugate: condition violated, the exponentiated "
                         "sequence does not tend to 0 in the negative direction");

    rep.horizon = structure_reach(a.base) + 40;
    const int h = rep.horizon;
    std::vector<double> b(2 * h + 1);
    for (int n = -h; n <= h; ++n) b[n + h] = std::exp(double(auto_eval(a, n)));

    for (int n = -h; n <= h; ++n)
        for (int m = n; m < h; ++m) {
            const double num = std::abs(b[n + h] - b[m + h]);
            for (int k = m + 1; k <= h; ++k) {
                const double r = num / std::abs(b[n + h] - b[k + h]);
                if (r > rep.lambda_b) {
                    rep.lambda_b = r;
                    rep.witness = {n, m, k};
                }
            }
        }
    rep.c_lambda = std::log(rep.lambda_b + 1.0);
    rep.lambda_a = rep.c_lambda + 1.0;
    return rep;
}

bool check_lemma_3_4(const IntBijection& a, double lambda_b, int horizon) {
    const double c_lambda = std::log(lambda_b + 1.0);
    for (int k = -horizon; k <= horizon; ++k)
        for (int l = k + 1; l <= horizon; ++l) {
            const int ak = bijection_eval(a, k), al = bijection_eval(a, l);
            if (al < ak && double(ak - al) > c_lambda + 1e-12) return false;
        }
    return true;
}

ExpLatticeMap extend_exp_automorphism(const IntBijection& a) {
    log_conjugate(a);  // validates direction and measures the constant
    return ExpLatticeMap{extend_automorphism(a, std::numbers::pi), a};
}

Point exp_eval(const ExpLatticeMap& map, Point w) { return exp_eval_branch(map, w, 0); }

Point exp_eval_branch(const ExpLatticeMap& map, Point w, int branch) {
    if (w == Point(0.0, 0.0))
        throw InputError("exp_eval: w = 0 is a puncture of the projection");
    const double two_pi = 2.0 * std::numbers::pi;
    const Point base = std::log(w);  // principal branch, Im in (-pi, pi]
    const Point mapped = expr_eval(map.g, base);
    // Identity region (all of it lies near the seam): exp(g + 2 pi i k) = w
    // exactly, so skip the round trip regardless of the branch.
    if (mapped == base) return w;
    return std::exp(mapped + Point(0.0, two_pi * branch));
}

}  // namespace qcx
