#pragma once

#include <utility>
#include <vector>

#include "qcx/intbijection.hpp"
#include "qcx/mapexpr.hpp"
#include "qcx/monotone_seq.hpp"

namespace qcx {

// Increasing piecewise-linear homeomorphism of R with integer breakpoints
// and affine tails.
struct PiecewiseLinearHomeo {
    std::vector<double> breakpoints;  // strictly increasing
    std::vector<double> values;       // strictly increasing, same length
    double left_slope = 1.0;
    double right_slope = 1.0;
};

PiecewiseLinearHomeo pl_interpolant(const MonotoneSeq& e);
double pl_eval(const PiecewiseLinearHomeo& h, double x);

// Average-based extension of h to the plane. For y > 0,
//   alpha = (1/y) * integral of h over [x, x+y],
//   beta  = (1/y) * integral of h over [x-y, x],
//   F = (alpha + beta)/2 + i (alpha - beta)/2;
// y = 0 gives h(x), y < 0 goes by conjugation symmetry. The integrals come
// from a cumulative piecewise-quadratic antiderivative, so the identity maps
// to the identity and the real restriction is h itself.
struct BAMap {
    PiecewiseLinearHomeo h;
    std::vector<double> cumulative;  // antiderivative of h at each breakpoint
};

BAMap make_ba(PiecewiseLinearHomeo h);
Point ba_eval(const BAMap& map, Point z);

// M-ratio certificate of the image sequence against a caller ceiling.
struct ImageReport {
    double m_constant = 1.0;
    int horizon = 0;
    std::pair<int, int> witness{0, 1};  // (n, k) attaining the max
    bool pass = false;
};

ImageReport characterize_image(const MonotoneSeq& e, int horizon, double ceiling);

// Inverse-map gap and span bounds driven by the quasisymmetry modulus mu.
struct SpanCheck {
    int k = 1;
    double lower = 0.0;
    double value = 0.0;
    double upper = 0.0;
    bool ok = false;
};

struct InverseBoundsReport {
    double mu = 1.0;
    double adjacent_max = 0.0;
    int worst_adjacent_n = 0;
    std::vector<SpanCheck> span_checks;  // min and max row per span width
    double ratio_min = 1.0;
    double ratio_max = 1.0;
    double l_constant = 8.0;  // 8 * mu^2
    bool adjacent_ok = false;
    bool spans_ok = false;
    bool ratio_ok = false;
    bool pass = false;
};

// g_values[i] = g(a_n) for n = e.lo + i. Checks adjacent gaps < 2*mu, span
// bounds (k-1)/(2*mu) < |g(a_n) - g(a_{n+k})| < 2*mu*k, and forward/backward
// span ratios within (1/L, L) for L = 8*mu^2. Report-based, never throws on
// a failed bound.
InverseBoundsReport inverse_bounds_report(const MonotoneSeq& e,
                                          const std::vector<int>& g_values, double mu);

// Extension of n -> a_{sigma(n)}: strip automorphism for sigma composed with
// the plane extension of the image interpolant.
struct EmbeddingMap {
    BAMap ba;
    MapExpr automorphism;
};

EmbeddingMap extend_embedding(const MonotoneSeq& e, const IntBijection& assignment,
                              double delta);
Point embedding_eval(const EmbeddingMap& m, Point z);

}  // namespace qcx
