#include "qcx/embed.hpp"

#include <algorithm>
#include <cmath>

#include "qcx/errors.hpp"
#include "qcx/splitflow.hpp"

namespace qcx {

PiecewiseLinearHomeo pl_interpolant(const MonotoneSeq& e) {
    make_monotone_seq(e.lo, e.hi, e.values, e.left_slope, e.right_slope);  // revalidate
    PiecewiseLinearHomeo h;
    for (int n = e.lo; n <= e.hi; ++n) h.breakpoints.push_back(double(n));
    h.values = e.values;
    h.left_slope = e.left_slope;
    h.right_slope = e.right_slope;
    return h;
}

double pl_eval(const PiecewiseLinearHomeo& h, double x) {
    const auto& b = h.breakpoints;
    if (x <= b.front()) return h.values.front() + (x - b.front()) * h.left_slope;
    if (x >= b.back()) return h.values.back() + (x - b.back()) * h.right_slope;
    const size_t i =
        size_t(std::upper_bound(b.begin(), b.end(), x) - b.begin()) - 1;
    const double t = (x - b[i]) / (b[i + 1] - b[i]);
    return h.values[i] + t * (h.values[i + 1] - h.values[i]);
}

BAMap make_ba(PiecewiseLinearHomeo h) {
    if (h.breakpoints.empty() || h.breakpoints.size() != h.values.size())
        throw InputError("ba: breakpoints and values must match and be nonempty");
    BAMap m;
    m.cumulative.assign(h.breakpoints.size(), 0.0);
    for (size_t i = 0; i + 1 < h.breakpoints.size(); ++i)
        m.cumulative[i + 1] = m.cumulative[i] +
                              0.5 * (h.values[i] + h.values[i + 1]) *
                                  (h.breakpoints[i + 1] - h.breakpoints[i]);
    m.h = std::move(h);
    return m;
}

namespace {

// Antiderivative of h normalized to 0 at the first breakpoint; quadratic on
// each linear piece and on both tails.
double antiderivative(const BAMap& m, double x) {
    const auto& b = m.h.breakpoints;
    const auto& v = m.h.values;
    if (x <= b.front()) {
        const double dx = x - b.front();
        return v.front() * dx + 0.5 * m.h.left_slope * dx * dx;
    }
    if (x >= b.back()) {
        const double dx = x - b.back();
        return m.cumulative.back() + v.back() * dx + 0.5 * m.h.right_slope * dx * dx;
    }
    const size_t i =
        size_t(std::upper_bound(b.begin(), b.end(), x) - b.begin()) - 1;
    const double dx = x - b[i];
    const double slope = (v[i + 1] - v[i]) / (b[i + 1] - b[i]);
    return m.cumulative[i] + v[i] * dx + 0.5 * slope * dx * dx;
}

}  // namespace

Point ba_eval(const BAMap& map, Point z) {
    const double x = z.real(), y = z.imag();
    if (y == 0.0) return Point(pl_eval(map.h, x), 0.0);
    if (y < 0.0) return std::conj(ba_eval(map, std::conj(z)));
    const double hx = antiderivative(map, x);
    const double alpha = (antiderivative(map, x + y) - hx) / y;
    const double beta = (hx - antiderivative(map, x - y)) / y;
    // Vertical coordinate alpha - beta, so affine h extends to the same
    // affine map of the plane (in particular the identity stays fixed).
    return Point(0.5 * (alpha + beta), alpha - beta);
}

ImageReport characterize_image(const MonotoneSeq& e, int horizon, double ceiling) {
    ImageReport rep;
    rep.horizon = horizon;
    // Same scan as monotone_M, tracking the witness.
    if (horizon < std::max(1, e.hi - e.lo))
        throw InputError("characterize_image: horizon must be >= max(1, window width)");
    double m = 1.0;
    for (int n = e.lo - horizon; n <= e.hi + horizon; ++n) {
        const double an = seq_eval(e, n);
        for (int k = 1; k <= horizon; ++k) {
            const double r = (seq_eval(e, n + k) - an) / (an - seq_eval(e, n - k));
            const double worst = std::max(r, 1.0 / r);
            if (worst > m) {
                m = worst;
                rep.witness = {n, k};
            }
        }
    }
    rep.m_constant = m;
    rep.pass = (m <= ceiling);
    return rep;
}

InverseBoundsReport inverse_bounds_report(const MonotoneSeq& e,
                                          const std::vector<int>& g_values,
                                          double mu) {
    if (!(mu >= 1.0)) throw InputError("inverse_bounds_report: mu must be >= 1");
    if (g_values.size() != size_t(e.hi - e.lo + 1))
        throw InputError("inverse_bounds_report: g_values must cover the window");

    InverseBoundsReport rep;
    rep.mu = mu;
    rep.l_constant = 8.0 * mu * mu;
    const int count = int(g_values.size());

    rep.adjacent_ok = true;
    for (int i = 0; i + 1 < count; ++i) {
        const double gap = std::abs(double(g_values[i]) - double(g_values[i + 1]));
        if (gap > rep.adjacent_max) {
            rep.adjacent_max = gap;
            rep.worst_adjacent_n = e.lo + i;
        }
    }
    rep.adjacent_ok = (count < 2) || (rep.adjacent_max < 2.0 * mu);

    rep.spans_ok = true;
    for (int k = 1; k < count; ++k) {
        double vmin = 0.0, vmax = 0.0;
        bool first = true;
        for (int i = 0; i + k < count; ++i) {
            const double span = std::abs(double(g_values[i]) - double(g_values[i + k]));
            vmin = first ? span : std::min(vmin, span);
            vmax = first ? span : std::max(vmax, span);
            first = false;
        }
        const double lower = (k - 1) / (2.0 * mu);
        const double upper = 2.0 * mu * k;
        SpanCheck low{k, lower, vmin, upper, vmin > lower && vmin < upper};
        SpanCheck high{k, lower, vmax, upper, vmax > lower && vmax < upper};
        rep.spans_ok = rep.spans_ok && low.ok && high.ok;
        rep.span_checks.push_back(low);
        rep.span_checks.push_back(high);
    }

    bool have_ratio = false;
    for (int k = 1; k < count; ++k)
        for (int i = k; i + k < count; ++i) {
            const double fwd = std::abs(double(g_values[i + k]) - double(g_values[i]));
            const double bwd = std::abs(double(g_values[i]) - double(g_values[i - k]));
            const double r = fwd / bwd;
            if (!have_ratio) {
                rep.ratio_min = rep.ratio_max = r;
                have_ratio = true;
            } else {
                rep.ratio_min = std::min(rep.ratio_min, r);
                rep.ratio_max = std::max(rep.ratio_max, r);
            }
        }
    rep.ratio_ok = !have_ratio || (rep.ratio_min > 1.0 / rep.l_constant &&
                                   rep.ratio_max < rep.l_constant);

    rep.pass = rep.adjacent_ok && rep.spans_ok && rep.ratio_ok;
    return rep;
}

EmbeddingMap extend_embedding(const MonotoneSeq& e, const IntBijection& assignment,
                              double delta) {
    EmbeddingMap m{make_ba(pl_interpolant(e)), extend_automorphism(assignment, delta)};
    return m;
}

Point embedding_eval(const EmbeddingMap& m, Point z) {
    return ba_eval(m.ba, expr_eval(m.automorphism, z));
}

}  // namespace qcx
