#include "qcx/monotone_seq.hpp"

#include <algorithm>
#include <cmath>

#include "qcx/errors.hpp"

namespace qcx {

MonotoneSeq make_monotone_seq(int lo, int hi, std::vector<double> values,
                              double left_slope, double right_slope) {
    if (hi < lo) throw InputError("monotone_seq: hi must be >= lo");
    if (values.size() != size_t(hi - lo + 1))
        throw InputError("monotone_seq: values must cover [lo, hi]");
    for (double v : values)
        if (!std::isfinite(v)) throw InputError("monotone_seq: values must be finite");
    for (size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw InputError("monotone_seq: values must be strictly increasing");
    if (!(left_slope > 0.0) || !std::isfinite(left_slope) || !(right_slope > 0.0) ||
        !std::isfinite(right_slope))
        throw InputError("monotone_seq: tail slopes must be positive and finite");
    return MonotoneSeq{lo, hi, std::move(values), left_slope, right_slope};
}

double seq_eval(const MonotoneSeq& e, int n) {
    if (n < e.lo) return e.values.front() + (n - e.lo) * e.left_slope;
    if (n > e.hi) return e.values.back() + (n - e.hi) * e.right_slope;
    return e.values[n - e.lo];
}

double monotone_M(const MonotoneSeq& e, int horizon) {
    if (horizon < std::max(1, e.hi - e.lo))
        throw InputError("monotone_M: horizon must be >= max(1, window width)");
    double m = 1.0;
    for (int n = e.lo - horizon; n <= e.hi + horizon; ++n) {
        const double an = seq_eval(e, n);
        for (int k = 1; k <= horizon; ++k) {
            const double r = (seq_eval(e, n + k) - an) / (an - seq_eval(e, n - k));
            m = std::max(m, std::max(r, 1.0 / r));
        }
    }
    return m;
}

QsProfile qs_profile(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw InputError("qs_profile: size mismatch");
    if (xs.size() < 3) throw InputError("qs_profile: need at least 3 points");
    auto distinct = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (!distinct(xs) || !distinct(ys))
        throw InputError("qs_profile: points must be distinct");
    const size_t n = xs.size();
    QsProfile p;
    p.samples.reserve(n * (n - 1) * (n - 1));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (size_t k = 0; k < n; ++k) {
                if (k == i) continue;
                const double t = std::abs(xs[i] - xs[j]) / std::abs(xs[i] - xs[k]);
                const double rho = std::abs(ys[i] - ys[j]) / std::abs(ys[i] - ys[k]);
                p.samples.emplace_back(t, rho);
            }
        }
    std::sort(p.samples.begin(), p.samples.end());
    double top = 0.0;
    for (const auto& [t, rho] : p.samples) {
        top = std::max(top, rho);
        if (!p.envelope.empty() && p.envelope.back().first == t)
            p.envelope.back().second = top;
        else
            p.envelope.emplace_back(t, top);
    }
    return p;
}

double envelope_at(const QsProfile& p, double t) {
    // Last envelope step with step.t <= t.
    auto it = std::upper_bound(p.envelope.begin(), p.envelope.end(), t,
                               [](double v, const auto& s) { return v < s.first; });
    if (it == p.envelope.begin()) return 0.0;
    return std::prev(it)->second;
}

}  // namespace qcx
