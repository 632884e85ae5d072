#include "qcx/intbijection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "qcx/errors.hpp"

namespace qcx {

namespace {

int positive_mod(int n, int p) {
    int r = n % p;
    return r < 0 ? r + p : r;
}

bool identity_tail_valid(const IdentityTail& f) {
    if (f.hi < f.lo) return false;
    if (f.values.size() != size_t(f.hi - f.lo + 1)) return false;
    std::vector<char> seen(f.values.size(), 0);
    for (int v : f.values) {
        if (v < f.lo || v > f.hi || seen[v - f.lo]) return false;
        seen[v - f.lo] = 1;
    }
    return true;
}

bool periodic_valid(const PeriodicDisplacement& f) {
    if (f.period < 1) return false;
    if (f.disp.size() != size_t(f.period)) return false;
    std::vector<char> seen(f.period, 0);
    for (int j = 0; j < f.period; ++j) {
        int r = positive_mod(j + f.disp[j], f.period);
        if (seen[r]) return false;
        seen[r] = 1;
    }
    return true;
}

}  // namespace

IntBijection make_identity_tail(int lo, int hi, std::vector<int> values) {
    IdentityTail f{lo, hi, std::move(values)};
    if (!identity_tail_valid(f))
        throw InputError("identity_tail: values must permute [lo, hi]");
    return IntBijection{std::move(f)};
}

IntBijection make_periodic(int period, std::vector<int> disp) {
    PeriodicDisplacement f{period, std::move(disp)};
    if (!periodic_valid(f))
        throw InputError("periodic: residue shifts must permute Z/period");
    return IntBijection{std::move(f)};
}

bool is_bijective(const IntBijection& a) {
    if (const auto* t = std::get_if<IdentityTail>(&a.form)) return identity_tail_valid(*t);
    return periodic_valid(std::get<PeriodicDisplacement>(a.form));
}

int bijection_eval(const IntBijection& a, int n) {
    if (const auto* t = std::get_if<IdentityTail>(&a.form)) {
        if (n < t->lo || n > t->hi) return n;
        return t->values[n - t->lo];
    }
    const auto& p = std::get<PeriodicDisplacement>(a.form);
    return n + p.disp[positive_mod(n, p.period)];
}

int max_displacement(const IntBijection& a) {
    int d = 0;
    if (const auto* t = std::get_if<IdentityTail>(&a.form)) {
        for (size_t i = 0; i < t->values.size(); ++i)
            d = std::max(d, std::abs(t->values[i] - (t->lo + int(i))));
    } else {
        for (int v : std::get<PeriodicDisplacement>(a.form).disp)
            d = std::max(d, std::abs(v));
    }
    return d;
}

int structure_reach(const IntBijection& a) {
    if (const auto* t = std::get_if<IdentityTail>(&a.form))
        return std::max(std::abs(t->lo), std::abs(t->hi));
    return std::get<PeriodicDisplacement>(a.form).period;
}

ThreePointReport three_point_lambda(const IntBijection& a, int horizon) {
    const int reach = structure_reach(a);
    const int d = max_displacement(a);
    if (horizon < reach + 2 * d + 1)
        throw InputError("three_point_lambda: horizon too small for a certified bound (need >= reach + 2*disp + 1 = " +
                         std::to_string(reach + 2 * d + 1) + ")");

    std::vector<int> v(2 * horizon + 1);
    for (int n = -horizon; n <= horizon; ++n) v[n + horizon] = bijection_eval(a, n);

    ThreePointReport rep;
    rep.horizon = horizon;
    for (int n = -horizon; n <= horizon; ++n) {
        for (int m = n; m < horizon; ++m) {
            const double num = std::abs(double(v[n + horizon]) - double(v[m + horizon]));
            for (int k = m + 1; k <= horizon; ++k) {
                const double den =
                    std::abs(double(v[n + horizon]) - double(v[k + horizon]));
                const double r = num / den;
                if (r > rep.lambda_empirical) {
                    rep.lambda_empirical = r;
                    rep.witness = {n, m, k};
                }
            }
        }
    }

    // lambda >= 1 by definition; the tail term covers triples leaving the
    // horizon (minimal such span is horizon - reach + 1).
    rep.lambda_certified = std::max(rep.lambda_empirical, 1.0);
    if (d >= 1) {
        const double s = double(horizon - reach + 1);
        rep.lambda_certified =
            std::max(rep.lambda_certified, (s - 1.0 + 2.0 * d) / (s - 2.0 * d));
    }
    return rep;
}

LimitClass limit_classification(const IntBijection&) { return LimitClass::SameDirection; }

LimitClass limit_classification(const AutoInput& in) {
    return in.negated ? LimitClass::Mirrored : LimitClass::SameDirection;
}

int auto_eval(const AutoInput& in, int n) {
    const int v = bijection_eval(in.base, n);
    return in.negated ? -v : v;
}

bool splits_interval(const IntBijection& a, int k, int l) {
    if (k > l) throw InputError("splits_interval: interval is empty");
    int mx = bijection_eval(a, k), mn = mx;
    for (int n = k; n <= l; ++n) {
        const int v = bijection_eval(a, n);
        mx = std::max(mx, v);
        mn = std::min(mn, v);
    }
    const int d = max_displacement(a);
    // Beyond these bounded ranges |a_n - n| <= d settles the comparison.
    for (int n = l + 1; n <= mx + d; ++n)
        if (bijection_eval(a, n) <= mx) return false;
    for (int n = mn - d; n < k; ++n)
        if (bijection_eval(a, n) >= mn) return false;
    return true;
}

namespace {

// Image of a splitting block must be an interval of the same cardinality.
void check_block_image(const IntBijection& a, int k, int l) {
    std::vector<int> img;
    for (int n = k; n <= l; ++n) img.push_back(bijection_eval(a, n));
    std::sort(img.begin(), img.end());
    for (size_t i = 1; i < img.size(); ++i)
        if (img[i] != img[i - 1] + 1)
            throw CheckError("split decomposition: block image is not an interval");
}

// Smallest e in [cur, cur + c_max - 1] such that [cur, e] splits a, or nullopt.
std::optional<int> grow_block(const IntBijection& a, int cur, int c_max) {
    for (int e = cur; e < cur + c_max; ++e)
        if (splits_interval(a, cur, e)) return e;
    return std::nullopt;
}

std::optional<SplitDecomposition> decompose_identity_tail(const IntBijection& a,
                                                          int c_max, int horizon) {
    SplitDecomposition dec;
    dec.cuts.push_back(-horizon - 1);
    int cur = -horizon;
    while (cur <= horizon) {
        auto e = grow_block(a, cur, c_max);
        if (!e) return std::nullopt;
        check_block_image(a, cur, *e);
        dec.bound_c = std::max(dec.bound_c, *e - cur + 1);
        dec.cuts.push_back(*e);
        cur = *e + 1;
    }
    dec.coverage = {dec.cuts.front() + 1, dec.cuts.back()};
    return dec;
}

std::optional<SplitDecomposition> decompose_periodic(const IntBijection& a, int c_max,
                                                     int horizon) {
    const int period = std::get<PeriodicDisplacement>(a.form).period;
    for (int phase = 0; phase < period; ++phase) {
        // Greedy from this phase; success once a cut residue repeats, because
        // the cut pattern between the two occurrences then tiles Z.
        std::vector<int> cuts{phase - 1};
        bool failed = false;
        int first_repeat = -1, repeat_at = -1;
        while (!failed) {
            auto e = grow_block(a, cuts.back() + 1, c_max);
            if (!e) {
                failed = true;
                break;
            }
            check_block_image(a, cuts.back() + 1, *e);
            for (int c : cuts) {
                if (positive_mod(c, period) == positive_mod(*e, period)) {
                    first_repeat = c;
                    repeat_at = *e;
                    break;
                }
            }
            cuts.push_back(*e);
            if (repeat_at > first_repeat) break;
        }
        if (failed) continue;

        // Tile the certified pattern (first_repeat, repeat_at] across the
        // requested coverage.
        const int span = repeat_at - first_repeat;
        std::vector<int> pattern;
        for (int c : cuts)
            if (c > first_repeat && c <= repeat_at) pattern.push_back(c);
        SplitDecomposition dec;
        int base = first_repeat;
        while (base > -horizon - 1) base -= span;
        for (; base <= horizon + span; base += span)
            for (int c : pattern) {
                const int cut = c - (repeat_at - base);
                if (cut >= -horizon - 1 - span && cut <= horizon + span)
                    dec.cuts.push_back(cut);
            }
        std::sort(dec.cuts.begin(), dec.cuts.end());
        dec.cuts.erase(std::unique(dec.cuts.begin(), dec.cuts.end()), dec.cuts.end());
        dec.bound_c = 1;
        for (size_t i = 1; i < dec.cuts.size(); ++i)
            dec.bound_c = std::max(dec.bound_c, dec.cuts[i] - dec.cuts[i - 1]);
        dec.coverage = {dec.cuts.front() + 1, dec.cuts.back()};
        return dec;
    }
    return std::nullopt;
}

}  // namespace

std::optional<SplitDecomposition> find_split_decomposition(const IntBijection& a,
                                                           int c_max, int horizon) {
    if (c_max < 1) throw InputError("find_split_decomposition: c_max must be >= 1");
    if (horizon < structure_reach(a))
        throw InputError("find_split_decomposition: horizon must cover the window/period");
    if (std::holds_alternative<IdentityTail>(a.form))
        return decompose_identity_tail(a, c_max, horizon);
    return decompose_periodic(a, c_max, horizon);
}

}  // namespace qcx
