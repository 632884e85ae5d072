#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <variant>
#include <vector>

#include "doctest.h"
#include "qcx/embed.hpp"
#include "qcx/errors.hpp"
#include "qcx/monotone_seq.hpp"

using namespace qcx;

namespace {

const MonotoneSeq kIntegers = make_monotone_seq(0, 1, {0.0, 1.0}, 1.0, 1.0);
const MonotoneSeq kEvens = make_monotone_seq(0, 1, {0.0, 2.0}, 2.0, 2.0);

// Finite-difference Beltrami modulus of the plane extension, |f_zbar / f_z|.
double ba_mu_abs(const BAMap& m, Point z, double h = 1e-6) {
    const Point fx = (ba_eval(m, z + Point(h, 0)) - ba_eval(m, z - Point(h, 0))) / (2 * h);
    const Point fy = (ba_eval(m, z + Point(0, h)) - ba_eval(m, z - Point(0, h))) / (2 * h);
    const Point fz = (fx - Point(0, 1) * fy) / 2.0;
    const Point fzb = (fx + Point(0, 1) * fy) / 2.0;
    return std::abs(fzb) / std::abs(fz);
}

MonotoneSeq random_image(std::mt19937& rng, int max_window) {
    std::uniform_int_distribution<int> width(1, max_window);
    std::uniform_real_distribution<double> step(0.5, 2.0);
    const int w = width(rng);
    std::vector<double> v(w + 1);
    v[0] = step(rng) - 1.0;
    for (int i = 1; i <= w; ++i) v[i] = v[i - 1] + step(rng);
    return make_monotone_seq(0, w, v, step(rng), step(rng));
}

IntBijection random_assignment(std::mt19937& rng, int max_window) {
    std::uniform_int_distribution<int> span(1, max_window);
    std::uniform_int_distribution<int> off(-3, 3);
    const int w = span(rng);
    const int lo = off(rng);
    std::vector<int> v(w);
    std::iota(v.begin(), v.end(), lo);
    std::shuffle(v.begin(), v.end(), rng);
    return make_identity_tail(lo, lo + w - 1, v);
}

}  // namespace

TEST_CASE("interpolant worked examples") {
    const PiecewiseLinearHomeo id = pl_interpolant(kIntegers);
    for (double x : {-3.7, -1.0, 0.0, 0.4, 1.0, 9.25}) CHECK(pl_eval(id, x) == x);

    const PiecewiseLinearHomeo dbl = pl_interpolant(kEvens);
    for (double x : {-3.5, 0.0, 0.25, 1.0, 7.0})
        CHECK(pl_eval(dbl, x) == doctest::Approx(2.0 * x).epsilon(1e-15));

    const PiecewiseLinearHomeo h =
        pl_interpolant(make_monotone_seq(0, 2, {0.0, 1.0, 3.0}, 1.0, 1.0));
    CHECK(pl_eval(h, 1.5) == 2.0);
    CHECK(pl_eval(h, 0.5) == 0.5);
    CHECK(pl_eval(h, -2.0) == -2.0);
    CHECK(pl_eval(h, 3.0) == 4.0);  // right tail, unit slope
}

TEST_CASE("plane extension of the identity is the identity") {
    const BAMap m = make_ba(pl_interpolant(kIntegers));
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < 500; ++i) {
        sx = std::fmod(sx + 0.6180339887498949, 1.0);
        sy = std::fmod(sy + 0.7548776662466927, 1.0);
        const Point z(-8.0 + 16.0 * sx, -6.0 + 12.0 * sy);
        CHECK(std::abs(ba_eval(m, z) - z) <= 1e-12);
    }
}

TEST_CASE("plane extension of doubling is doubling of the plane") {
    // Affine boundary data extends to the same affine map, matching the
    // identity normalization of the vertical coordinate.
    const BAMap m = make_ba(pl_interpolant(kEvens));
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < 500; ++i) {
        sx = std::fmod(sx + 0.6180339887498949, 1.0);
        sy = std::fmod(sy + 0.7548776662466927, 1.0);
        const Point z(-8.0 + 16.0 * sx, -6.0 + 12.0 * sy);
        CHECK(std::abs(ba_eval(m, z) - 2.0 * z) <= 1e-12);
    }
    CHECK(std::abs(ba_eval(m, Point(0.0, 1.0)) - Point(0.0, 2.0)) <= 1e-15);
}

TEST_CASE("real restriction and conjugation symmetry") {
    const BAMap m = make_ba(pl_interpolant(make_monotone_seq(0, 2, {0.0, 1.0, 3.0}, 1.0, 1.0)));
    for (int n = 0; n <= 2; ++n) {
        const double want = n == 2 ? 3.0 : double(n);
        CHECK(std::abs(ba_eval(m, Point(double(n), 0.0)) - Point(want, 0.0)) <= 1e-12);
    }
    double s = 0.0;
    for (int i = 0; i < 100; ++i) {
        s = std::fmod(s + 0.6180339887498949, 1.0);
        const double x = -6.0 + 12.0 * s;
        CHECK(std::abs(ba_eval(m, Point(x, 0.0)).real() - pl_eval(m.h, x)) <= 1e-12);
        CHECK(ba_eval(m, Point(x, 0.0)).imag() == 0.0);

        const Point z(x, 0.5 + 3.0 * s);
        const Point up = ba_eval(m, z);
        const Point dn = ba_eval(m, std::conj(z));
        CHECK(std::abs(dn - std::conj(up)) <= 1e-12);
    }
}

TEST_CASE("plane extension is quasiconformal off the axis") {
    std::mt19937 rng(230);
    for (int inst = 0; inst < 3; ++inst) {
        const MonotoneSeq e = random_image(rng, 8);
        REQUIRE(monotone_M(e, 12) <= 10.0);
        const BAMap m = make_ba(pl_interpolant(e));
        for (int ix = 0; ix < 12; ++ix)
            for (int iy = 0; iy < 12; ++iy) {
                const Point z(-5.0 + ix * 10.0 / 11.0, 0.1 + iy * 4.9 / 11.0);
                CHECK(ba_mu_abs(m, z) < 1.0);
            }
    }
}

TEST_CASE("image characterization saves the ratio and the witness") {
    const MonotoneSeq e = make_monotone_seq(0, 2, {0.0, 1.0, 100.0}, 1.0, 1.0);
    const ImageReport rep = characterize_image(e, 200, 10.0);
    CHECK(rep.m_constant == 99.0);
    CHECK_FALSE(rep.pass);
    CHECK(rep.m_constant == monotone_M(e, 200));
    // witness attains the ratio
    const auto [n, k] = rep.witness;
    const double r = (seq_eval(e, n + k) - seq_eval(e, n)) / (seq_eval(e, n) - seq_eval(e, n - k));
    CHECK(std::max(r, 1.0 / r) == 99.0);

    CHECK(characterize_image(kIntegers, 10, 1.5).pass);
    CHECK(characterize_image(kIntegers, 10, 1.5).m_constant == 1.0);
}

TEST_CASE("image characterization is affine invariant") {
    const MonotoneSeq e = make_monotone_seq(0, 3, {0.0, 0.5, 2.0, 2.5}, 1.0, 0.5);
    std::vector<double> scaled;
    for (double v : e.values) scaled.push_back(4.0 * v + 3.0);
    const MonotoneSeq f = make_monotone_seq(0, 3, scaled, 4.0, 2.0);
    const ImageReport a = characterize_image(e, 20, 1e9);
    const ImageReport b = characterize_image(f, 20, 1e9);
    CHECK(a.m_constant == doctest::Approx(b.m_constant).epsilon(1e-12));
    CHECK(a.witness == b.witness);
}

TEST_CASE("inverse bounds, identity instance") {
    std::vector<int> g(11);
    std::iota(g.begin(), g.end(), -5);
    const MonotoneSeq e = make_monotone_seq(-5, 5, {-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5}, 1.0, 1.0);
    const InverseBoundsReport rep = inverse_bounds_report(e, g, 1.0);
    CHECK(rep.l_constant == 8.0);
    CHECK(rep.adjacent_ok);
    CHECK(rep.spans_ok);
    CHECK(rep.ratio_ok);
    CHECK(rep.pass);
    CHECK(rep.adjacent_max == 1.0);
    for (const SpanCheck& s : rep.span_checks) CHECK(s.ok);
}

TEST_CASE("inverse bounds, adversarial jump") {
    // g jumps by 10 between adjacent image points
    const MonotoneSeq e = make_monotone_seq(0, 3, {0.0, 1.0, 2.0, 3.0}, 1.0, 1.0);
    const InverseBoundsReport rep = inverse_bounds_report(e, {0, 1, 11, 12}, 1.0);
    CHECK_FALSE(rep.adjacent_ok);
    CHECK(rep.adjacent_max == 10.0);
    CHECK(rep.worst_adjacent_n == 1);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("inverse bounds validates its preconditions") {
    CHECK_THROWS_AS(inverse_bounds_report(kIntegers, {0, 1}, 0.5), InputError);
    CHECK_THROWS_AS(inverse_bounds_report(kIntegers, {0}, 1.0), InputError);
}

TEST_CASE("embedding extension worked example") {
    // f(n) = image of the swapped index: f(0) = 2, f(1) = 0
    const IntBijection swap = make_identity_tail(0, 1, {1, 0});
    const EmbeddingMap m = extend_embedding(kEvens, swap, 1.0);
    CHECK(embedding_eval(m, Point(0.0, 0.0)) == Point(2.0, 0.0));
    CHECK(embedding_eval(m, Point(1.0, 0.0)) == Point(0.0, 0.0));
    CHECK(embedding_eval(m, Point(2.0, 0.0)) == Point(4.0, 0.0));
    CHECK(embedding_eval(m, Point(-3.0, 0.0)) == Point(-6.0, 0.0));
    // far from the strip the automorphism is trivial, only the stretch remains
    CHECK(std::abs(embedding_eval(m, Point(0.5, 7.0)) - Point(1.0, 14.0)) <= 1e-12);
}

TEST_CASE("random embeddings match their boundary data") {
    std::mt19937 rng(409);
    for (int trial = 0; trial < 20; ++trial) {
        const MonotoneSeq e = random_image(rng, 6);
        const IntBijection sigma = random_assignment(rng, 6);
        const EmbeddingMap m = extend_embedding(e, sigma, 1.0);
        for (int n = -10; n <= 10; ++n) {
            const double want = seq_eval(e, bijection_eval(sigma, n));
            CHECK(std::abs(embedding_eval(m, Point(double(n), 0.0)) - Point(want, 0.0)) <=
                  1e-8);
        }
    }
}

TEST_CASE("pipeline inverse assignments satisfy the gap and span bounds") {
    std::mt19937 rng(5005);
    for (int trial = 0; trial < 20; ++trial) {
        const MonotoneSeq e = random_image(rng, 6);
        const IntBijection sigma = random_assignment(rng, 6);

        // The bounds are statements about the whole inverse assignment, so
        // the modulus has to be measured over a window that contains all of
        // the structure of both maps, with margin for triples that mix a
        // tail with the structured region.
        const int reach = structure_reach(sigma);
        const int wlo = std::min(e.lo, -reach) - 10;
        const int whi = std::max(e.hi, reach) + 10;
        std::vector<int> g_values;
        std::vector<double> wide, xs, ys;
        for (int m = wlo; m <= whi; ++m) {
            int pre = m;
            for (int n = m - 12; n <= m + 12; ++n)
                if (bijection_eval(sigma, n) == m) pre = n;
            g_values.push_back(pre);
            wide.push_back(seq_eval(e, m));
            xs.push_back(wide.back());
            ys.push_back(double(pre));
        }
        const MonotoneSeq e_wide =
            make_monotone_seq(wlo, whi, wide, e.left_slope, e.right_slope);

        // measured quasisymmetry modulus of g at unit ratio
        const QsProfile prof = qs_profile(xs, ys);
        const double mu = std::max(1.0, envelope_at(prof, 1.0));
        const InverseBoundsReport rep = inverse_bounds_report(e_wide, g_values, mu);
        CHECK(rep.adjacent_ok);
        CHECK(rep.spans_ok);
        CHECK(rep.ratio_ok);
        CHECK(rep.pass);
    }
}
