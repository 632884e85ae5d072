#include "qcx/tentslide.hpp"

#include <algorithm>
#include <cmath>

#include "qcx/errors.hpp"

namespace qcx {

namespace {

// Local frame of a slide: X along the axis, Y transverse, both relative to the
// rectangle center. a = axis half-extent, b = transverse half-extent.
struct LocalFrame {
    double X;
    double Y;
    double a;
    double b;
};

LocalFrame to_local(const TentSlide& t, Point z) {
    const double dx = z.real() - t.rect.cx;
    const double dy = z.imag() - t.rect.cy;
    if (t.axis == Axis::Horizontal) return {dx, dy, t.rect.hw, t.rect.hh};
    return {dy, dx, t.rect.hh, t.rect.hw};
}

Point from_local(const TentSlide& t, double X, double Y) {
    if (t.axis == Axis::Horizontal) return {t.rect.cx + X, t.rect.cy + Y};
    return {t.rect.cx + Y, t.rect.cy + X};
}

// Tent displacement through (-a,0), (p,q-p), (a,0). The exact hit at X == p is
// special-cased so marked points map exactly in floating point.
double tent_s(double X, double a, double p, double q) {
    if (X == p) return q - p;
    if (X < p) return (q - p) * ((X + a) / (p + a));
    return (q - p) * ((a - X) / (a - p));
}

double tent_s_slope(double X, double a, double p, double q) {
    // Kink convention: X == p uses the right branch.
    if (X < p) return (q - p) / (p + a);
    return (q - p) / (p - a);
}

double local_tau(double Y, double b) { return 1.0 - std::abs(Y) / b; }

struct Partials {
    double ux, uy, vx, vy;  // d(new x, new y) / d(x, y), global frame
};

Partials partials_at(const TentSlide& t, const LocalFrame& f) {
    const double sp = tent_s_slope(f.X, f.a, t.p, t.q);
    const double tau = local_tau(f.Y, f.b);
    // Transverse crease convention: symmetric value 0 at Y == 0.
    double taup = 0.0;
    if (f.Y > 0.0)
        taup = -1.0 / f.b;
    else if (f.Y < 0.0)
        taup = 1.0 / f.b;
    const double U_X = 1.0 + sp * tau;
    const double U_Y = tent_s(f.X, f.a, t.p, t.q) * taup;
    if (t.axis == Axis::Horizontal) return {U_X, U_Y, 0.0, 1.0};
    return {1.0, 0.0, U_Y, U_X};
}

BeltramiSample sample_from_partials(Point at, const Partials& d) {
    const std::complex<double> fz{0.5 * (d.ux + d.vy), 0.5 * (d.vx - d.uy)};
    const std::complex<double> fzb{0.5 * (d.ux - d.vy), 0.5 * (d.vx + d.uy)};
    const double n = std::abs(fz);
    const double m = std::abs(fzb);
    if (n <= m)
        throw CheckError("tent_beltrami: degenerate Jacobian (|f_z| <= |f_zbar|)");
    BeltramiSample s;
    s.at = at;
    s.mu = fzb / fz;
    s.k_local = (n + m) / (n - m);
    return s;
}

// k_local from one-sided branch data, used by the dilatation candidate scan.
double k_from(double U_X, double U_Y) {
    const double fz = std::hypot(U_X + 1.0, U_Y);
    const double fzb = std::hypot(U_X - 1.0, U_Y);
    return (fz + fzb) / (fz - fzb);
}

}  // namespace

TentSlide make_tent(Rect rect, Axis axis, double p, double q) {
    if (!(rect.hw > 0.0) || !(rect.hh > 0.0) || !std::isfinite(rect.hw) ||
        !std::isfinite(rect.hh) || !std::isfinite(rect.cx) || !std::isfinite(rect.cy))
        throw InputError("make_tent: rectangle must have positive finite extents");
    const double a = axis == Axis::Horizontal ? rect.hw : rect.hh;
    if (!(std::abs(p) < a) || !(std::abs(q) < a))
        throw InputError("make_tent: marked point and image must lie strictly inside the axis extent");
    return TentSlide{rect, axis, p, q};
}

Point tent_eval(const TentSlide& t, Point z) {
    if (!t.rect.contains_open(z)) return z;
    const LocalFrame f = to_local(t, z);
    const double U = f.X + tent_s(f.X, f.a, t.p, t.q) * local_tau(f.Y, f.b);
    return from_local(t, U, f.Y);
}

Point tent_inverse(const TentSlide& t, Point w) {
    if (!t.rect.contains_open(w)) return w;
    const LocalFrame f = to_local(t, w);
    const double tau = local_tau(f.Y, f.b);
    const double at_kink = t.p + (t.q - t.p) * tau;  // image of X = p on this line
    double X;
    if (f.X == at_kink) {
        X = t.p;
    } else if (f.X < at_kink) {
        const double sl = (t.q - t.p) / (t.p + f.a);
        X = (f.X - sl * f.a * tau) / (1.0 + sl * tau);
    } else {
        const double sr = (t.q - t.p) / (t.p - f.a);
        X = (f.X + sr * f.a * tau) / (1.0 + sr * tau);
    }
    return from_local(t, X, f.Y);
}

BeltramiSample tent_beltrami(const TentSlide& t, Point z) {
    if (!t.rect.contains_open(z))
        throw InputError("tent_beltrami: point outside the open rectangle");
    return sample_from_partials(z, partials_at(t, to_local(t, z)));
}

double tent_dilatation(const TentSlide& t, int grid) {
    const double a = t.axis_half();
    const double b = t.transverse_half();
    double best = 1.0;

    // Branch corners, one-sided data. On each of the four branch
    // sub-rectangles u_x = 1 + s'*tau with tau in {0,1} at the transverse
    // corners and u_y = s(X)*tau' with s at the axis corners; both vary
    // monotonically in between, so corners dominate.
    const double slopes[2] = {(t.q - t.p) / (t.p + a), (t.q - t.p) / (t.p - a)};
    const double s_peak = t.q - t.p;  // s at X = p; s = 0 at X = +-a
    for (double sp : slopes) {
        for (double taup : {-1.0 / b, 1.0 / b}) {
            for (double tau : {0.0, 1.0}) {
                for (double s : {0.0, s_peak}) {
                    best = std::max(best, k_from(1.0 + sp * tau, s * taup));
                }
            }
        }
    }

    // Dense grid refinement (cannot exceed the corner max; kept as a guard
    // against the analysis above going stale if the primitive changes).
    for (int i = 0; i < grid; ++i) {
        const double X = -a + (i + 0.5) * (2.0 * a / grid);
        const double s = tent_s(X, a, t.p, t.q);
        const double sp = tent_s_slope(X, a, t.p, t.q);
        for (int j = 0; j < grid; ++j) {
            const double Y = -b + (j + 0.5) * (2.0 * b / grid);
            const double tau = local_tau(Y, b);
            const double taup = Y >= 0.0 ? -1.0 / b : 1.0 / b;
            best = std::max(best, k_from(1.0 + sp * tau, s * taup));
        }
    }
    return best;
}

}  // namespace qcx
