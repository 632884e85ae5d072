#pragma once

#include "qcx/geometry.hpp"

namespace qcx {

enum class Axis { Horizontal, Vertical };

// Piecewise-affine shear supported on an open rectangle. Along the slide axis
// the coordinate X (relative to the rectangle center) is deformed to
//
//     X + s(X) * (1 - |Y|/b)
//
// where Y is the transverse offset, b the transverse half-extent, and s is the
// piecewise-linear tent through s(-a) = 0, s(p) = q - p, s(a) = 0. The
// transverse coordinate is untouched. The map is the identity outside the
// rectangle and on its boundary, carries the marked axis point p to q, and is
// an orientation-preserving homeomorphism of the plane.
struct TentSlide {
    Rect rect;
    Axis axis = Axis::Horizontal;
    double p = 0.0;  // marked point, offset from the center along the axis
    double q = 0.0;  // its image, same coordinates

    double axis_half() const { return axis == Axis::Horizontal ? rect.hw : rect.hh; }
    double transverse_half() const { return axis == Axis::Horizontal ? rect.hh : rect.hw; }
};

// Validating factory. Requires positive finite half-extents and |p|, |q|
// strictly inside the axis extent.
TentSlide make_tent(Rect rect, Axis axis, double p, double q);

Point tent_eval(const TentSlide& t, Point z);

// Exact branchwise linear solve; inverse of tent_eval up to rounding.
Point tent_inverse(const TentSlide& t, Point w);

struct BeltramiSample {
    Point at;
    std::complex<double> mu;  // f_zbar / f_z
    double k_local = 1.0;     // (|f_z|+|f_zbar|) / (|f_z|-|f_zbar|)
};

// Analytic Beltrami coefficient from the closed-form partial derivatives.
// z must lie in the open rectangle. On the measure-zero kink lines the
// convention is: axis kink X = p takes the right (larger-coordinate) branch
// slope; the transverse crease Y = 0 takes the symmetric value tau' = 0, so mu
// is real there.
BeltramiSample tent_beltrami(const TentSlide& t, Point z);

// Supremum of k_local over the rectangle. The per-branch closed form is
// monotone in |u_y| and quasiconvex in u_x, so the sup is attained at a branch
// corner (evaluated with one-sided branch data); a dense grid refines the
// candidate set as belt and braces. Depends only on the half-extents and
// (p, q), not on the rectangle position or axis.
double tent_dilatation(const TentSlide& t, int grid = 256);

}  // namespace qcx
