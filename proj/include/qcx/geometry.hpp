#pragma once

#include <cmath>
#include <complex>

namespace qcx {

// Plane points are complex numbers throughout; real sequences embed as z = x + 0i.
using Point = std::complex<double>;

// Open axis-aligned rectangle given by center and half-extents.
struct Rect {
    double cx = 0.0;
    double cy = 0.0;
    double hw = 0.0;  // half-width  (x extent)
    double hh = 0.0;  // half-height (y extent)

    bool contains_open(Point z) const {
        return std::abs(z.real() - cx) < hw && std::abs(z.imag() - cy) < hh;
    }

    // Open-interior overlap test. Rectangles that merely share boundary
    // (abutting supports) do not overlap.
    bool overlaps_open(const Rect& o) const {
        return std::abs(cx - o.cx) < hw + o.hw && std::abs(cy - o.cy) < hh + o.hh;
    }

    double x0() const { return cx - hw; }
    double x1() const { return cx + hw; }
    double y0() const { return cy - hh; }
    double y1() const { return cy + hh; }
};

}  // namespace qcx
