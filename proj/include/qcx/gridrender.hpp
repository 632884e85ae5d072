#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qcx/geometry.hpp"

namespace qcx {

struct GridSpec {
    double x0 = 0.0, x1 = 1.0;
    int nx = 2;
    double y0 = 0.0, y1 = 1.0;
    int ny = 2;
};

// Accepts "x0:x1:nx,y0:y1:ny"; ranges must be nondegenerate, counts >= 2.
GridSpec parse_grid_spec(const std::string& text);

using PointMap = std::function<Point(Point)>;

// One "x,y,Fx,Fy" line per sample, %.12g, row-major with the y index outer.
// Exactly nx*ny rows, no header. Deterministic byte-for-byte.
std::string render_grid_csv(const PointMap& f, const GridSpec& spec);

// Image curves of the horizontal and vertical grid lines, one path element
// per line, plus markers at the given integer points and their images.
// The y axis points up (grid y is negated into SVG coordinates).
std::string render_grid_svg(const PointMap& f, const GridSpec& spec,
                            const std::vector<std::pair<int, Point>>& markers);

}  // namespace qcx
