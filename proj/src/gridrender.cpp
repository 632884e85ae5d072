#include "qcx/gridrender.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qcx/errors.hpp"

namespace qcx {

namespace {

double grid_x(const GridSpec& s, int ix) {
    return s.x0 + (s.x1 - s.x0) * double(ix) / double(s.nx - 1);
}

double grid_y(const GridSpec& s, int iy) {
    return s.y0 + (s.y1 - s.y0) * double(iy) / double(s.ny - 1);
}

std::string fmt(const char* pattern, double a, double b) {
    char buf[80];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

}  // namespace

GridSpec parse_grid_spec(const std::string& text) {
    GridSpec s;
    int consumed = 0;
    const int got = std::sscanf(text.c_str(), "%lf:%lf:%d,%lf:%lf:%d%n", &s.x0, &s.x1,
                                &s.nx, &s.y0, &s.y1, &s.ny, &consumed);
    if (got != 6 || consumed != int(text.size()))
        throw InputError("grid spec must be 'x0:x1:nx,y0:y1:ny', got '" + text + "'");
    if (!(s.x0 < s.x1) || !(s.y0 < s.y1))
        throw InputError("grid spec: ranges must be nondegenerate");
    if (s.nx < 2 || s.ny < 2) throw InputError("grid spec: counts must be >= 2");
    return s;
}

std::string render_grid_csv(const PointMap& f, const GridSpec& spec) {
    std::string out;
    out.reserve(size_t(spec.nx) * size_t(spec.ny) * 48);
    char buf[200];
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix) {
            const double x = grid_x(spec, ix), y = grid_y(spec, iy);
            const Point w = f(Point(x, y));
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", x, y, w.real(),
                          w.imag());
            out += buf;
        }
    return out;
}

std::string render_grid_svg(const PointMap& f, const GridSpec& spec,
                            const std::vector<std::pair<int, Point>>& markers) {
    // Evaluate all nodes once; SVG y runs downward so image y is negated.
    std::vector<Point> img(size_t(spec.nx) * size_t(spec.ny));
    double ix0 = 1e300, ix1 = -1e300, iy0 = 1e300, iy1 = -1e300;
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix) {
            const Point w = f(Point(grid_x(spec, ix), grid_y(spec, iy)));
            img[size_t(iy) * spec.nx + ix] = w;
            ix0 = std::min(ix0, w.real());
            ix1 = std::max(ix1, w.real());
            iy0 = std::min(iy0, -w.imag());
            iy1 = std::max(iy1, -w.imag());
        }
    for (const auto& [n, w] : markers) {
        ix0 = std::min({ix0, w.real(), double(n)});
        ix1 = std::max({ix1, w.real(), double(n)});
        iy0 = std::min({iy0, -w.imag(), 0.0});
        iy1 = std::max({iy1, -w.imag(), 0.0});
    }
    const double pad = 0.05 * std::max(ix1 - ix0, iy1 - iy0) + 0.1;

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    svg += fmt("%.6g %.6g ", ix0 - pad, iy0 - pad);
    svg += fmt("%.6g %.6g\">\n", ix1 - ix0 + 2 * pad, iy1 - iy0 + 2 * pad);
    svg += "<g fill=\"none\" stroke=\"#336\" stroke-width=\"0.02\">\n";

    auto path_through = [&](auto&& node, int count) {
        std::string d;
        for (int i = 0; i < count; ++i) {
            const Point w = node(i);
            d += (i == 0) ? "M" : " L";
            d += fmt("%.6g %.6g", w.real(), -w.imag());
        }
        return "<path d=\"" + d + "\"/>\n";
    };
    for (int iy = 0; iy < spec.ny; ++iy)
        svg += path_through([&](int ix) { return img[size_t(iy) * spec.nx + ix]; },
                            spec.nx);
    for (int ix = 0; ix < spec.nx; ++ix)
        svg += path_through([&](int iy) { return img[size_t(iy) * spec.nx + ix]; },
                            spec.ny);
    svg += "</g>\n<g stroke=\"none\">\n";
    for (const auto& [n, w] : markers) {
        svg += "<circle fill=\"#999\" r=\"0.06\" cx=\"";
        svg += fmt("%.6g\" cy=\"%.6g\"/>\n", double(n), 0.0);
        svg += "<circle fill=\"#c33\" r=\"0.06\" cx=\"";
        svg += fmt("%.6g\" cy=\"%.6g\"/>\n", w.real(), -w.imag());
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace qcx
