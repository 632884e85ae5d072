#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qcx/errors.hpp"
#include "qcx/gridrender.hpp"

using namespace qcx;

namespace {

size_t count_occurrences(const std::string& hay, const std::string& needle) {
    size_t n = 0;
    for (size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

const PointMap kIdentity = [](Point z) { return z; };

}  // namespace

TEST_CASE("grid spec parsing") {
    const GridSpec s = parse_grid_spec("-2:2:9,0:1.5:5");
    CHECK(s.x0 == -2.0);
    CHECK(s.x1 == 2.0);
    CHECK(s.nx == 9);
    CHECK(s.y0 == 0.0);
    CHECK(s.y1 == 1.5);
    CHECK(s.ny == 5);

    CHECK_THROWS_WITH_AS((void)parse_grid_spec("nonsense"),
                         doctest::Contains("grid spec must be"), InputError);
    CHECK_THROWS_WITH_AS((void)parse_grid_spec("0:1:4,0:1:4 extra"),
                         doctest::Contains("grid spec must be"), InputError);
    CHECK_THROWS_WITH_AS((void)parse_grid_spec("0:1:4"),
                         doctest::Contains("grid spec must be"), InputError);
    CHECK_THROWS_WITH_AS((void)parse_grid_spec("1:1:4,0:1:4"),
                         doctest::Contains("nondegenerate"), InputError);
    CHECK_THROWS_WITH_AS((void)parse_grid_spec("0:-1:4,0:1:4"),
                         doctest::Contains("nondegenerate"), InputError);
    CHECK_THROWS_WITH_AS((void)parse_grid_spec("0:1:1,0:1:4"),
                         doctest::Contains("counts must be >= 2"), InputError);
}

TEST_CASE("csv rendering walks the grid row-major") {
    GridSpec s;
    s.x0 = 0.0; s.x1 = 1.0; s.nx = 2;
    s.y0 = 0.0; s.y1 = 10.0; s.ny = 3;
    const std::string csv = render_grid_csv(kIdentity, s);
    CHECK(csv ==
          "0,0,0,0\n"
          "1,0,1,0\n"
          "0,5,0,5\n"
          "1,5,1,5\n"
          "0,10,0,10\n"
          "1,10,1,10\n");
}

TEST_CASE("csv has one row per node and round numbers print plainly") {
    const GridSpec s = parse_grid_spec("-2:2:7,-1:1:5");
    const std::string csv = render_grid_csv([](Point z) { return 2.0 * z; }, s);
    CHECK(count_occurrences(csv, "\n") == 35);

    // Every line carries four comma-separated fields.
    std::istringstream lines(csv);
    std::string line;
    size_t rows = 0;
    while (std::getline(lines, line)) {
        CHECK(count_occurrences(line, ",") == 3);
        ++rows;
    }
    CHECK(rows == 35);
    CHECK(csv.substr(0, csv.find('\n')) == "-2,-1,-4,-2");

    // Deterministic byte-for-byte.
    CHECK(render_grid_csv([](Point z) { return 2.0 * z; }, s) == csv);
}

TEST_CASE("svg structure for the identity") {
    const GridSpec s = parse_grid_spec("0:3:4,0:2:3");
    const std::vector<std::pair<int, Point>> markers{{0, Point(0.0, 0.0)},
                                                     {2, Point(2.0, 0.0)}};
    const std::string svg = render_grid_svg(kIdentity, s, markers);

    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"", 0) == 0);
    CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
    // One path per horizontal and per vertical grid line.
    CHECK(count_occurrences(svg, "<path d=\"M") == 4 + 3);
    // Source and image dot per marker.
    CHECK(count_occurrences(svg, "<circle ") == 4);
    CHECK(render_grid_svg(kIdentity, s, markers) == svg);
}

TEST_CASE("svg flips the vertical axis") {
    const GridSpec s = parse_grid_spec("0:1:2,0:1:2");
    const std::vector<std::pair<int, Point>> markers{{0, Point(0.0, 1.0)}};
    const std::string svg =
        render_grid_svg([](Point z) { return z + Point(0.0, 1.0); }, s, markers);

    // The image of the marker sits at y = 1, drawn at SVG cy = -1; the grid
    // line through y = 1 maps to y = 2, drawn at -2.
    CHECK(count_occurrences(svg, "cy=\"-1\"") == 1);
    CHECK(count_occurrences(svg, "d=\"M0 -2 L1 -2\"") == 1);
}
