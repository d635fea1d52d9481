#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "shapetree/shapetree.hpp"

using namespace shapetree;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

RasterImage blank(int w, int h) {
    RasterImage img;
    img.width = w;
    img.height = h;
    img.pixels.assign(static_cast<std::size_t>(w) * h, 0);
    return img;
}

void set_px(RasterImage& img, int x, int y, int v = 255) {
    img.pixels[static_cast<std::size_t>(y) * img.width + x] = v;
}

RasterImage disk(int r, int size) {
    RasterImage img = blank(size, size);
    const double c = size / 2.0;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            if ((x - c) * (x - c) + (y - c) * (y - c) <= double(r) * r) set_px(img, x, y);
    return img;
}

std::string to_p2(const RasterImage& img) {
    std::ostringstream out;
    out << "P2\n# comment line\n" << img.width << " " << img.height << "\n255\n";
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x)
            out << int(img.pixels[static_cast<std::size_t>(y) * img.width + x]) << " ";
        out << "\n";
    }
    return out.str();
}

std::string to_p5(const RasterImage& img) {
    std::ostringstream out;
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    for (const auto px : img.pixels) out.put(static_cast<char>(px));
    return out.str();
}

}  // namespace

TEST_CASE("read_pgm parses P2 with comments and P5 binary identically") {
    RasterImage img = blank(4, 3);
    set_px(img, 1, 1);
    set_px(img, 2, 1, 200);
    std::istringstream p2(to_p2(img)), p5(to_p5(img));
    const RasterImage a = read_pgm(p2);
    const RasterImage b = read_pgm(p5);
    REQUIRE(a.width == 4);
    REQUIRE(a.height == 3);
    CHECK(a.pixels == img.pixels);
    CHECK(b.pixels == img.pixels);
}

TEST_CASE("read_pgm rejects malformed input") {
    std::istringstream bad_magic("P7\n2 2\n255\n0 0 0 0\n");
    CHECK_THROWS_AS(read_pgm(bad_magic), ParseError);
    std::istringstream big_maxval("P2\n2 2\n65535\n0 0 0 0\n");
    CHECK_THROWS_AS(read_pgm(big_maxval), ParseError);
    std::istringstream truncated_p2("P2\n2 2\n255\n0 0 0\n");
    CHECK_THROWS_AS(read_pgm(truncated_p2), ParseError);
    std::istringstream truncated_p5("P5\n2 2\n255\nab");
    CHECK_THROWS_AS(read_pgm(truncated_p5), ParseError);
    std::istringstream zero_dim("P2\n0 2\n255\n");
    CHECK_THROWS_AS(read_pgm(zero_dim), ParseError);
}

TEST_CASE("foreground threshold sits strictly above 127") {
    RasterImage img = blank(5, 5);
    // A 3x3 block at value 128 is foreground; 127 elsewhere is background.
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) set_px(img, x, y, 127);
    for (int y = 1; y <= 3; ++y)
        for (int x = 1; x <= 3; ++x) set_px(img, x, y, 128);
    const SampledBoundary b = trace_raster_boundary(img);
    CHECK(b.size() == 8);  // the ring of the 3x3 block
    CHECK_THAT(b.total_length(), WithinAbs(8.0, 1e-12));

    RasterImage none = blank(3, 3);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) set_px(none, x, y, 127);
    CHECK_THROWS_WITH(trace_raster_boundary(none), ContainsSubstring("empty"));
}

TEST_CASE("tracing a filled 10x10 square yields the 36-pixel ring") {
    RasterImage img = blank(12, 12);
    for (int y = 1; y <= 10; ++y)
        for (int x = 1; x <= 10; ++x) set_px(img, x, y);
    const SampledBoundary b = trace_raster_boundary(img);

    // Brute-force count of foreground pixels with a background 4-neighbour.
    std::set<std::pair<int, int>> ring;
    for (int y = 1; y <= 10; ++y)
        for (int x = 1; x <= 10; ++x)
            if (x == 1 || x == 10 || y == 1 || y == 10) ring.insert({x, y});
    REQUIRE(ring.size() == 36);

    REQUIRE(b.size() == 36);
    CHECK_THAT(b.total_length(), WithinAbs(36.0, 1e-12));
    std::set<std::pair<int, int>> traced;
    for (const Vec2& p : b.points)
        traced.insert({static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y))});
    CHECK(traced == ring);
    CHECK(detail::polygon_signed_area(b.points) > 0.0);
}

TEST_CASE("traced contour pixels are foreground and adjacent to background") {
    const RasterImage img = disk(20, 64);
    const SampledBoundary b = trace_raster_boundary(img);
    auto fg = [&](int x, int y) {
        return img.in_bounds(x, y) &&
               img.pixels[static_cast<std::size_t>(y) * img.width + x] > 127;
    };
    std::set<std::pair<int, int>> seen;
    for (const Vec2& p : b.points) {
        const int x = static_cast<int>(std::lround(p.x));
        const int y = static_cast<int>(std::lround(p.y));
        CHECK(fg(x, y));
        bool touches_background = false;
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx)
                if (!fg(x + dx, y + dy)) touches_background = true;
        CHECK(touches_background);
        seen.insert({x, y});
    }
    CHECK(seen.size() == b.size());  // no revisits on a convex blob
}

TEST_CASE("disk centroid matches the brute-force pixel centroid within half a pixel") {
    const RasterImage img = disk(20, 64);
    double sx = 0.0, sy = 0.0;
    long count = 0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (img.pixels[static_cast<std::size_t>(y) * img.width + x] > 127) {
                sx += x;
                sy += y;
                ++count;
            }
    const SampledBoundary b = trace_raster_boundary(img);
    const Vec2 c = centroid(b);
    CHECK(std::abs(c.x - sx / count) < 0.5);
    CHECK(std::abs(c.y - sy / count) < 0.5);
}

TEST_CASE("chain-code perimeter of a digital disk carries a known systematic excess") {
    // The 8-connected chain code overestimates a circle's circumference by a
    // few percent no matter how fine the raster; lock the honest band.
    for (const int r : {50, 80}) {
        const RasterImage img = disk(r, 2 * r + 24);
        const SampledBoundary b = trace_raster_boundary(img);
        const double ratio = b.total_length() / (2.0 * pi * r);
        CHECK(ratio > 1.02);
        CHECK(ratio < 1.07);
    }
}

TEST_CASE("degenerate and invalid rasters are rejected") {
    SECTION("empty image") {
        CHECK_THROWS_WITH(trace_raster_boundary(blank(8, 8)), ContainsSubstring("empty"));
    }
    SECTION("single pixel cannot form a boundary") {
        RasterImage img = blank(3, 3);
        set_px(img, 1, 1);
        CHECK_THROWS_AS(trace_raster_boundary(img), DegenerateShapeError);
    }
    SECTION("thin two-pixel bar collapses to a degenerate polygon") {
        RasterImage img = blank(4, 3);
        set_px(img, 1, 1);
        set_px(img, 2, 1);
        CHECK_THROWS_AS(trace_raster_boundary(img), DegenerateShapeError);
    }
    SECTION("two components are reported as such") {
        RasterImage img = blank(8, 8);
        for (int y = 1; y <= 2; ++y)
            for (int x = 1; x <= 2; ++x) set_px(img, x, y);
        for (int y = 5; y <= 6; ++y)
            for (int x = 5; x <= 6; ++x) set_px(img, x, y);
        CHECK_THROWS_WITH(trace_raster_boundary(img), ContainsSubstring("components"));
    }
    SECTION("diagonal-only contact counts as separate 4-connected components") {
        RasterImage img = blank(6, 6);
        for (int y = 1; y <= 2; ++y)
            for (int x = 1; x <= 2; ++x) set_px(img, x, y);
        for (int y = 3; y <= 4; ++y)
            for (int x = 3; x <= 4; ++x) set_px(img, x, y);
        CHECK_THROWS_WITH(trace_raster_boundary(img), ContainsSubstring("components"));
    }
}

TEST_CASE("traced contours feed the sampling pipeline") {
    // Rectangle raster: centroid-distance extrema are its four corners.
    RasterImage img = blank(64, 48);
    for (int y = 10; y < 38; ++y)
        for (int x = 8; x < 56; ++x) set_px(img, x, y);
    const SampledBoundary b = trace_raster_boundary(img);
    const ExtremaSet ex = find_absolute_extrema(centroid_distance_profile(b), ExtremeKind::maxima);
    CHECK(ex.positions.size() == 4);
}
