#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "shapetree/core.hpp"

namespace shapetree {

// Closed polyline boundary of a shape, stored counter-clockwise.
// cum_arc[i] is the chord-length distance from points[0] to points[i] along
// the polyline; the closing chord back to points[0] is implicit.
struct SampledBoundary {
    std::vector<Vec2> points;
    std::vector<double> cum_arc;
    bool closed = true;

    std::size_t size() const { return points.size(); }

    double total_length() const {
        return cum_arc.back() + distance(points.back(), points.front());
    }
};

// Signed curvature at each boundary point, in units of 1/length.
// Positive on convex arcs of a counter-clockwise boundary.
struct CurvatureProfile {
    std::vector<double> values;
};

namespace detail {

inline double polygon_signed_area(const std::vector<Vec2>& pts) {
    double twice_area = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % pts.size()];
        twice_area += cross(a, b);
    }
    return 0.5 * twice_area;
}

// Drop consecutive duplicates, including a trailing repeat of the first point.
inline std::vector<Vec2> collapse_duplicates(std::vector<Vec2> pts) {
    constexpr double eps2 = 1e-24;
    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (const Vec2& p : pts) {
        if (out.empty() || squared_norm(p - out.back()) > eps2) out.push_back(p);
    }
    while (out.size() > 1 && squared_norm(out.back() - out.front()) <= eps2) out.pop_back();
    return out;
}

}  // namespace detail

// Normalize a raw closed point sequence into a SampledBoundary: collapse
// duplicate consecutive points, force counter-clockwise orientation (keeping
// the first point first), and accumulate chord arc lengths.
inline SampledBoundary finalize_boundary(std::vector<Vec2> pts) {
    pts = detail::collapse_duplicates(std::move(pts));
    if (pts.size() < 3)
        throw DegenerateShapeError("boundary needs at least 3 distinct points, got " +
                                   std::to_string(pts.size()));

    const double area = detail::polygon_signed_area(pts);
    const double scale = [&] {
        double m = 0.0;
        for (const Vec2& p : pts) m = std::max(m, std::max(std::abs(p.x), std::abs(p.y)));
        return std::max(m, 1.0);
    }();
    if (std::abs(area) < 1e-14 * scale * scale)
        throw DegenerateShapeError("boundary encloses zero area (collinear points?)");
    if (area < 0.0) std::reverse(pts.begin() + 1, pts.end());

    SampledBoundary b;
    b.points = std::move(pts);
    b.cum_arc.resize(b.points.size());
    b.cum_arc[0] = 0.0;
    for (std::size_t i = 1; i < b.points.size(); ++i)
        b.cum_arc[i] = b.cum_arc[i - 1] + distance(b.points[i], b.points[i - 1]);
    return b;
}

// Read the point-list CSV format: header "x,y", then one "x,y" row per point.
// Rows are ordered along the contour; the last point connects back to the first.
inline SampledBoundary parse_boundary(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string{};
        const auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    };

    if (!std::getline(in, line)) throw ParseError("line 1: empty input, expected header \"x,y\"");
    ++line_no;
    if (trim(line) != "x,y")
        throw ParseError("line 1: expected header \"x,y\", got \"" + trim(line) + "\"");

    std::vector<Vec2> pts;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = trim(line);
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (comma == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected \"x,y\", got \"" + row + "\"");
        try {
            std::size_t used = 0;
            const std::string xs = trim(row.substr(0, comma));
            const std::string ys = trim(row.substr(comma + 1));
            const double x = std::stod(xs, &used);
            if (used != xs.size()) throw std::invalid_argument(xs);
            const double y = std::stod(ys, &used);
            if (used != ys.size()) throw std::invalid_argument(ys);
            pts.push_back({x, y});
        } catch (const std::logic_error&) {
            throw ParseError("line " + std::to_string(line_no) + ": malformed number in \"" + row + "\"");
        }
    }
    return finalize_boundary(std::move(pts));
}

inline SampledBoundary parse_boundary(const std::string& text) {
    std::istringstream in(text);
    return parse_boundary(in);
}

inline double total_arc_length(const SampledBoundary& b) { return b.total_length(); }

// Area centroid of the enclosed polygon (shoelace weighted), not the vertex mean.
inline Vec2 centroid(const SampledBoundary& b) {
    double twice_area = 0.0;
    Vec2 acc{0.0, 0.0};
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Vec2& p = b.points[i];
        const Vec2& q = b.points[(i + 1) % b.size()];
        const double c = cross(p, q);
        twice_area += c;
        acc += (p + q) * c;
    }
    if (std::abs(twice_area) < 1e-300)
        throw DegenerateShapeError("centroid undefined: zero enclosed area");
    return acc / (3.0 * twice_area);
}

// Point at arc length s along the boundary (linear interpolation between
// polyline vertices, wrapping past the closing chord).
inline Vec2 point_at_arc(const SampledBoundary& b, double s) {
    const double st = b.total_length();
    s = std::fmod(s, st);
    if (s < 0.0) s += st;
    // cum_arc is strictly increasing; find the segment containing s.
    const auto it = std::upper_bound(b.cum_arc.begin(), b.cum_arc.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - b.cum_arc.begin()) - 1;
    const Vec2& a = b.points[i];
    const Vec2& c = b.points[(i + 1) % b.size()];
    const double seg_start = b.cum_arc[i];
    const double seg_len = (i + 1 < b.size() ? b.cum_arc[i + 1] : st) - seg_start;
    if (seg_len <= 0.0) return a;
    const double t = (s - seg_start) / seg_len;
    return a + (c - a) * t;
}

// Resample to n points at arc lengths seed_arc + k*(s_t/n), k = 0..n-1.
// The first output point is the seed point.
inline SampledBoundary resample_uniform(const SampledBoundary& b, std::size_t n, double seed_arc) {
    if (n < 3) throw ArgumentError("resample_uniform: need n >= 3, got " + std::to_string(n));
    const double st = b.total_length();
    const double w = st / static_cast<double>(n);
    std::vector<Vec2> pts;
    pts.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        pts.push_back(point_at_arc(b, seed_arc + static_cast<double>(k) * w));

    // The source is already counter-clockwise and the samples follow increasing
    // arc length, so the result is counter-clockwise by construction.
    SampledBoundary out;
    out.points = std::move(pts);
    out.cum_arc.resize(n);
    out.cum_arc[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        out.cum_arc[i] = out.cum_arc[i - 1] + distance(out.points[i], out.points[i - 1]);
    return out;
}

// Discrete signed curvature kappa = (x' y'' - y' x'') / (x'^2 + y'^2)^(3/2),
// with derivatives taken w.r.t. cumulative chord arc length by central finite
// differences on the (generally non-uniform) circular grid. Second-order
// accurate on smooth curves.
inline CurvatureProfile curvature_profile(const SampledBoundary& b) {
    const std::size_t n = b.size();
    if (n < 5)
        throw DegenerateShapeError("curvature needs at least 5 boundary points, got " +
                                   std::to_string(n));

    // Segment i connects point i to point i+1 (mod n).
    std::vector<double> seg(n);
    for (std::size_t i = 0; i < n; ++i)
        seg[i] = distance(b.points[(i + 1) % n], b.points[i]);

    CurvatureProfile prof;
    prof.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n;
        const std::size_t next = (i + 1) % n;
        const double h1 = seg[prev];  // arc step behind
        const double h2 = seg[i];     // arc step ahead
        const double denom = h1 * h2 * (h1 + h2);
        if (denom <= 0.0)
            throw DegenerateShapeError("curvature: repeated boundary points at index " +
                                       std::to_string(i));
        const Vec2 fwd = b.points[next] - b.points[i];
        const Vec2 back = b.points[i] - b.points[prev];
        const double dx = (h1 * h1 * fwd.x + h2 * h2 * back.x) / denom;
        const double dy = (h1 * h1 * fwd.y + h2 * h2 * back.y) / denom;
        const double ddx = 2.0 * (h1 * fwd.x - h2 * back.x) / denom;
        const double ddy = 2.0 * (h1 * fwd.y - h2 * back.y) / denom;
        const double speed2 = dx * dx + dy * dy;
        prof.values[i] = (dx * ddy - dy * ddx) / (speed2 * std::sqrt(speed2));
    }
    return prof;
}

// Linear interpolation of a per-point profile at arc length s (circular).
inline double curvature_at_arc(const SampledBoundary& b, const CurvatureProfile& prof, double s) {
    const double st = b.total_length();
    s = std::fmod(s, st);
    if (s < 0.0) s += st;
    const auto it = std::upper_bound(b.cum_arc.begin(), b.cum_arc.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - b.cum_arc.begin()) - 1;
    const std::size_t j = (i + 1) % b.size();
    const double seg_start = b.cum_arc[i];
    const double seg_len = (i + 1 < b.size() ? b.cum_arc[i + 1] : st) - seg_start;
    if (seg_len <= 0.0) return prof.values[i];
    const double t = (s - seg_start) / seg_len;
    return prof.values[i] + (prof.values[j] - prof.values[i]) * t;
}

// Ellipse boundary x = a cos(theta), y = b sin(theta), sampled at uniformly
// spaced theta. Full ellipse: theta in [0, 2pi). Half ellipse: theta in
// [-pi/2, pi/2] inclusive, the open arc closed by the chord between the
// endpoints (0, -b) and (0, b); this variant exists for the curvature
// experiments and is not a good general-purpose boundary.
inline SampledBoundary make_ellipse(double a, double b, std::size_t n, bool half = false) {
    if (a <= 0.0 || b <= 0.0) throw ArgumentError("make_ellipse: axes must be positive");
    if (n < 3) throw ArgumentError("make_ellipse: need n >= 3");
    std::vector<Vec2> pts;
    pts.reserve(n);
    if (half) {
        for (std::size_t k = 0; k < n; ++k) {
            const double theta = -pi / 2.0 + pi * static_cast<double>(k) / static_cast<double>(n - 1);
            pts.push_back({a * std::cos(theta), b * std::sin(theta)});
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            const double theta = 2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
            pts.push_back({a * std::cos(theta), b * std::sin(theta)});
        }
    }
    return finalize_boundary(std::move(pts));
}

inline SampledBoundary translated(const SampledBoundary& b, const Vec2& d) {
    SampledBoundary out = b;
    for (Vec2& p : out.points) p += d;
    return out;
}

// Scale about the origin, rotate, then shift; arc lengths are recomputed from
// the transformed points so the result behaves like any ingested boundary.
inline SampledBoundary transformed(const SampledBoundary& b, double scale, double phi,
                                   const Vec2& shift = {0.0, 0.0}) {
    SampledBoundary out = b;
    for (Vec2& p : out.points) p = rotated(p * scale, phi) + shift;
    out.cum_arc[0] = 0.0;
    for (std::size_t i = 1; i < out.points.size(); ++i)
        out.cum_arc[i] = out.cum_arc[i - 1] + distance(out.points[i], out.points[i - 1]);
    return out;
}

}  // namespace shapetree
