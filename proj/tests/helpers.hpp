#pragma once

// Shared shape generators and small file utilities for the test suites.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "shapetree/shapetree.hpp"

namespace testutil {

using shapetree::SampledBoundary;
using shapetree::Vec2;
using shapetree::pi;

// Closed curve from a polar radius function, densified at m angles.
inline SampledBoundary radial_shape(const std::function<double(double)>& r, std::size_t m = 600) {
    std::vector<Vec2> pts;
    pts.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double t = 2.0 * pi * static_cast<double>(k) / static_cast<double>(m);
        pts.push_back({r(t) * std::cos(t), r(t) * std::sin(t)});
    }
    return shapetree::finalize_boundary(std::move(pts));
}

// Smooth star-shaped blob whose centroid-distance profile has a unique
// absolute maximum: one dominant first harmonic plus small higher ones.
inline SampledBoundary random_blob(std::mt19937& rng, std::size_t m = 600) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> amp(0.0, 0.08);
    const double psi1 = phase(rng);
    std::array<double, 4> a{}, psi{};
    for (std::size_t h = 0; h < 4; ++h) {
        a[h] = amp(rng);
        psi[h] = phase(rng);
    }
    return radial_shape(
        [=](double t) {
            double r = 1.0 + 0.45 * std::cos(t + psi1);
            for (std::size_t h = 0; h < 4; ++h)
                r += a[h] * std::cos(static_cast<double>(h + 2) * t + psi[h]);
            return r;
        },
        m);
}

// L-fold symmetric blob: L equal absolute maxima of the centroid distance.
inline SampledBoundary symmetric_blob(int order, double t0, std::size_t m = 600) {
    return radial_shape(
        [=](double t) { return 1.0 + 0.35 * std::cos(order * (t - t0)); }, m);
}

// Convex loop built from its radius-of-curvature profile over the tangent
// angle: a narrow dip at phi = pi produces one strong curvature peak, and a
// wide shallow counterweight at phi = 0 restores closure (its first Fourier
// moment exactly cancels the dip's). The counterweight shows up as a gentle
// curvature hump about 5% of the range tall, so a flatness tolerance around
// 0.15 sees a single maximum while a tight one resolves two.
inline SampledBoundary single_peak_loop(std::size_t m = 720) {
    const double p = 0.6, W = 0.2;
    const double eps = 2.0 * p * std::sin(W) * pi / (pi * pi - W * W);
    auto rho = [&](double phi) {
        const double d = std::remainder(phi - pi, 2.0 * pi);
        double v = 1.0 - 0.5 * eps * (1.0 + std::cos(phi));
        if (std::abs(d) <= W) {
            const double c = std::cos(pi * d / (2.0 * W));
            v -= p * c * c;
        }
        return v;
    };
    std::vector<Vec2> pts;
    pts.reserve(m);
    double x = 0.0, y = 0.0;
    pts.push_back({x, y});
    const int sub = 64;
    for (std::size_t j = 1; j < m; ++j) {
        const double a = 2.0 * pi * static_cast<double>(j - 1) / static_cast<double>(m);
        const double h = 2.0 * pi / static_cast<double>(m) / sub;
        for (int q = 0; q < sub; ++q) {
            const double p0 = a + q * h, p2 = p0 + h, p1 = 0.5 * (p0 + p2);
            x += h / 6.0 *
                 (rho(p0) * std::cos(p0) + 4.0 * rho(p1) * std::cos(p1) + rho(p2) * std::cos(p2));
            y += h / 6.0 *
                 (rho(p0) * std::sin(p0) + 4.0 * rho(p1) * std::sin(p1) + rho(p2) * std::sin(p2));
        }
        pts.push_back({x, y});
    }
    return shapetree::finalize_boundary(std::move(pts));
}

// Axis-aligned square of half-side h with per-corner fillet radii, built CCW
// from (h, -(h - rc[0])): right edge, then corners in CCW order starting at
// the top-right. Corner k uses rc[k]: 0 top-right, 1 top-left, 2 bottom-left,
// 3 bottom-right.
inline SampledBoundary rounded_square(double h, const std::array<double, 4>& rc,
                                      std::size_t per_edge = 60, std::size_t per_arc = 40) {
    std::vector<Vec2> pts;
    auto edge = [&](Vec2 p0, Vec2 p1) {
        for (std::size_t k = 0; k < per_edge; ++k) {
            const double u = static_cast<double>(k) / static_cast<double>(per_edge);
            pts.push_back({p0.x + (p1.x - p0.x) * u, p0.y + (p1.y - p0.y) * u});
        }
    };
    auto arc = [&](Vec2 c, double r, double a0, double a1) {
        for (std::size_t k = 0; k < per_arc; ++k) {
            const double a = a0 + (a1 - a0) * static_cast<double>(k) / static_cast<double>(per_arc);
            pts.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
        }
    };
    const double g0 = h - rc[0], g1 = h - rc[1], g2 = h - rc[2], g3 = h - rc[3];
    edge({h, -g3}, {h, g0});
    arc({g0, g0}, rc[0], 0.0, pi / 2.0);
    edge({g0, h}, {-g1, h});
    arc({-g1, g1}, rc[1], pi / 2.0, pi);
    edge({-h, g1}, {-h, -g2});
    arc({-g2, -g2}, rc[2], pi, 1.5 * pi);
    edge({-g2, -h}, {g3, -h});
    arc({g3, -g3}, rc[3], 1.5 * pi, 2.0 * pi);
    return shapetree::finalize_boundary(std::move(pts));
}

inline SampledBoundary rounded_square(double h = 1.0, double rc = 0.3) {
    return rounded_square(h, {rc, rc, rc, rc});
}

// Regular polygon with vertices on a unit circumcircle, first vertex at angle
// pi/2, edges densified symmetrically around each vertex.
inline SampledBoundary regular_polygon(int sides, std::size_t per_edge = 120) {
    std::vector<Vec2> pts;
    for (int i = 0; i < sides; ++i) {
        const double a0 = pi / 2.0 + 2.0 * pi * i / sides;
        const double a1 = pi / 2.0 + 2.0 * pi * (i + 1) / sides;
        const Vec2 v0{std::cos(a0), std::sin(a0)};
        const Vec2 v1{std::cos(a1), std::sin(a1)};
        for (std::size_t k = 0; k < per_edge; ++k) {
            const double u = static_cast<double>(k) / static_cast<double>(per_edge);
            pts.push_back({v0.x + (v1.x - v0.x) * u, v0.y + (v1.y - v0.y) * u});
        }
    }
    return shapetree::finalize_boundary(std::move(pts));
}

// A generic convex octagon with no symmetries; vertex list fixed so tests are
// deterministic. Returned as the bare 8 vertices.
inline std::vector<Vec2> octagon_vertices() {
    return {{2.1, 0.0},  {1.6, 1.4},  {0.3, 2.0},  {-1.2, 1.7},
            {-2.0, 0.4}, {-1.7, -1.1}, {-0.4, -1.9}, {1.2, -1.6}};
}

inline std::string to_csv(const std::vector<Vec2>& pts) {
    std::string out = "x,y\n";
    char buf[64];
    for (const Vec2& p : pts) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
        out += buf;
    }
    return out;
}

inline std::string to_csv(const SampledBoundary& b) { return to_csv(b.points); }

// Fresh scratch directory under the system temp root.
inline std::filesystem::path temp_dir(const std::string& tag) {
    static std::mt19937_64 rng{std::random_device{}()};
    const auto base = std::filesystem::temp_directory_path();
    for (;;) {
        auto p = base / (tag + "_" + std::to_string(rng()));
        if (std::filesystem::create_directories(p)) return p;
    }
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Curvature of a polar curve r(t) with derivatives, for oracle comparisons:
// kappa = (r^2 + 2 r'^2 - r r'') / (r^2 + r'^2)^{3/2}, positive for CCW.
inline double polar_curvature(double r, double dr, double ddr) {
    const double num = r * r + 2.0 * dr * dr - r * ddr;
    return num / std::pow(r * r + dr * dr, 1.5);
}

}  // namespace testutil
