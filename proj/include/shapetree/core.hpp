#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace shapetree {

inline constexpr double pi = std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    bool operator==(const Vec2& o) const = default;
};

inline Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline double squared_norm(const Vec2& v) { return v.x * v.x + v.y * v.y; }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

// Angle of a vector w.r.t. the positive x-axis, in (-pi, pi].
inline double angle_of(const Vec2& v) {
    double a = std::atan2(v.y, v.x);
    if (a <= -pi) a = pi;  // atan2 can return -pi for (-x, -0.0)
    return a;
}

// Reduce an arbitrary angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * pi);
    if (a <= -pi)
        a += 2.0 * pi;
    else if (a > pi)
        a -= 2.0 * pi;
    return a;
}

inline Vec2 rotated(const Vec2& v, double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Error hierarchy. The CLI maps each family to a distinct exit code, so new
// error types should subclass one of these rather than Error directly.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user input: malformed files, invalid parameter combinations.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

struct ArgumentError : Error {
    explicit ArgumentError(const std::string& what) : Error(what) {}
};

// The input shape cannot support the requested computation (too few points,
// zero area, constant profiles, ...).
struct DegenerateShapeError : Error {
    explicit DegenerateShapeError(const std::string& what) : Error(what) {}
};

struct NoExtremaError : DegenerateShapeError {
    explicit NoExtremaError(const std::string& what) : DegenerateShapeError(what) {}
};

struct TraceError : DegenerateShapeError {
    explicit TraceError(const std::string& what) : DegenerateShapeError(what) {}
};

// Two shapes cannot be aligned under the chosen sampling method.
struct AlignmentError : Error {
    explicit AlignmentError(const std::string& what) : Error(what) {}
};

// A spectral ratio was requested at a frequency where the denominator vanishes.
struct UnstableFrequencyError : Error {
    explicit UnstableFrequencyError(const std::string& what) : Error(what) {}
};

// Numerical routine could not reach the requested tolerance.
struct AccuracyError : Error {
    explicit AccuracyError(const std::string& what) : Error(what) {}
};

}  // namespace shapetree
