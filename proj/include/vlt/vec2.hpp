#pragma once

#include <cmath>

namespace vlt {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Rotation by +90 degrees: (x1, x2) -> (-x2, x1).
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

/// Unit vector. Construction checks |d| = 1 to within 1e-12.
class Direction {
public:
    static constexpr double kUnitTolerance = 1e-12;

    explicit Direction(Vec2 d);
    Direction(double x, double y) : Direction(Vec2{x, y}) {}

    static Direction from_angle(double radians);
    /// Normalizes any nonzero vector.
    static Direction normalized(Vec2 d);

    constexpr Vec2 vec() const { return d_; }
    constexpr double x() const { return d_.x; }
    constexpr double y() const { return d_.y; }
    double angle() const { return std::atan2(d_.y, d_.x); }
    Direction perp() const { return Direction(vlt::perp(d_), Unchecked{}); }
    Direction operator-() const { return Direction(-d_, Unchecked{}); }

    constexpr operator Vec2() const { return d_; }

private:
    struct Unchecked {};
    constexpr Direction(Vec2 d, Unchecked) : d_(d) {}

    Vec2 d_;
};

/// v1*u2 - u1*v2, which equals u . perp(v). Argument order follows det(v, u).
constexpr double det2(Vec2 v, Vec2 u) { return v.x * u.y - u.x * v.y; }

}  // namespace vlt
