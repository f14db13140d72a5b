#pragma once

#include <span>
#include <vector>

#include "vlt/grid.hpp"

namespace vlt {

/// Fixed ray-direction pair (u, v) shared by every V-line.
class VLineGeometry {
public:
    static constexpr double kMinDeterminant = 1e-8;

    /// Throws GeometryError when |det2(v, u)| < 1e-8.
    VLineGeometry(Direction u, Direction v);

    const Direction& u() const { return u_; }
    const Direction& v() const { return v_; }
    /// det2(v, u) = v1 u2 - u1 v2.
    double det() const { return det2(v_.vec(), u_.vec()); }
    /// (v - u) / |v - u|.
    Direction w() const;
    /// Angle between u and v, in (0, pi).
    double opening_angle() const;
    /// Smallest data radius for which a vertex outside it sends at most one
    /// ray through the r1-disc: r1 / sin(opening_angle / 2).
    double min_r2(double r1) const;
    /// Throws ConfigError when the grid's r2 is below min_r2(grid.r1).
    void check_grid(const Grid2D& grid) const;

    std::vector<Vec2> rays() const { return {u_.vec(), v_.vec()}; }

private:
    Direction u_;
    Direction v_;
};

/// Smallest pairwise angle between directions, in [0, pi].
double min_pairwise_angle(std::span<const Vec2> dirs);

/// Chord parameters of the ray x + t d (|d| = 1) through the disc of the
/// given radius about the origin. Returns false when the line misses it.
bool ray_disc_chord(Vec2 x, Vec2 d, double radius, double& t_lo, double& t_hi);

}  // namespace vlt
