#include "vlt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vlt/error.hpp"

namespace vlt {

VLineGeometry::VLineGeometry(Direction u, Direction v) : u_(u), v_(v) {
    if (std::abs(det()) < kMinDeterminant)
        throw GeometryError("V-line directions u and v are linearly dependent");
}

Direction VLineGeometry::w() const { return Direction::normalized(v_.vec() - u_.vec()); }

double VLineGeometry::opening_angle() const {
    return std::acos(std::clamp(dot(u_.vec(), v_.vec()), -1.0, 1.0));
}

double VLineGeometry::min_r2(double r1) const { return r1 / std::sin(0.5 * opening_angle()); }

void VLineGeometry::check_grid(const Grid2D& grid) const {
    const double need = min_r2(grid.r1);
    if (grid.r2 < need * (1.0 - 1e-12))
        throw ConfigError("grid r2 = " + std::to_string(grid.r2) + " is below the required " + std::to_string(need) +
                          " for this V-line geometry");
}

double min_pairwise_angle(std::span<const Vec2> dirs) {
    double best = std::acos(-1.0);
    for (std::size_t i = 0; i < dirs.size(); ++i)
        for (std::size_t j = i + 1; j < dirs.size(); ++j)
            best = std::min(best, std::acos(std::clamp(dot(dirs[i], dirs[j]), -1.0, 1.0)));
    return best;
}

bool ray_disc_chord(Vec2 x, Vec2 d, double radius, double& t_lo, double& t_hi) {
    const double b = dot(x, d);
    const double disc = b * b - dot(x, x) + radius * radius;
    if (!(disc > 0.0)) return false;
    const double r = std::sqrt(disc);
    t_lo = -b - r;
    t_hi = -b + r;
    return true;
}

}  // namespace vlt
