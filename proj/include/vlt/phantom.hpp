#pragma once

#include <string>

#include "vlt/grid.hpp"

namespace vlt {

/// Compactly supported C^2 bump a * (1 - rho^2)^3 with rho = |x - center| / scale.
struct Bump {
    Vec2 center;
    double scale = 1.0;
    double amplitude = 1.0;

    double value(Vec2 x) const;
    Vec2 gradient(Vec2 x) const;
    double laplacian(Vec2 x) const;
};

enum class PhantomKind { potential, solenoidal, mixed };

PhantomKind parse_phantom_kind(const std::string& name);
std::string to_string(PhantomKind kind);

/// Sampled test field together with closed-form oracle fields.
struct Phantom {
    VectorField field;
    ScalarField div;
    ScalarField curl;
    ScalarField potential;  ///< V in f = grad V + ..., zero when absent.
    ScalarField stream;     ///< W in f = ... + (grad W)^perp, zero when absent.
};

/// f = grad V for V = bump.
Phantom potential_phantom(const Bump& bump, const Grid2D& grid);
/// f = (grad W)^perp for W = bump.
Phantom solenoidal_phantom(const Bump& bump, const Grid2D& grid);
/// Sum of a potential and a solenoidal phantom.
Phantom mixed_phantom(const Bump& potential, const Bump& stream, const Grid2D& grid);

/// Mixed phantoms built from (center, scale) place the potential bump at
/// center + 0.4 scale e and the stream bump at center - 0.4 scale e, with
/// e = (cos 30deg, sin 30deg) and both scales 0.6 scale. Both supports stay
/// inside the disc of radius `scale` about `center`.
Phantom make_phantom(PhantomKind kind, Vec2 center, double scale, const Grid2D& grid, double amplitude = 1.0);

/// The scalar bump itself, sampled on the grid.
ScalarField sample_bump(const Bump& bump, const Grid2D& grid);

/// Throws ConfigError unless the bump support lies inside the closed r1-disc.
void check_support(const Bump& bump, const Grid2D& grid);

}  // namespace vlt
