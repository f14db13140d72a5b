#include "vlt/phantom.hpp"

#include <cmath>
#include <numbers>

#include "vlt/error.hpp"

namespace vlt {

double Bump::value(Vec2 x) const {
    const Vec2 r = x - center;
    const double q = 1.0 - dot(r, r) / (scale * scale);
    return q > 0.0 ? amplitude * q * q * q : 0.0;
}

Vec2 Bump::gradient(Vec2 x) const {
    const Vec2 r = x - center;
    const double s2 = scale * scale;
    const double q = 1.0 - dot(r, r) / s2;
    if (q <= 0.0) return {};
    return r * (-6.0 * amplitude * q * q / s2);
}

double Bump::laplacian(Vec2 x) const {
    const Vec2 r = x - center;
    const double s2 = scale * scale;
    const double rho2 = dot(r, r) / s2;
    const double q = 1.0 - rho2;
    if (q <= 0.0) return 0.0;
    return 12.0 * amplitude * q * (3.0 * rho2 - 1.0) / s2;
}

PhantomKind parse_phantom_kind(const std::string& name) {
    if (name == "potential") return PhantomKind::potential;
    if (name == "solenoidal") return PhantomKind::solenoidal;
    if (name == "mixed") return PhantomKind::mixed;
    throw ConfigError("unknown phantom kind '" + name + "'");
}

std::string to_string(PhantomKind kind) {
    switch (kind) {
        case PhantomKind::potential: return "potential";
        case PhantomKind::solenoidal: return "solenoidal";
        case PhantomKind::mixed: return "mixed";
    }
    return "?";
}

void check_support(const Bump& bump, const Grid2D& grid) {
    if (!(bump.scale > 0.0)) throw ConfigError("bump scale must be positive");
    if (norm(bump.center) + bump.scale > grid.r1 * (1.0 + 1e-12))
        throw ConfigError("bump support leaks outside the support disc D1");
}

ScalarField sample_bump(const Bump& bump, const Grid2D& grid) {
    check_support(bump, grid);
    ScalarField out(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) out(i, j) = bump.value(grid.point(i, j));
    return out;
}

Phantom potential_phantom(const Bump& bump, const Grid2D& grid) {
    check_support(bump, grid);
    Phantom p{VectorField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid)};
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const Vec2 x = grid.point(i, j);
            const Vec2 g = bump.gradient(x);
            p.field.f1(i, j) = g.x;
            p.field.f2(i, j) = g.y;
            p.div(i, j) = bump.laplacian(x);
            p.potential(i, j) = bump.value(x);
        }
    return p;
}

Phantom solenoidal_phantom(const Bump& bump, const Grid2D& grid) {
    check_support(bump, grid);
    Phantom p{VectorField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid)};
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const Vec2 x = grid.point(i, j);
            const Vec2 g = perp(bump.gradient(x));
            p.field.f1(i, j) = g.x;
            p.field.f2(i, j) = g.y;
            p.curl(i, j) = bump.laplacian(x);
            p.stream(i, j) = bump.value(x);
        }
    return p;
}

Phantom mixed_phantom(const Bump& potential, const Bump& stream, const Grid2D& grid) {
    Phantom a = potential_phantom(potential, grid);
    const Phantom b = solenoidal_phantom(stream, grid);
    a.field += b.field;
    a.curl = b.curl;
    a.stream = b.stream;
    return a;
}

Phantom make_phantom(PhantomKind kind, Vec2 center, double scale, const Grid2D& grid, double amplitude) {
    const Bump whole{center, scale, amplitude};
    check_support(whole, grid);
    switch (kind) {
        case PhantomKind::potential: return potential_phantom(whole, grid);
        case PhantomKind::solenoidal: return solenoidal_phantom(whole, grid);
        case PhantomKind::mixed: {
            const double a = std::numbers::pi / 6.0;
            const Vec2 e{std::cos(a), std::sin(a)};
            const Bump pot{center + e * (0.4 * scale), 0.6 * scale, amplitude};
            const Bump str{center - e * (0.4 * scale), 0.6 * scale, amplitude};
            return mixed_phantom(pot, str, grid);
        }
    }
    throw ConfigError("unknown phantom kind");
}

}  // namespace vlt
