#include "vlt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vlt/error.hpp"

namespace vlt {

namespace {

double ratio(double num, double den) {
    if (den > 0.0) return num / den;
    return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

ErrorNorms error_norms(const ScalarField& value, const ScalarField& reference, double radius) {
    const Grid2D& g = value.grid();
    if (!g.same_lattice(reference.grid())) throw ConfigError("field and reference live on different grids");
    const double r2 = radius * radius;
    double e1 = 0, e2 = 0, einf = 0, r1 = 0, rr2 = 0, rinf = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 p = g.point(i, j);
            if (dot(p, p) >= r2) continue;
            const double e = std::abs(value(i, j) - reference(i, j));
            const double r = std::abs(reference(i, j));
            e1 += e;
            e2 += e * e;
            einf = std::max(einf, e);
            r1 += r;
            rr2 += r * r;
            rinf = std::max(rinf, r);
        }
    const double cell = g.h * g.h;
    ErrorNorms n;
    n.abs_l1 = e1 * cell;
    n.abs_l2 = std::sqrt(e2 * cell);
    n.abs_linf = einf;
    n.rel_l1 = ratio(e1, r1);
    n.rel_l2 = ratio(std::sqrt(e2), std::sqrt(rr2));
    n.rel_linf = ratio(einf, rinf);
    return n;
}

double relative_l2(const ScalarField& value, const ScalarField& reference, double radius) {
    return error_norms(value, reference, radius).rel_l2;
}

double relative_l2(const VectorField& value, const VectorField& reference, double radius) {
    const Grid2D& g = value.grid();
    if (!g.same_lattice(reference.grid())) throw ConfigError("field and reference live on different grids");
    const double r2 = radius * radius;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 p = g.point(i, j);
            if (dot(p, p) >= r2) continue;
            const double a = value.f1(i, j) - reference.f1(i, j);
            const double b = value.f2(i, j) - reference.f2(i, j);
            num += a * a + b * b;
            den += reference.f1(i, j) * reference.f1(i, j) + reference.f2(i, j) * reference.f2(i, j);
        }
    return ratio(std::sqrt(num), std::sqrt(den));
}

double max_abs(const ScalarField& value) { return value.max_abs(); }

}  // namespace vlt
