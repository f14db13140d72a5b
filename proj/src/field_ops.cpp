#include "vlt/field_ops.hpp"

#include "vlt/error.hpp"
#include "vlt/parallel.hpp"

namespace vlt {

namespace {

void require_same(const Grid2D& a, const Grid2D& b) {
    if (!a.same_lattice(b)) throw ConfigError("fields live on different grids");
}

}  // namespace

ScalarField partial_x(const ScalarField& h) {
    const Grid2D& g = h.grid();
    ScalarField out(g);
    const double inv2h = 1.0 / (2.0 * g.h);
    par::for_each(g.ny, [&](std::ptrdiff_t jj) {
        const int j = static_cast<int>(jj);
        const int n = g.nx;
        out(0, j) = (-3.0 * h(0, j) + 4.0 * h(1, j) - h(2, j)) * inv2h;
        for (int i = 1; i < n - 1; ++i) out(i, j) = (h(i + 1, j) - h(i - 1, j)) * inv2h;
        out(n - 1, j) = (3.0 * h(n - 1, j) - 4.0 * h(n - 2, j) + h(n - 3, j)) * inv2h;
    });
    return out;
}

ScalarField partial_y(const ScalarField& h) {
    const Grid2D& g = h.grid();
    ScalarField out(g);
    const double inv2h = 1.0 / (2.0 * g.h);
    const int n = g.ny;
    par::for_each(g.ny, [&](std::ptrdiff_t jj) {
        const int j = static_cast<int>(jj);
        for (int i = 0; i < g.nx; ++i) {
            double d;
            if (j == 0)
                d = -3.0 * h(i, 0) + 4.0 * h(i, 1) - h(i, 2);
            else if (j == n - 1)
                d = 3.0 * h(i, n - 1) - 4.0 * h(i, n - 2) + h(i, n - 3);
            else
                d = h(i, j + 1) - h(i, j - 1);
            out(i, j) = d * inv2h;
        }
    });
    return out;
}

ScalarField directional_derivative(const ScalarField& h, Vec2 d) {
    ScalarField dx = partial_x(h);
    const ScalarField dy = partial_y(h);
    for (std::size_t k = 0; k < dx.values().size(); ++k) dx[k] = d.x * dx[k] + d.y * dy[k];
    return dx;
}

VectorField gradient(const ScalarField& h) { return VectorField(partial_x(h), partial_y(h)); }

ScalarField divergence(const VectorField& f) { return partial_x(f.f1) + partial_y(f.f2); }

ScalarField curl(const VectorField& f) { return partial_x(f.f2) - partial_y(f.f1); }

ScalarField laplacian(const ScalarField& h) {
    const Grid2D& g = h.grid();
    ScalarField out(g);
    const double inv = 1.0 / (g.h * g.h);
    par::for_each(g.ny - 2, [&](std::ptrdiff_t jj) {
        const int j = static_cast<int>(jj) + 1;
        for (int i = 1; i < g.nx - 1; ++i)
            out(i, j) = (h(i + 1, j) + h(i - 1, j) + h(i, j + 1) + h(i, j - 1) - 4.0 * h(i, j)) * inv;
    });
    return out;
}

std::pair<ScalarField, ScalarField> laplacians_from_div_curl(const ScalarField& d, const ScalarField& c) {
    require_same(d.grid(), c.grid());
    return {partial_x(d) - partial_y(c), partial_y(d) + partial_x(c)};
}

ScalarField composed_directional(const ScalarField& h, Vec2 u, Vec2 v) {
    return directional_derivative(directional_derivative(h, v), u);
}

ScalarField mixed_directional(const ScalarField& h, Vec2 u, Vec2 v) {
    const Grid2D& g = h.grid();
    ScalarField out = composed_directional(h, u, v);
    const double cxx = u.x * v.x;
    const double cxy = u.x * v.y + u.y * v.x;
    const double cyy = u.y * v.y;
    const double inv = 1.0 / (g.h * g.h);
    par::for_each(g.ny - 2, [&](std::ptrdiff_t jj) {
        const int j = static_cast<int>(jj) + 1;
        for (int i = 1; i < g.nx - 1; ++i) {
            const double c = h(i, j);
            const double hxx = h(i + 1, j) - 2.0 * c + h(i - 1, j);
            const double hyy = h(i, j + 1) - 2.0 * c + h(i, j - 1);
            const double hxy = 0.25 * (h(i + 1, j + 1) - h(i + 1, j - 1) - h(i - 1, j + 1) + h(i - 1, j - 1));
            out(i, j) = (cxx * hxx + cxy * hxy + cyy * hyy) * inv;
        }
    });
    return out;
}

}  // namespace vlt
