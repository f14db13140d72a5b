#include "vlt/reference.hpp"

#include <cmath>
#include <array>
#include <numbers>
#include <vector>

#include "vlt/error.hpp"

namespace vlt::reference {

double divergent_beam(const ScalarField& h, Vec2 x, Vec2 d, double step, bool moment) {
    const Grid2D& g = h.grid();
    const double t_end = norm(x) + g.r1 + 2.0 * g.h;
    double s = 0.0;
    for (long k = 0;; ++k) {
        const double t = (static_cast<double>(k) + 0.5) * step;
        if (t > t_end) break;
        const double v = h.sample(Vec2{x.x + t * d.x, x.y + t * d.y});
        s += moment ? t * v : v;
    }
    return s * step;
}

ScalarField beam_field(const ScalarField& h, Vec2 d, double step, bool moment) {
    const Grid2D& g = h.grid();
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out(i, j) = divergent_beam(h, g.point(i, j), d, step, moment);
    return out;
}

TransformField forward_L(const VectorField& f, const VLineGeometry& g, double step) {
    const Vec2 u = g.u(), v = g.v();
    ScalarField a = beam_field(project(f, u), u, step);
    ScalarField b = beam_field(project(f, v), v, step);
    return TransformField(TransformKind::L, b - a);
}

TransformField forward_T(const VectorField& f, const VLineGeometry& g, double step) {
    const Vec2 u = g.u(), v = g.v();
    ScalarField a = beam_field(project(f, perp(u)), u, step);
    ScalarField b = beam_field(project(f, perp(v)), v, step);
    return TransformField(TransformKind::T, b - a);
}

Sinogram radon_forward(const ScalarField& h, const RadonOptions& opt) {
    const Grid2D& g = h.grid();
    Sinogram sg = make_sinogram(g, opt);
    const double step = opt.step > 0.0 ? opt.step : 0.5 * g.h;
    const auto kmax = static_cast<long>(std::ceil((g.r2 + 2.0 * g.h) / step));
    for (int a = 0; a < sg.n_angles; ++a) {
        const Vec2 psi = Direction::from_angle(sg.angle(a)).vec();
        const Vec2 along = perp(psi);
        for (int k = 0; k < sg.n_offsets; ++k) {
            const Vec2 base = psi * sg.offset(k);
            double s = 0.0;
            for (long m = -kmax; m <= kmax; ++m) {
                const double t = static_cast<double>(m) * step;
                s += h.sample(Vec2{base.x + t * along.x, base.y + t * along.y});
            }
            sg.at(0, a, k) = s * step;
        }
    }
    return sg;
}

ScalarField solve_free_space_direct(const ScalarField& rhs) {
    const Grid2D& g = rhs.grid();
    std::vector<std::array<int, 2>> src;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (rhs(i, j) != 0.0) src.push_back({i, j});
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double s = 0.0;
            for (const auto& [si, sj] : src) s += free_space_weight(i - si, j - sj, g.h) * rhs(si, sj);
            out(i, j) = s;
        }
    return out;
}

ScalarField fbp_inverse_direct(const Sinogram& sg, const Grid2D& grid, int comp) {
    if (sg.n_angles < 16) throw ConfigError("filtered backprojection needs at least 16 angles");
    const int n = sg.n_offsets;
    std::vector<double> filtered(static_cast<std::size_t>(sg.n_angles) * n, 0.0);
    for (int a = 0; a < sg.n_angles; ++a)
        for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int m = 0; m < n; ++m) s += ramlak_kernel(k - m, sg.ds) * sg.at(comp, a, m);
            filtered[static_cast<std::size_t>(a) * n + k] = s * sg.ds;
        }
    ScalarField out(grid);
    const double center = 0.5 * (n - 1);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const Vec2 x = grid.point(i, j);
            if (dot(x, x) > grid.r2 * grid.r2) continue;
            double sum = 0.0;
            for (int a = 0; a < sg.n_angles; ++a) {
                const double pos = dot(x, Direction::from_angle(sg.angle(a)).vec()) / sg.ds + center;
                if (!(pos >= 0.0 && pos <= n - 1)) continue;
                const int k = std::min(static_cast<int>(pos), n - 2);
                const double t = pos - k;
                const double* row = filtered.data() + static_cast<std::size_t>(a) * n;
                sum += row[k] + t * (row[k + 1] - row[k]);
            }
            out(i, j) = sum * std::numbers::pi / sg.n_angles;
        }
    return out;
}

}  // namespace vlt::reference
