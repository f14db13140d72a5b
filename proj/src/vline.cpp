#include "vlt/vline.hpp"

#include <cmath>

#include "vlt/error.hpp"
#include "vlt/field_ops.hpp"

namespace vlt {

namespace {

enum class Moment { zeroth, first };

// -X_u(a) + X_v(b) at every vertex.
ScalarField vline_pair(const ScalarField& a, Vec2 u, const ScalarField& b, Vec2 v, Moment m, const RayQuadrature& q) {
    if (m == Moment::zeroth) return beam_field(b, v, q) - beam_field(a, u, q);
    return moment_field(b, v, q) - moment_field(a, u, q);
}

TransformField longitudinal(const VectorField& f, const VLineGeometry& g, Moment m, TransformKind kind,
                            const RayQuadrature& q) {
    g.check_grid(f.grid());
    const Vec2 u = g.u(), v = g.v();
    return TransformField(kind, vline_pair(project(f, u), u, project(f, v), v, m, q));
}

TransformField transverse(const VectorField& f, const VLineGeometry& g, Moment m, TransformKind kind,
                          const RayQuadrature& q) {
    g.check_grid(f.grid());
    const Vec2 u = g.u(), v = g.v();
    return TransformField(kind, vline_pair(project(f, perp(u)), u, project(f, perp(v)), v, m, q));
}

void require_kind(const TransformField& t, TransformKind kind) {
    if (t.ncomp() != 1 || t.kind != kind)
        throw ConfigError("expected " + to_string(kind) + " transform data, got " + to_string(t.kind));
}

void require_pair(const TransformField& a, const TransformField& b) {
    if (!a.grid().same_lattice(b.grid())) throw ConfigError("transform data live on different grids");
}

}  // namespace

TransformField forward_L(const VectorField& f, const VLineGeometry& g, const RayQuadrature& q) {
    return longitudinal(f, g, Moment::zeroth, TransformKind::L, q);
}

TransformField forward_T(const VectorField& f, const VLineGeometry& g, const RayQuadrature& q) {
    return transverse(f, g, Moment::zeroth, TransformKind::T, q);
}

TransformField forward_I(const VectorField& f, const VLineGeometry& g, const RayQuadrature& q) {
    return longitudinal(f, g, Moment::first, TransformKind::I, q);
}

TransformField forward_J(const VectorField& f, const VLineGeometry& g, const RayQuadrature& q) {
    return transverse(f, g, Moment::first, TransformKind::J, q);
}

ScalarField recover_curl(const TransformField& Lf, const VLineGeometry& g) {
    require_kind(Lf, TransformKind::L);
    ScalarField c = mixed_directional(Lf.values(), g.u(), g.v());
    c *= 1.0 / g.det();
    return mask_to_disc(std::move(c), Lf.grid().r1);
}

ScalarField recover_div(const TransformField& Tf, const VLineGeometry& g) {
    require_kind(Tf, TransformKind::T);
    ScalarField d = mixed_directional(Tf.values(), g.u(), g.v());
    d *= -1.0 / g.det();
    return mask_to_disc(std::move(d), Tf.grid().r1);
}

VectorField recover_field_LT(const TransformField& Lf, const TransformField& Tf, const VLineGeometry& g) {
    require_pair(Lf, Tf);
    const ScalarField c = recover_curl(Lf, g);
    const ScalarField d = recover_div(Tf, g);
    auto [lap1, lap2] = laplacians_from_div_curl(d, c);
    const double r1 = Lf.grid().r1;
    ScalarField f1 = solve_free_space({std::move(lap1), PoissonMode::free_space, r1}).solution;
    ScalarField f2 = solve_free_space({std::move(lap2), PoissonMode::free_space, r1}).solution;
    return mask_to_disc(VectorField(std::move(f1), std::move(f2)), r1);
}

PoissonResult recover_potential(const TransformField& Tf, const VLineGeometry& g, const PoissonOptions& opts) {
    return solve_dirichlet_disc({recover_div(Tf, g), PoissonMode::dirichlet_disc, Tf.grid().r1}, opts);
}

PoissonResult recover_stream(const TransformField& Lf, const VLineGeometry& g, const PoissonOptions& opts) {
    return solve_dirichlet_disc({recover_curl(Lf, g), PoissonMode::dirichlet_disc, Lf.grid().r1}, opts);
}

std::pair<TransformField, TransformField> signed_from_LI(const TransformField& Lf, const TransformField& If,
                                                         const VLineGeometry& g, const RayQuadrature& q) {
    require_kind(If, TransformKind::I);
    require_pair(Lf, If);
    const ScalarField c = recover_curl(Lf, g);
    const Vec2 u = g.u(), v = g.v();
    const ScalarField xu = moment_field(c, u, q);
    const ScalarField xv = moment_field(c, v, q);
    ScalarField t1 = partial_x(If.values());
    ScalarField t2 = partial_y(If.values());
    for (std::size_t k = 0; k < t1.values().size(); ++k) {
        t1[k] += u.y * xu[k] - v.y * xv[k];
        t2[k] += -u.x * xu[k] + v.x * xv[k];
    }
    return {TransformField(TransformKind::Ts, std::move(t1)), TransformField(TransformKind::Ts, std::move(t2))};
}

std::pair<TransformField, TransformField> signed_from_TJ(const TransformField& Tf, const TransformField& Jf,
                                                         const VLineGeometry& g, const RayQuadrature& q) {
    require_kind(Jf, TransformKind::J);
    require_pair(Tf, Jf);
    const ScalarField d = recover_div(Tf, g);
    const Vec2 u = g.u(), v = g.v();
    const ScalarField xu = moment_field(d, u, q);
    const ScalarField xv = moment_field(d, v, q);
    ScalarField t1 = partial_y(Jf.values());
    ScalarField t2 = partial_x(Jf.values());
    for (std::size_t k = 0; k < t1.values().size(); ++k) {
        t1[k] = -t1[k] - u.x * xu[k] + v.x * xv[k];
        t2[k] += -u.y * xu[k] + v.y * xv[k];
    }
    return {TransformField(TransformKind::Ts, std::move(t1)), TransformField(TransformKind::Ts, std::move(t2))};
}

VectorField recover_field_LI(const TransformField& Lf, const TransformField& If, const VLineGeometry& g,
                             const RayQuadrature& q) {
    const auto [s1, s2] = signed_from_LI(Lf, If, g, q);
    return VectorField(invert_signed(s1, g, q), invert_signed(s2, g, q));
}

VectorField recover_field_TJ(const TransformField& Tf, const TransformField& Jf, const VLineGeometry& g,
                             const RayQuadrature& q) {
    const auto [s1, s2] = signed_from_TJ(Tf, Jf, g, q);
    return VectorField(invert_signed(s1, g, q), invert_signed(s2, g, q));
}

double rhombus_check(const TransformField& hfield, Vec2 x, double delta, const VLineGeometry& g) {
    if (!(delta > 0.0)) throw ConfigError("rhombus side must be positive");
    const ScalarField& h = hfield.values();
    const Grid2D& grid = h.grid();
    const Vec2 u = g.u(), v = g.v();
    const Vec2 y = x + u * delta;
    const Vec2 z = x + v * delta;
    const Vec2 w = x + (u + v) * delta;
    const Vec2 hi = grid.point(grid.nx - 1, grid.ny - 1);
    for (const Vec2& p : {x, y, z, w})
        if (p.x < grid.origin.x || p.y < grid.origin.y || p.x > hi.x || p.y > hi.y)
            throw ConfigError("rhombus leaves the grid");
    return (h.sample(x) - h.sample(y) - h.sample(z) + h.sample(w)) / (delta * delta);
}

}  // namespace vlt
