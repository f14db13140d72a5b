#include "vlt/beam.hpp"

#include <algorithm>
#include <cmath>

#include "vlt/error.hpp"
#include "vlt/field_ops.hpp"
#include "vlt/parallel.hpp"

namespace vlt {

double RayQuadrature::step_for(const Grid2D& g) const {
    if (step < 0.0 || !std::isfinite(step)) throw ConfigError("ray quadrature step must be positive");
    return step > 0.0 ? step : 0.5 * g.h;
}

namespace {

// Midpoint nodes on the fixed lattice (k + 1/2) step, for every k whose node
// may fall in [t_lo, t_hi]. Keeping the lattice anchored at the ray origin
// gives every grid vertex the same node pattern relative to the grid.
template <bool Moment, class Sampler>
double lattice_sum(const Sampler& sample, Vec2 x, Vec2 d, double t_lo, double t_hi, double step) {
    if (!(t_hi > 0.0)) return 0.0;
    t_lo = std::max(t_lo, 0.0);
    const auto k0 = static_cast<long>(std::floor(t_lo / step));
    const auto k1 = static_cast<long>(std::ceil(t_hi / step));
    double s = 0.0;
    for (long k = k0; k <= k1; ++k) {
        const double t = (static_cast<double>(k) + 0.5) * step;
        const double val = sample(Vec2{x.x + t * d.x, x.y + t * d.y});
        if constexpr (Moment)
            s += t * val;
        else
            s += val;
    }
    return s * step;
}

template <bool Moment>
double beam(const ScalarField& h, Vec2 x, Vec2 d, double step) {
    double t_lo, t_hi;
    if (!ray_disc_chord(x, d, interpolant_support(h.grid()), t_lo, t_hi)) return 0.0;
    return lattice_sum<Moment>([&](Vec2 p) { return h.sample(p); }, x, d, t_lo, t_hi, step);
}

template <bool Moment>
ScalarField field_of(const ScalarField& h, Vec2 d, const RayQuadrature& q) {
    const Grid2D& g = h.grid();
    const double step = q.step_for(g);
    ScalarField out(g);
    par::for_each(g.ny, [&](std::ptrdiff_t jj) {
        const int j = static_cast<int>(jj);
        for (int i = 0; i < g.nx; ++i) out(i, j) = beam<Moment>(h, g.point(i, j), d, step);
    });
    return out;
}

}  // namespace

double divergent_beam(const ScalarField& h, Vec2 x, Vec2 d, const RayQuadrature& q) {
    return beam<false>(h, x, d, q.step_for(h.grid()));
}

double moment_beam(const ScalarField& h, Vec2 x, Vec2 d, const RayQuadrature& q) {
    return beam<true>(h, x, d, q.step_for(h.grid()));
}

ScalarField beam_field(const ScalarField& h, Vec2 d, const RayQuadrature& q) { return field_of<false>(h, d, q); }

ScalarField moment_field(const ScalarField& h, Vec2 d, const RayQuadrature& q) { return field_of<true>(h, d, q); }

TransformField signed_vline(const ScalarField& h, const VLineGeometry& geom, const RayQuadrature& q) {
    const Grid2D& g = h.grid();
    const double step = q.step_for(g);
    const Vec2 u = geom.u(), v = geom.v();
    ScalarField out(g);
    par::for_each(g.ny, [&](std::ptrdiff_t jj) {
        const int j = static_cast<int>(jj);
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 x = g.point(i, j);
            out(i, j) = beam<false>(h, x, u, step) - beam<false>(h, x, v, step);
        }
    });
    return TransformField(TransformKind::Ts, std::move(out));
}

StripExtension::StripExtension(const ScalarField& data, std::vector<Vec2> rays)
    : data_(&data), rays_(std::move(rays)), r2_(data.grid().r2), rs_(interpolant_support(data.grid())),
      dsig_(data.grid().h / 8.0) {
    if (rays_.empty()) throw ConfigError("strip extension needs at least one ray direction");
    if (!(rs_ < r2_)) throw ConfigError("support disc must lie inside the data disc");
    const int n = static_cast<int>(std::ceil(2.0 * rs_ / dsig_)) + 1;
    for (const Vec2& d : rays_) {
        const Vec2 n_perp = perp(d);
        std::vector<double> col(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            const double sigma = std::min(-rs_ + k * dsig_, rs_);
            const double back = std::sqrt(r2_ * r2_ - sigma * sigma);
            col[static_cast<std::size_t>(k)] = data.sample_cubic(n_perp * sigma - d * back);
        }
        table_.push_back(std::move(col));
    }
}

double StripExtension::entry_value(std::size_t r, double sigma) const {
    if (!(std::abs(sigma) < rs_)) return 0.0;
    const std::vector<double>& col = table_[r];
    const double pos = (sigma + rs_) / dsig_;
    const auto k = std::min(static_cast<std::size_t>(pos), col.size() - 2);
    const double t = pos - static_cast<double>(k);
    return col[k] + t * (col[k + 1] - col[k]);
}

double StripExtension::operator()(Vec2 p) const {
    if (dot(p, p) <= r2_ * r2_) return data_->sample_cubic(p);
    // Outside the r2-disc, p lies behind the support in the strip of at most
    // one ray, up to the thin interpolation shell where the grazing values are
    // negligible; the deepest strip wins.
    std::size_t best = rays_.size();
    double best_sigma = rs_;
    for (std::size_t r = 0; r < rays_.size(); ++r) {
        const double sigma = dot(p, perp(rays_[r]));
        if (std::abs(sigma) < best_sigma && dot(p, rays_[r]) < 0.0) {
            best = r;
            best_sigma = std::abs(sigma);
        }
    }
    if (best == rays_.size()) return 0.0;
    return entry_value(best, dot(p, perp(rays_[best])));
}

double extended_ray_length(const StripExtension& ext, Vec2 x, Vec2 d) {
    const double cap = 64.0 * ext.data_radius();
    double t_max = 0.0;
    double lo, hi;
    if (ray_disc_chord(x, d, ext.data_radius(), lo, hi)) t_max = std::max(t_max, hi);
    for (const Vec2& r : ext.rays()) {
        const Vec2 n = perp(r);
        const double a = dot(x, n);
        const double c = dot(d, n);
        const double rs = ext.support_radius();
        if (std::abs(c) < 1e-300) {
            if (std::abs(a) <= rs) t_max = cap;
            continue;
        }
        t_max = std::max({t_max, (rs - a) / c, (-rs - a) / c});
    }
    return std::min(t_max, cap);
}

ScalarField invert_signed(const TransformField& ts, const VLineGeometry& geom, const RayQuadrature& q) {
    if (ts.ncomp() != 1) throw ConfigError("signed V-line data must have one component");
    const ScalarField& data = ts.values();
    const Grid2D& g = data.grid();
    geom.check_grid(g);
    const double step = q.step_for(g);
    const Vec2 w = geom.w();
    const StripExtension ext(data, geom.rays());

    // F is needed only where the 3x3 derivative stencil of a D1 sample reaches.
    const double reach = g.r1 + 3.0 * g.h;
    ScalarField F(g);
    par::for_each(g.ny, [&](std::ptrdiff_t jj) {
        const int j = static_cast<int>(jj);
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 x = g.point(i, j);
            if (dot(x, x) > reach * reach) continue;
            F(i, j) = lattice_sum<false>(ext, x, w, 0.0, extended_ray_length(ext, x, w), step);
        }
    });
    ScalarField out = mixed_directional(F, geom.u(), geom.v());
    out *= 1.0 / norm(geom.v().vec() - geom.u().vec());
    return mask_to_disc(std::move(out), g.r1);
}

}  // namespace vlt
