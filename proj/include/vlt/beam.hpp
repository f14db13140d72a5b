#pragma once

#include <vector>

#include "vlt/geometry.hpp"
#include "vlt/grid.hpp"
#include "vlt/transform.hpp"

namespace vlt {

/// Composite-midpoint rule along rays. Nodes sit at t_k = (k + 1/2) step
/// from the ray origin, with bilinear sampling of the field.
struct RayQuadrature {
    double step = 0.0;  ///< Arc-length spacing; 0 selects h / 2.

    double step_for(const Grid2D& g) const;
};

/// Radius outside which the bilinear interpolant of a field that vanishes
/// at every sample with |x| >= r1 is identically zero.
inline double interpolant_support(const Grid2D& g) { return g.r1 + 1.5 * g.h; }

/// X_d h(x) = integral over t >= 0 of h(x + t d). The sum is restricted to
/// the chord through the interpolant support; rays missing it return 0.
double divergent_beam(const ScalarField& h, Vec2 x, Vec2 d, const RayQuadrature& q = {});

/// First moment: integral over t >= 0 of t h(x + t d).
double moment_beam(const ScalarField& h, Vec2 x, Vec2 d, const RayQuadrature& q = {});

/// X_d h evaluated at every grid vertex.
ScalarField beam_field(const ScalarField& h, Vec2 d, const RayQuadrature& q = {});
/// First-moment beam at every grid vertex.
ScalarField moment_field(const ScalarField& h, Vec2 d, const RayQuadrature& q = {});

/// T_s h = X_u h - X_v h at every grid vertex.
TransformField signed_vline(const ScalarField& h, const VLineGeometry& geom, const RayQuadrature& q = {});

/// Evaluates transform data anywhere in the plane from its samples in the
/// closed r2-disc.
///
/// Inside the disc the data is interpolated with the cubic Lagrange
/// interpolant of Grid2D::sample_cubic. A point p outside
/// it sends at most one of the given rays through the support disc; the
/// value at p equals the value where that ray enters the r2-circle, because
/// the stretch in between contributes nothing. Points whose rays all miss
/// the support give 0. This is exact for zeroth-moment transforms (L, T,
/// T_s, star) and wrong for the moment transforms I and J.
///
/// The entry values are tabulated per ray against the signed distance
/// sigma = p . ray^perp at spacing h / 8 and interpolated linearly.
class StripExtension {
public:
    /// Keeps a reference to `data`, which must outlive the extension.
    StripExtension(const ScalarField& data, std::vector<Vec2> rays);
    StripExtension(ScalarField&&, std::vector<Vec2>) = delete;

    double operator()(Vec2 p) const;

    const Grid2D& grid() const { return data_->grid(); }
    double data_radius() const { return r2_; }
    /// Support radius used for hit tests, r1 + 1.5 h.
    double support_radius() const { return rs_; }
    const std::vector<Vec2>& rays() const { return rays_; }

    /// Entry value of ray r at signed distance sigma; 0 for |sigma| >= rs.
    double entry_value(std::size_t r, double sigma) const;

private:
    const ScalarField* data_;
    std::vector<Vec2> rays_;
    double r2_;
    double rs_;
    double dsig_;
    std::vector<std::vector<double>> table_;
};

/// Parameter range [0, t_max] outside of which the ray x + t d sees only
/// zeros of a strip-extended field: it has left the r2-disc and every
/// strip behind the support disc. Capped at 64 r2 for near-parallel strips.
double extended_ray_length(const StripExtension& ext, Vec2 x, Vec2 d);

/// Inverse of the signed V-line transform:
///   h = D_u D_v F / |v - u|,  F(x) = integral over t >= 0 of T_s h(x + t w),
/// with w = (v - u) / |v - u|. The ray integral runs over the full extent
/// of the strip-extended data. Output is masked to D1.
ScalarField invert_signed(const TransformField& ts, const VLineGeometry& geom, const RayQuadrature& q = {});

}  // namespace vlt
