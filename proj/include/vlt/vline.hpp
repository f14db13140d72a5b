#pragma once

#include "vlt/beam.hpp"
#include "vlt/geometry.hpp"
#include "vlt/grid.hpp"
#include "vlt/poisson.hpp"
#include "vlt/transform.hpp"

namespace vlt {

// Forward V-line transforms of a vector field f, evaluated at every grid
// vertex:
//   L f = -X_u(f.u)      + X_v(f.v)
//   T f = -X_u(f.u^perp) + X_v(f.v^perp)
// and I, J the same with first-moment beams.

TransformField forward_L(const VectorField& f, const VLineGeometry& g, const RayQuadrature& q = {});
TransformField forward_T(const VectorField& f, const VLineGeometry& g, const RayQuadrature& q = {});
TransformField forward_I(const VectorField& f, const VLineGeometry& g, const RayQuadrature& q = {});
TransformField forward_J(const VectorField& f, const VLineGeometry& g, const RayQuadrature& q = {});

/// curl f = D_u D_v (L f) / det2(v, u), masked to D1.
ScalarField recover_curl(const TransformField& Lf, const VLineGeometry& g);
/// div f = -D_u D_v (T f) / det2(v, u), masked to D1.
ScalarField recover_div(const TransformField& Tf, const VLineGeometry& g);

/// Full field from L f and T f: recovered div and curl give the component
/// Laplacians, which are inverted with the free-space Green function.
VectorField recover_field_LT(const TransformField& Lf, const TransformField& Tf, const VLineGeometry& g);

/// Potential V of the gradient part: Laplace(V) = div f, V = 0 on the D1 boundary.
PoissonResult recover_potential(const TransformField& Tf, const VLineGeometry& g, const PoissonOptions& opts = {});
/// Stream function W of the solenoidal part: Laplace(W) = curl f, W = 0 on the D1 boundary.
PoissonResult recover_stream(const TransformField& Lf, const VLineGeometry& g, const PoissonOptions& opts = {});

/// Signed V-line data of both components assembled from L f and I f:
///   T_s f1 =  d1(I f) + u2 X1_u(curl f) - v2 X1_v(curl f)
///   T_s f2 =  d2(I f) - u1 X1_u(curl f) + v1 X1_v(curl f)
std::pair<TransformField, TransformField> signed_from_LI(const TransformField& Lf, const TransformField& If,
                                                         const VLineGeometry& g, const RayQuadrature& q = {});
/// The same from T f and J f:
///   T_s f1 = -d2(J f) - u1 X1_u(div f) + v1 X1_v(div f)
///   T_s f2 =  d1(J f) - u2 X1_u(div f) + v2 X1_v(div f)
std::pair<TransformField, TransformField> signed_from_TJ(const TransformField& Tf, const TransformField& Jf,
                                                         const VLineGeometry& g, const RayQuadrature& q = {});

/// Both components by inverting the signed transforms from signed_from_LI.
VectorField recover_field_LI(const TransformField& Lf, const TransformField& If, const VLineGeometry& g,
                             const RayQuadrature& q = {});
/// Both components by inverting the signed transforms from signed_from_TJ.
VectorField recover_field_TJ(const TransformField& Tf, const TransformField& Jf, const VLineGeometry& g,
                             const RayQuadrature& q = {});

/// Finite difference of the data at the corners of the rhombus spanned by
/// delta u and delta v at x, divided by delta^2:
///   [h(x) - h(x + delta u) - h(x + delta v) + h(x + delta u + delta v)] / delta^2.
/// Tends to D_u D_v h(x) as delta -> 0. Off-grid corners are interpolated
/// bilinearly. Throws ConfigError when a corner leaves the grid square.
double rhombus_check(const TransformField& hfield, Vec2 x, double delta, const VLineGeometry& g);

}  // namespace vlt
