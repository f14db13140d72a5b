#pragma once

#include <utility>

#include "vlt/grid.hpp"

namespace vlt {

// Finite-difference calculus on grid fields. First derivatives use central
// differences in the interior and second-order one-sided stencils on the
// edge rows and columns, so every operator is O(h^2) everywhere.

ScalarField partial_x(const ScalarField& h);
ScalarField partial_y(const ScalarField& h);

/// d . grad h.
ScalarField directional_derivative(const ScalarField& h, Vec2 d);

VectorField gradient(const ScalarField& h);

/// d1 f1 + d2 f2.
ScalarField divergence(const VectorField& f);

/// d1 f2 - d2 f1.
ScalarField curl(const VectorField& f);

/// Five-point Laplacian on interior samples; the outer ring is zero.
ScalarField laplacian(const ScalarField& h);

/// Laplacians of the two components of a field from its divergence d and
/// curl c: (d1 d - d2 c, d2 d + d1 c).
std::pair<ScalarField, ScalarField> laplacians_from_div_curl(const ScalarField& d, const ScalarField& c);

/// Second mixed directional derivative D_u D_v h = u^T (Hess h) v.
///
/// Interior samples use the compact Hessian stencil; with u and v along the
/// grid axes this is exactly the centered rhombus difference of side 2h.
/// The outer ring falls back to composing two first-derivative stencils.
ScalarField mixed_directional(const ScalarField& h, Vec2 u, Vec2 v);

/// D_u (D_v h) built from two first-derivative passes.
ScalarField composed_directional(const ScalarField& h, Vec2 u, Vec2 v);

}  // namespace vlt
