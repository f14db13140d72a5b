#pragma once

#include "vlt/grid.hpp"
#include "vlt/poisson.hpp"

namespace vlt {

/// f = solenoidal + grad(potential_V), with V = 0 on the boundary of D1.
struct HelmholtzParts {
    VectorField solenoidal;
    ScalarField potential_V;
    int iterations = 0;
    double residual = 0.0;
};

/// Solves Laplace(V) = div f on D1 with zero boundary values and returns
/// f - grad V as the solenoidal part. Propagates SolverError.
HelmholtzParts helmholtz_decompose(const VectorField& f, const PoissonOptions& opts = {});

}  // namespace vlt
