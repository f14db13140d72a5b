#pragma once

#include "vlt/grid.hpp"

namespace vlt {

enum class PoissonMode { dirichlet_disc, free_space };

struct PoissonProblem {
    ScalarField rhs;
    PoissonMode mode = PoissonMode::dirichlet_disc;
    double radius = 0.0;  ///< Disc radius, dirichlet_disc only.
};

struct PoissonOptions {
    double tolerance = 1e-10;  ///< Relative residual for conjugate gradients.
    int max_iterations = 20000;
};

/// Solution plus solver diagnostics for logging.
struct PoissonResult {
    ScalarField solution;
    int iterations = 0;
    double residual = 0.0;
};

/// Solves Laplace(V) = rhs on the samples strictly inside the disc, with
/// V = 0 on and outside the circle. Five-point Laplacian, matrix-free
/// conjugate gradients. Throws SolverError when the iteration budget runs out.
PoissonResult solve_dirichlet_disc(const PoissonProblem& p, const PoissonOptions& opts = {});

/// Free-space solution G * rhs with G(x) = log|x| / (2 pi), by midpoint
/// quadrature over the grid cells. The self-cell weight is the exact
/// integral of G over the h x h cell. Evaluated at every grid sample.
PoissonResult solve_free_space(const PoissonProblem& p);

/// Quadrature weight of G for the sample offset (di, dj), in units where
/// the result multiplies rhs directly.
double free_space_weight(int di, int dj, double h);

/// Exact integral of log|x| over the square [-a, a]^2.
double log_integral_over_square(double a);

}  // namespace vlt
