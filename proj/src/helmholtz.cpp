#include "vlt/helmholtz.hpp"

#include "vlt/field_ops.hpp"

namespace vlt {

HelmholtzParts helmholtz_decompose(const VectorField& f, const PoissonOptions& opts) {
    const Grid2D& g = f.grid();
    PoissonResult v = solve_dirichlet_disc({divergence(f), PoissonMode::dirichlet_disc, g.r1}, opts);
    VectorField fs = f - gradient(v.solution);
    return {std::move(fs), std::move(v.solution), v.iterations, v.residual};
}

}  // namespace vlt
