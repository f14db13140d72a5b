#pragma once

#include "vlt/beam.hpp"
#include "vlt/geometry.hpp"
#include "vlt/poisson.hpp"
#include "vlt/radon.hpp"
#include "vlt/transform.hpp"

// Straightforward single-threaded versions of the main kernels. They skip
// the chord clipping and FFT shortcuts of the library kernels and serve as
// baselines in tests and benchmarks.
namespace vlt::reference {

/// Beam sum over every lattice node until the ray is past the support.
double divergent_beam(const ScalarField& h, Vec2 x, Vec2 d, double step, bool moment);

ScalarField beam_field(const ScalarField& h, Vec2 d, double step, bool moment = false);

TransformField forward_L(const VectorField& f, const VLineGeometry& g, double step);
TransformField forward_T(const VectorField& f, const VLineGeometry& g, double step);

/// Line sums over the whole r2 + 2h chord.
Sinogram radon_forward(const ScalarField& h, const RadonOptions& opt);

/// Free-space Poisson solution by direct summation over the nonzero
/// source samples, in a fixed order.
ScalarField solve_free_space_direct(const ScalarField& rhs);

/// Filtered backprojection with the ramp filter applied as a direct
/// spatial convolution.
ScalarField fbp_inverse_direct(const Sinogram& sg, const Grid2D& grid, int comp = 0);

}  // namespace vlt::reference
