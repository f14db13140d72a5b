#pragma once

#include <vector>

#include "vlt/beam.hpp"
#include "vlt/grid.hpp"

namespace vlt {

/// Samples R h(psi, s) of line integrals over {x : x . psi = s}. psi is the
/// line normal at angle angle0 + a * dangle; offsets are symmetric about 0,
/// s_k = (k - (n_offsets - 1) / 2) ds. Values are stored component-major,
/// then angle-major: index (c * n_angles + a) * n_offsets + k.
struct Sinogram {
    int n_angles = 0;
    int n_offsets = 0;
    int ncomp = 1;
    double ds = 0.0;
    double angle0 = 0.0;
    double dangle = 0.0;
    std::vector<double> values;

    Sinogram() = default;
    Sinogram(int n_angles, int n_offsets, int ncomp, double ds, double angle0, double dangle);

    double angle(int a) const { return angle0 + a * dangle; }
    double offset(int k) const { return (k - 0.5 * (n_offsets - 1)) * ds; }
    double& at(int c, int a, int k) { return values[index(c, a, k)]; }
    double at(int c, int a, int k) const { return values[index(c, a, k)]; }
    std::size_t index(int c, int a, int k) const {
        return (static_cast<std::size_t>(c) * n_angles + a) * n_offsets + k;
    }

    /// Single-component copy of component c.
    Sinogram component(int c) const;
    bool same_layout(const Sinogram& o) const;
};

/// Stacks single-component sinograms with identical layouts.
Sinogram stack_components(const Sinogram& a, const Sinogram& b);

struct RadonOptions {
    int n_angles = 360;
    int n_offsets = 0;          ///< 0 selects 2 ceil(r2 / ds) + 1, covering [-r2, r2].
    double ds = 0.0;            ///< 0 selects the grid spacing.
    double step = 0.0;          ///< Spacing along each line; 0 selects h / 2.
    bool full_circle = false;   ///< Angles on [0, 2 pi) instead of [0, pi).
};

/// Empty sinogram with the layout selected by the options for this grid.
Sinogram make_sinogram(const Grid2D& g, const RadonOptions& opt, int ncomp = 1);

/// Radon transform of a field vanishing outside D1. Each line integral is a
/// trapezoid sum on the lattice tau_k = k step along x = s psi + tau psi^perp,
/// restricted to the chord through the interpolant support.
Sinogram radon_forward(const ScalarField& h, const RadonOptions& opt);

/// Radon transform of strip-extended transform data. Each line is integrated
/// over its chord through the r2-disc together with its full crossings of
/// the strips behind the support disc. Crossings longer than 64 r2 (lines
/// nearly parallel to a ray) are truncated.
///
/// When `active` is non-empty, only angles with active[a] set are computed;
/// the rest stay zero.
Sinogram radon_forward(const StripExtension& data, const RadonOptions& opt, const std::vector<char>& active = {});

/// d/ds per angle: central differences inside, second-order one-sided
/// differences at the first and last offsets.
Sinogram sinogram_dds(const Sinogram& sg);

struct FbpOptions {
    bool hann = false;  ///< Apodize the ramp with a Hann window.
};

/// Filtered backprojection of component `comp` onto the grid. The angles
/// must cover [angle0, angle0 + pi) or a full turn uniformly, with at least
/// 16 of them. Ramp filtering convolves each projection with the band-limited
/// Ram-Lak kernel through a zero-padded FFT; backprojection interpolates the
/// filtered projections linearly in s. Samples with |x| > r2 are zero.
ScalarField fbp_inverse(const Sinogram& sg, const Grid2D& grid, const FbpOptions& opt = {}, int comp = 0);

/// Spatial Ram-Lak kernel at integer lag k for offset spacing ds.
double ramlak_kernel(int k, double ds);

}  // namespace vlt
