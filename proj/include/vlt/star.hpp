#pragma once

#include <array>
#include <vector>

#include "vlt/beam.hpp"
#include "vlt/radon.hpp"
#include "vlt/transform.hpp"

namespace vlt {

/// Branch directions gamma_i with nonzero weights c_i.
class StarGeometry {
public:
    /// Requires m >= 2, pairwise distinct directions and nonzero weights.
    StarGeometry(std::vector<Direction> gammas, std::vector<double> weights);

    /// m rays at angles angle0 + 2 pi i / m, all with the same weight.
    static StarGeometry equiangular(int m, double weight = 1.0, double angle0 = 0.0);

    int size() const { return static_cast<int>(gammas_.size()); }
    const std::vector<Direction>& gammas() const { return gammas_; }
    const std::vector<double>& weights() const { return weights_; }
    std::vector<Vec2> rays() const;

    /// r1 / sin(theta_min / 2) for the smallest pairwise ray angle.
    double min_r2(double r1) const;
    void check_grid(const Grid2D& grid) const;

private:
    std::vector<Direction> gammas_;
    std::vector<double> weights_;
};

using Mat2 = std::array<std::array<double, 2>, 2>;

/// gamma(psi) = -sum_i c_i gamma_i / (psi . gamma_i). Throws a type-1
/// SingularDirectionError when |psi . gamma_i| < 1e-9.
Vec2 gamma_of_psi(const StarGeometry& sg, Vec2 psi);

/// Rows gamma(psi) and gamma(psi)^perp.
Mat2 pre_q_of_psi(const StarGeometry& sg, Vec2 psi);

/// Inverse of pre_q_of_psi in closed form,
///   Q = [[g1, -g2], [g2, g1]] / |g|^2.
/// Throws a type-2 SingularDirectionError when |gamma(psi)| < 1e-9.
Mat2 q_of_psi(const StarGeometry& sg, Vec2 psi);

/// Spectral norm of Q(psi), which is 1 / |gamma(psi)|. The pre-inverse
/// matrix is |gamma| times a rotation, so its condition number is always 1;
/// this gain is what amplifies data errors.
double q_gain(const StarGeometry& sg, Vec2 psi);

Mat2 multiply(const Mat2& a, const Mat2& b);

enum class StarClass { symmetric, invertible };

/// Symmetric iff m is even and the rays split into antipodal pairs
/// gamma_j = -gamma_i carrying opposite weights c_j = -c_i (angular and
/// relative weight tolerance 1e-10).
StarClass classify(const StarGeometry& sg);

/// Coefficients of the two components of
///   P(psi) = sum_i c_i gamma_i prod_{j != i} (psi . gamma_j),
/// homogeneous of degree m - 1. Entry k multiplies psi1^(m-1-k) psi2^k.
struct StarPolynomial {
    std::vector<double> p1;
    std::vector<double> p2;

    Vec2 operator()(Vec2 psi) const;
    /// True when every coefficient is below 1e-10 times sum |c_i|.
    bool identically_zero(double weight_scale) const;
};

StarPolynomial star_polynomial(const StarGeometry& sg);

/// True when the expanded P vanishes identically.
bool polynomial_vanishes(const StarGeometry& sg);

struct SingularDirections {
    std::vector<double> z1;  ///< Angles in [0, 2 pi) with psi . gamma_i = 0, sorted.
    std::vector<double> z2;  ///< Angles in [0, 2 pi) outside z1 with gamma(psi) = 0, sorted.
    bool degenerate = false; ///< P vanishes identically.
};

/// Z1 in closed form. Z2 from sign changes of either component of P over
/// `samples` equispaced angles, refined by bisection to 1e-12 and kept when
/// |gamma(psi)| <= 1e-9 there.
SingularDirections singular_directions(const StarGeometry& sg, int samples = 4096);

/// S f = sum_i c_i X_{gamma_i} [f . gamma_i ; f . gamma_i^perp] at every vertex.
TransformField forward_star(const VectorField& f, const StarGeometry& sg, const RayQuadrature& q = {});

struct StarInversionOptions {
    int n_angles = 360;         ///< Angles on [0, pi).
    double guard_degrees = 2.0; ///< Half-width of the band dropped around Z1 and Z2.
    RayQuadrature quadrature;   ///< Spacing along Radon lines (step 0 = h / 2).
    FbpOptions fbp;
};

/// Angles of the inversion lattice and which of them lie in a guard band.
std::vector<char> guarded_angles(const StarGeometry& sg, const Sinogram& layout, double guard_degrees);

/// Q(psi) d/ds R(S f) per angle, which equals (R f1, R f2). Guarded angles
/// are filled by linear interpolation in angle between the nearest computed
/// angles, wrapping through R(psi + pi, s) = R(psi, -s).
/// `guarded` receives the guard mask when non-null.
Sinogram star_filtered_sinogram(const TransformField& Sf, const StarGeometry& sg, const StarInversionOptions& opt,
                                std::vector<char>* guarded = nullptr);

/// Reconstructs f from its star transform: the filtered sinogram followed by
/// filtered backprojection of each component, masked to D1.
/// Throws NonInvertibleError for symmetric geometries before any work, and
/// ConfigError when fewer than 16 angles survive the guard bands.
VectorField invert_star(const TransformField& Sf, const StarGeometry& sg, const StarInversionOptions& opt = {});

}  // namespace vlt
