#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vlt/vec2.hpp"

namespace vlt {

/// Uniform Cartesian sampling of a square that covers the closed disc of
/// radius r2. Sample (i, j) sits at origin + h * (i, j); storage is row-major
/// with rows along x2, so index = j * nx + i.
///
/// r1 is the radius of the support disc D1 of every field on the grid, and
/// r2 > r1 the radius of the data disc D2 on which transforms are observed.
struct Grid2D {
    int nx = 0;
    int ny = 0;
    double h = 0.0;
    Vec2 origin;
    double r1 = 0.0;
    double r2 = 0.0;

    /// Validates the invariants: h > 0, nx, ny >= 16, r2 > r1 > 0 and the
    /// square contains the closed r2-disc. Throws ConfigError.
    void validate() const;

    /// n x n grid with a sample at the origin (index n/2) and at least
    /// `margin` samples between the r2-circle and the grid edge.
    static Grid2D centered(int n, double r1, double r2, int margin = 3);

    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
    }
    Vec2 point(int i, int j) const { return {origin.x + h * i, origin.y + h * j}; }

    /// Nearest sample to p, clamped to the grid.
    void nearest(Vec2 p, int& i, int& j) const;

    bool same_lattice(const Grid2D& o) const;
};

bool operator==(const Grid2D& a, const Grid2D& b);

class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid2D& grid, double fill = 0.0);
    ScalarField(const Grid2D& grid, std::vector<double> values);

    const Grid2D& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    std::vector<double>& storage() { return values_; }

    double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
    double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
    double operator[](std::size_t k) const { return values_[k]; }
    double& operator[](std::size_t k) { return values_[k]; }

    /// Bilinear interpolation; zero outside the sampled square.
    double sample(Vec2 p) const;
    /// Tensor-product cubic Lagrange interpolation on the surrounding 4x4
    /// samples. Falls back to bilinear within one cell of the grid edge.
    double sample_cubic(Vec2 p) const;

    double max_abs() const;

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double s);

private:
    Grid2D grid_;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Two-component field; both components share one grid.
struct VectorField {
    ScalarField f1;
    ScalarField f2;

    VectorField() = default;
    explicit VectorField(const Grid2D& grid) : f1(grid), f2(grid) {}
    VectorField(ScalarField a, ScalarField b);

    const Grid2D& grid() const { return f1.grid(); }
    const ScalarField& component(int c) const { return c == 0 ? f1 : f2; }
    ScalarField& component(int c) { return c == 0 ? f1 : f2; }
    double max_abs() const;

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double s);
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Pointwise f . d.
ScalarField project(const VectorField& f, Vec2 d);

/// Pointwise f^perp = (-f2, f1).
VectorField perp(const VectorField& f);

/// Zeroes samples with |x| >= radius.
ScalarField mask_to_disc(ScalarField h, double radius);
VectorField mask_to_disc(VectorField f, double radius);

/// True when |value| <= tol * max|h| at every sample with |x| >= radius.
bool vanishes_outside(const ScalarField& h, double radius, double tol = 1e-12);

}  // namespace vlt
