#include "vlt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vlt/error.hpp"

namespace vlt {

Direction::Direction(Vec2 d) : d_(d) {
    if (!(std::abs(norm(d) - 1.0) <= kUnitTolerance))
        throw GeometryError("direction is not a unit vector (|d| = " + std::to_string(norm(d)) + ")");
}

Direction Direction::from_angle(double radians) {
    return Direction(Vec2{std::cos(radians), std::sin(radians)}, Unchecked{});
}

Direction Direction::normalized(Vec2 d) {
    const double n = norm(d);
    if (!(n > 0.0) || !std::isfinite(n)) throw GeometryError("cannot normalize a zero or non-finite vector");
    return Direction(d / n, Unchecked{});
}

void Grid2D::validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid spacing must be positive");
    if (nx < 16 || ny < 16) throw ConfigError("grid needs at least 16 samples per axis");
    if (!(r1 > 0.0) || !(r2 > r1)) throw ConfigError("grid radii must satisfy 0 < r1 < r2");
    const double eps = 1e-12 * r2;
    const Vec2 hi = point(nx - 1, ny - 1);
    if (origin.x > -r2 + eps || origin.y > -r2 + eps || hi.x < r2 - eps || hi.y < r2 - eps)
        throw ConfigError("grid square does not contain the closed r2-disc");
}

Grid2D Grid2D::centered(int n, double r1, double r2, int margin) {
    if (n < 16) throw ConfigError("grid needs at least 16 samples per axis");
    const int half = n / 2 - 1 - margin;
    if (half < 4) throw ConfigError("grid too small for the requested margin");
    Grid2D g;
    g.nx = n;
    g.ny = n;
    g.h = r2 / half;
    g.origin = {-(n / 2) * g.h, -(n / 2) * g.h};
    g.r1 = r1;
    g.r2 = r2;
    g.validate();
    return g;
}

void Grid2D::nearest(Vec2 p, int& i, int& j) const {
    i = std::clamp(static_cast<int>(std::lround((p.x - origin.x) / h)), 0, nx - 1);
    j = std::clamp(static_cast<int>(std::lround((p.y - origin.y) / h)), 0, ny - 1);
}

bool Grid2D::same_lattice(const Grid2D& o) const {
    return nx == o.nx && ny == o.ny && h == o.h && origin == o.origin;
}

bool operator==(const Grid2D& a, const Grid2D& b) {
    return a.same_lattice(b) && a.r1 == b.r1 && a.r2 == b.r2;
}

ScalarField::ScalarField(const Grid2D& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const Grid2D& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw ConfigError("sample count does not match grid");
}

double ScalarField::sample(Vec2 p) const {
    const double fx = (p.x - grid_.origin.x) / grid_.h;
    const double fy = (p.y - grid_.origin.y) / grid_.h;
    if (!(fx >= 0.0 && fy >= 0.0 && fx <= grid_.nx - 1 && fy <= grid_.ny - 1)) return 0.0;
    const int i = std::min(static_cast<int>(fx), grid_.nx - 2);
    const int j = std::min(static_cast<int>(fy), grid_.ny - 2);
    const double tx = fx - i;
    const double ty = fy - j;
    const double* row0 = values_.data() + grid_.index(i, j);
    const double* row1 = row0 + grid_.nx;
    const double a = row0[0] + tx * (row0[1] - row0[0]);
    const double b = row1[0] + tx * (row1[1] - row1[0]);
    return a + ty * (b - a);
}

double ScalarField::sample_cubic(Vec2 p) const {
    const double fx = (p.x - grid_.origin.x) / grid_.h;
    const double fy = (p.y - grid_.origin.y) / grid_.h;
    if (!(fx >= 1.0 && fy >= 1.0 && fx < grid_.nx - 2 && fy < grid_.ny - 2)) return sample(p);
    const int i = static_cast<int>(fx);
    const int j = static_cast<int>(fy);
    auto weights = [](double t, double w[4]) {
        // Lagrange basis on the nodes -1, 0, 1, 2.
        w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
        w[1] = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
        w[2] = -(t + 1.0) * t * (t - 2.0) / 2.0;
        w[3] = (t + 1.0) * t * (t - 1.0) / 6.0;
    };
    double wx[4], wy[4];
    weights(fx - i, wx);
    weights(fy - j, wy);
    double sum = 0.0;
    for (int b = 0; b < 4; ++b) {
        const double* row = values_.data() + grid_.index(i - 1, j - 1 + b);
        sum += wy[b] * (wx[0] * row[0] + wx[1] * row[1] + wx[2] * row[2] + wx[3] * row[3]);
    }
    return sum;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    if (!grid_.same_lattice(o.grid_)) throw ConfigError("field grids differ");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    if (!grid_.same_lattice(o.grid_)) throw ConfigError("field grids differ");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

VectorField::VectorField(ScalarField a, ScalarField b) : f1(std::move(a)), f2(std::move(b)) {
    if (!f1.grid().same_lattice(f2.grid())) throw ConfigError("vector components on different grids");
}

double VectorField::max_abs() const {
    double m = 0.0;
    for (std::size_t k = 0; k < f1.values().size(); ++k) m = std::max(m, std::hypot(f1[k], f2[k]));
    return m;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    f1 += o.f1;
    f2 += o.f2;
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    f1 -= o.f1;
    f2 -= o.f2;
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    f1 *= s;
    f2 *= s;
    return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

ScalarField project(const VectorField& f, Vec2 d) {
    ScalarField out(f.grid());
    for (std::size_t k = 0; k < out.values().size(); ++k) out[k] = f.f1[k] * d.x + f.f2[k] * d.y;
    return out;
}

VectorField perp(const VectorField& f) { return VectorField(-1.0 * f.f2, f.f1); }

ScalarField mask_to_disc(ScalarField h, double radius) {
    const Grid2D& g = h.grid();
    const double r2 = radius * radius;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 p = g.point(i, j);
            if (dot(p, p) >= r2) h(i, j) = 0.0;
        }
    return h;
}

VectorField mask_to_disc(VectorField f, double radius) {
    return VectorField(mask_to_disc(std::move(f.f1), radius), mask_to_disc(std::move(f.f2), radius));
}

bool vanishes_outside(const ScalarField& h, double radius, double tol) {
    const Grid2D& g = h.grid();
    const double bound = tol * h.max_abs();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 p = g.point(i, j);
            if (norm(p) >= radius && std::abs(h(i, j)) > bound) return false;
        }
    return true;
}

}  // namespace vlt
