#include "vlt/poisson.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <fftw3.h>

#include "vlt/error.hpp"
#include "vlt/parallel.hpp"

namespace vlt {

double log_integral_over_square(double a) {
    return 2.0 * a * a * (std::log(2.0 * a * a) - 3.0 + std::numbers::pi / 2.0);
}

double free_space_weight(int di, int dj, double h) {
    constexpr double inv2pi = 0.5 / std::numbers::pi;
    if (di == 0 && dj == 0) return inv2pi * log_integral_over_square(0.5 * h);
    const double r = h * std::hypot(static_cast<double>(di), static_cast<double>(dj));
    return inv2pi * h * h * std::log(r);
}

PoissonResult solve_dirichlet_disc(const PoissonProblem& p, const PoissonOptions& opts) {
    if (p.mode != PoissonMode::dirichlet_disc) throw ConfigError("problem is not a disc Dirichlet problem");
    if (!(p.radius > 0.0)) throw ConfigError("Dirichlet disc radius must be positive");
    const Grid2D& g = p.rhs.grid();

    // Unknowns are the samples strictly inside the disc.
    const double rr = p.radius * p.radius * (1.0 - 1e-12);
    std::vector<std::ptrdiff_t> slot(g.size(), -1);
    std::vector<std::size_t> cell;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 x = g.point(i, j);
            if (dot(x, x) < rr && i > 0 && j > 0 && i < g.nx - 1 && j < g.ny - 1) {
                slot[g.index(i, j)] = static_cast<std::ptrdiff_t>(cell.size());
                cell.push_back(g.index(i, j));
            }
        }
    const auto n = static_cast<std::ptrdiff_t>(cell.size());
    std::vector<std::ptrdiff_t> nbr(4 * cell.size());
    const std::ptrdiff_t offs[4] = {1, -1, g.nx, -static_cast<std::ptrdiff_t>(g.nx)};
    for (std::ptrdiff_t k = 0; k < n; ++k)
        for (int q = 0; q < 4; ++q)
            nbr[4 * k + q] = slot[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(cell[k]) + offs[q])];

    // Negative Laplacian, scaled by h^2 so that A is the integer stencil.
    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        par::for_each((n + 1023) / 1024, [&](std::ptrdiff_t b) {
            const std::ptrdiff_t end = std::min(n, (b + 1) * 1024);
            for (std::ptrdiff_t k = b * 1024; k < end; ++k) {
                double s = 4.0 * x[k];
                for (int q = 0; q < 4; ++q) {
                    const std::ptrdiff_t m = nbr[4 * k + q];
                    if (m >= 0) s -= x[m];
                }
                y[k] = s;
            }
        });
    };
    auto dotp = [&](const std::vector<double>& a, const std::vector<double>& b) {
        return par::deterministic_sum(n, [&](std::ptrdiff_t k) { return a[k] * b[k]; });
    };

    std::vector<double> b(cell.size()), x(cell.size(), 0.0);
    for (std::ptrdiff_t k = 0; k < n; ++k) b[k] = -g.h * g.h * p.rhs[cell[k]];

    PoissonResult result{ScalarField(g), 0, 0.0};
    const double bnorm = std::sqrt(dotp(b, b));
    if (bnorm == 0.0) return result;

    std::vector<double> r = b, d = b, q(cell.size());
    double rr_old = dotp(r, r);
    int it = 0;
    double rel = 1.0;
    while (true) {
        rel = std::sqrt(rr_old) / bnorm;
        if (rel <= opts.tolerance) break;
        if (it >= opts.max_iterations)
            throw SolverError("conjugate gradients did not converge (relative residual " + std::to_string(rel) + ")",
                              it, rel);
        apply(d, q);
        const double alpha = rr_old / dotp(d, q);
        par::for_each((n + 4095) / 4096, [&](std::ptrdiff_t blk) {
            const std::ptrdiff_t end = std::min(n, (blk + 1) * 4096);
            for (std::ptrdiff_t k = blk * 4096; k < end; ++k) {
                x[k] += alpha * d[k];
                r[k] -= alpha * q[k];
            }
        });
        const double rr_new = dotp(r, r);
        const double beta = rr_new / rr_old;
        par::for_each((n + 4095) / 4096, [&](std::ptrdiff_t blk) {
            const std::ptrdiff_t end = std::min(n, (blk + 1) * 4096);
            for (std::ptrdiff_t k = blk * 4096; k < end; ++k) d[k] = r[k] + beta * d[k];
        });
        rr_old = rr_new;
        ++it;
    }
    for (std::ptrdiff_t k = 0; k < n; ++k) result.solution[cell[k]] = x[k];
    result.iterations = it;
    result.residual = rel;
    return result;
}

namespace {

// FFTW planning is not thread-safe.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(static_cast<double*>(fftw_malloc(sizeof(double) * n))) {}
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    double* data;
};

struct FftwComplexBuffer {
    explicit FftwComplexBuffer(std::size_t n)
        : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {}
    ~FftwComplexBuffer() { fftw_free(data); }
    FftwComplexBuffer(const FftwComplexBuffer&) = delete;
    FftwComplexBuffer& operator=(const FftwComplexBuffer&) = delete;
    fftw_complex* data;
};

}  // namespace

PoissonResult solve_free_space(const PoissonProblem& p) {
    if (p.mode != PoissonMode::free_space) throw ConfigError("problem is not a free-space problem");
    const Grid2D& g = p.rhs.grid();

    // Linear convolution through a zero-padded periodic one: with padded
    // extents >= 2n - 1 the periodic images never overlap the output window,
    // so this is the same discrete quadrature sum as the direct loop.
    const int px = 2 * g.nx;
    const int py = 2 * g.ny;
    const std::size_t nreal = static_cast<std::size_t>(px) * py;
    const std::size_t ncplx = static_cast<std::size_t>(py) * (px / 2 + 1);

    FftwBuffer kernel(nreal), source(nreal);
    FftwComplexBuffer kspec(ncplx), sspec(ncplx);
    for (int j = 0; j < py; ++j) {
        const int dj = j < g.ny ? j : j - py;
        for (int i = 0; i < px; ++i) {
            const int di = i < g.nx ? i : i - px;
            const bool inside = (j < g.ny || j > py - g.ny) && (i < g.nx || i > px - g.nx);
            kernel.data[static_cast<std::size_t>(j) * px + i] = inside ? free_space_weight(di, dj, g.h) : 0.0;
            source.data[static_cast<std::size_t>(j) * px + i] = (i < g.nx && j < g.ny) ? p.rhs(i, j) : 0.0;
        }
    }

    fftw_plan fk, fs, back;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fk = fftw_plan_dft_r2c_2d(py, px, kernel.data, kspec.data, FFTW_ESTIMATE);
        fs = fftw_plan_dft_r2c_2d(py, px, source.data, sspec.data, FFTW_ESTIMATE);
        back = fftw_plan_dft_c2r_2d(py, px, sspec.data, source.data, FFTW_ESTIMATE);
    }
    fftw_execute(fk);
    fftw_execute(fs);
    const double scale = 1.0 / static_cast<double>(nreal);
    for (std::size_t k = 0; k < ncplx; ++k) {
        const double ar = kspec.data[k][0], ai = kspec.data[k][1];
        const double br = sspec.data[k][0], bi = sspec.data[k][1];
        sspec.data[k][0] = (ar * br - ai * bi) * scale;
        sspec.data[k][1] = (ar * bi + ai * br) * scale;
    }
    fftw_execute(back);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(fk);
        fftw_destroy_plan(fs);
        fftw_destroy_plan(back);
    }

    PoissonResult result{ScalarField(g), 0, 0.0};
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) result.solution(i, j) = source.data[static_cast<std::size_t>(j) * px + i];
    return result;
}

}  // namespace vlt
