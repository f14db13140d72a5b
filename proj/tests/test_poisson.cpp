#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "vlt/error.hpp"
#include "vlt/field_ops.hpp"
#include "vlt/poisson.hpp"
#include "vlt/reference.hpp"

using namespace vlt;

namespace {

double value_at(const ScalarField& h, Vec2 p) {
    int i = 0, j = 0;
    h.grid().nearest(p, i, j);
    return h(i, j);
}

// Midpoint-rule oracle for the integral of ln|x| over a centered square of side s,
// skipping the center cell. n must be odd so the singular point is a cell center.
double log_square_numeric(double s, int n) {
    const double c = s / n;
    double sum = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double x = -0.5 * s + (i + 0.5) * c, y = -0.5 * s + (j + 0.5) * c;
            if (i == n / 2 && j == n / 2) continue;
            sum += 0.5 * std::log(x * x + y * y) * c * c;
        }
    return sum;
}

}  // namespace

TEST(Dirichlet, RecoversBumpPotential) {
    double prev = 1e9;
    for (int n : {64, 128, 256}) {
        const Grid2D g = test::disc_grid(n);
        const Phantom p = make_phantom(PhantomKind::potential, {0, 0}, 1.0, g);
        const PoissonResult r = solve_dirichlet_disc({p.div, PoissonMode::dirichlet_disc, 1.0});
        EXPECT_GT(r.iterations, 0);
        EXPECT_LE(r.residual, 1e-10);
        const double e0 = std::abs(value_at(r.solution, {0, 0}) - 1.0);
        EXPECT_LT(e0, 2.0 * g.h * g.h) << n;
        if (n > 64) {
            EXPECT_LT(e0, prev / 3.5) << n;
        }
        prev = e0;
    }
}

TEST(Dirichlet, ZeroRightHandSideGivesZero) {
    const Grid2D g = test::disc_grid(64);
    const PoissonResult r = solve_dirichlet_disc({ScalarField(g), PoissonMode::dirichlet_disc, 1.0});
    EXPECT_EQ(r.solution.max_abs(), 0.0);
}

TEST(Dirichlet, SolutionVanishesOnAndOutsideBoundary) {
    const Grid2D g = test::disc_grid(64);
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, g);
    const PoissonResult r = solve_dirichlet_disc({p.div, PoissonMode::dirichlet_disc, 0.9});
    EXPECT_TRUE(vanishes_outside(r.solution, 0.9, 0.0));
}

TEST(Dirichlet, RadialRightHandSideGivesRadialSolution) {
    const Grid2D g = test::disc_grid(96);
    const ScalarField rhs = sample_bump(Bump{{0, 0}, 0.8, 3.0}, g);
    const ScalarField v = solve_dirichlet_disc({rhs, PoissonMode::dirichlet_disc, 1.0}).solution;
    const int c = g.nx / 2;
    const double scale = v.max_abs();
    for (int d = 1; d < 30; ++d) {
        const double a = v(c + d, c), b = v(c - d, c), e = v(c, c + d), f = v(c, c - d);
        EXPECT_NEAR(a, b, 1e-8 * scale);
        EXPECT_NEAR(a, e, 1e-8 * scale);
        EXPECT_NEAR(a, f, 1e-8 * scale);
        EXPECT_NEAR(v(c + d, c + d), v(c - d, c + d), 1e-8 * scale);
    }
}

TEST(Dirichlet, DiscreteLaplacianReproducesRightHandSide) {
    const Grid2D g = test::disc_grid(64);
    const Phantom p = make_phantom(PhantomKind::potential, {0, 0}, 1.0, g);
    const ScalarField v = solve_dirichlet_disc({p.div, PoissonMode::dirichlet_disc, 1.0}).solution;
    // Five-point Laplacian at samples whose whole stencil is inside the disc.
    double num = 0.0, den = 0.0;
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            if (norm(g.point(i, j)) >= 1.0 - 1.5 * g.h) continue;
            const double lap = (v(i + 1, j) + v(i - 1, j) + v(i, j + 1) + v(i, j - 1) - 4 * v(i, j)) / (g.h * g.h);
            num += (lap - p.div(i, j)) * (lap - p.div(i, j));
            den += p.div(i, j) * p.div(i, j);
        }
    EXPECT_LT(std::sqrt(num / den), 1e-8);
}

TEST(Dirichlet, IsLinear) {
    const Grid2D g = test::disc_grid(64);
    const ScalarField a = sample_bump(Bump{{0.2, 0.1}, 0.5, 1.0}, g);
    const ScalarField b = sample_bump(Bump{{-0.3, 0.0}, 0.6, 1.0}, g);
    auto solve = [](const ScalarField& r) {
        return solve_dirichlet_disc({r, PoissonMode::dirichlet_disc, 1.0}, {1e-13, 20000}).solution;
    };
    const ScalarField lhs = solve(2.0 * a - 3.0 * b);
    const ScalarField rhs = 2.0 * solve(a) - 3.0 * solve(b);
    EXPECT_LT(test::max_rel_diff(lhs, rhs), 1e-10);
}

TEST(Dirichlet, NonConvergenceReportsResidual) {
    const Grid2D g = test::disc_grid(64);
    const Phantom p = make_phantom(PhantomKind::potential, {0, 0}, 1.0, g);
    try {
        solve_dirichlet_disc({p.div, PoissonMode::dirichlet_disc, 1.0}, {1e-14, 3});
        FAIL() << "expected SolverError";
    } catch (const SolverError& e) {
        EXPECT_EQ(e.iterations(), 3);
        EXPECT_GT(e.residual(), 1e-14);
    }
}

TEST(Dirichlet, RejectsWrongModeOrRadius) {
    const Grid2D g = test::disc_grid(32);
    EXPECT_THROW(solve_dirichlet_disc({ScalarField(g), PoissonMode::free_space, 1.0}), ConfigError);
    EXPECT_THROW(solve_dirichlet_disc({ScalarField(g), PoissonMode::dirichlet_disc, 0.0}), ConfigError);
    EXPECT_THROW(solve_free_space({ScalarField(g), PoissonMode::dirichlet_disc, 1.0}), ConfigError);
}

TEST(FreeSpace, SelfCellIntegralMatchesNumericOracle) {
    // Unit square (half-side 1/2): ln(1/2)/2 - 3/2 + pi/4.
    const double exact = log_integral_over_square(0.5);
    EXPECT_NEAR(exact, 0.5 * (std::log(0.5) - 3.0 + std::numbers::pi / 2.0), 1e-15);
    // Midpoint rule on n x n cells; the singular center cell is the unit-square
    // integral scaled by 1/n, contributing (exact + ln(1/n)) / n^2.
    const int n = 801;
    const double numeric = log_square_numeric(1.0, n) + (exact + std::log(1.0 / n)) / (double(n) * n);
    EXPECT_NEAR(exact, numeric, 1e-6);
    for (double a : {0.01, 0.3, 2.0}) {
        const double s = 2 * a;
        const double num = log_square_numeric(s, n) + (log_integral_over_square(a / n));
        EXPECT_NEAR(log_integral_over_square(a), num, 1e-6 * std::max(1.0, s * s)) << a;
    }
}

TEST(FreeSpace, WeightsAreGreenFunctionMidpoints) {
    const double h = 0.1;
    EXPECT_NEAR(free_space_weight(3, 4, h), std::log(0.5) / (2 * std::numbers::pi) * h * h, 1e-15);
    EXPECT_NEAR(free_space_weight(0, 0, h), log_integral_over_square(h / 2) / (2 * std::numbers::pi), 1e-15);
    EXPECT_EQ(free_space_weight(2, -1, h), free_space_weight(-1, 2, h));
}

TEST(FreeSpace, RecoversPhantomComponentFromLaplacian) {
    double prev = 1e9;
    for (int n : {64, 128, 256}) {
        const Grid2D g = test::disc_grid(n);
        const Phantom p = make_phantom(PhantomKind::potential, {0, 0}, 1.0, g);
        const ScalarField f1 = solve_free_space({laplacian(p.field.f1), PoissonMode::free_space, 1.0}).solution;
        const double e = relative_l2(f1, p.field.f1, 1.0);
        EXPECT_LT(e, 2.0 * g.h) << n;
        if (n > 64) {
            EXPECT_LT(e, prev) << n;
        }
        prev = e;
    }
}

TEST(FreeSpace, ZeroGivesZero) {
    const Grid2D g = test::disc_grid(32);
    EXPECT_EQ(solve_free_space({ScalarField(g), PoissonMode::free_space, 1.0}).solution.max_abs(), 0.0);
}

TEST(FreeSpace, MatchesDirectQuadrature) {
    const Grid2D g = test::disc_grid(48);
    const ScalarField rhs = sample_bump(Bump{{0.1, 0.2}, 0.7, 1.0}, g);
    const ScalarField fft = solve_free_space({rhs, PoissonMode::free_space, 1.0}).solution;
    const ScalarField direct = reference::solve_free_space_direct(rhs);
    EXPECT_LT(test::max_rel_diff(fft, direct), 1e-11);
}

TEST(FreeSpace, TranslationEquivariance) {
    const Grid2D g = test::disc_grid(64);
    const Bump b{{0.1, -0.1}, 0.5, 1.0};
    const Bump shifted{b.center + Vec2{g.h, 0.0}, 0.5, 1.0};
    const ScalarField u = solve_free_space({sample_bump(b, g), PoissonMode::free_space, 1.0}).solution;
    const ScalarField s = solve_free_space({sample_bump(shifted, g), PoissonMode::free_space, 1.0}).solution;
    double diff = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i + 1 < g.nx; ++i) diff = std::max(diff, std::abs(s(i + 1, j) - u(i, j)));
    EXPECT_LT(diff, 1e-12 * u.max_abs());
}

TEST(FreeSpace, IsLinear) {
    const Grid2D g = test::disc_grid(64);
    const ScalarField a = sample_bump(Bump{{0.2, 0.1}, 0.5, 1.0}, g);
    const ScalarField b = sample_bump(Bump{{-0.3, 0.0}, 0.6, 1.0}, g);
    auto solve = [](const ScalarField& r) { return solve_free_space({r, PoissonMode::free_space, 1.0}).solution; };
    EXPECT_LT(test::max_rel_diff(solve(2.0 * a - 3.0 * b), 2.0 * solve(a) - 3.0 * solve(b)), 1e-12);
}

TEST(FreeSpace, FarFieldFollowsLogOfTotalMass) {
    const Grid2D g = test::disc_grid(96);
    const ScalarField rhs = sample_bump(Bump{{0.0, 0.0}, 0.8, 1.0}, g);
    double mass = 0.0;
    for (double v : rhs.values()) mass += v * g.h * g.h;
    const ScalarField u = solve_free_space({rhs, PoissonMode::free_space, 1.0}).solution;
    const double expected = mass * std::log(g.r2) / (2 * std::numbers::pi);
    for (double a = 0.0; a < 2 * std::numbers::pi; a += 0.5) {
        const Vec2 p{g.r2 * std::cos(a), g.r2 * std::sin(a)};
        EXPECT_NEAR(u.sample(p), expected, 0.1 * std::abs(expected)) << a;
    }
}
