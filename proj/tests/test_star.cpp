#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "vlt/error.hpp"
#include "vlt/reference.hpp"
#include "vlt/star.hpp"
#include "vlt/vline.hpp"

using namespace vlt;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const Vec2 kDiagonal{1.0 / kSqrt2, 1.0 / kSqrt2};

StarGeometry axes(double c1, double c2) { return StarGeometry({Direction(1, 0), Direction(0, 1)}, {c1, c2}); }

StarGeometry antipodal(double c1, double c2) { return StarGeometry({Direction(1, 0), Direction(-1, 0)}, {c1, c2}); }

void expect_matrix_near(const Mat2& a, const Mat2& b, double tol) {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) EXPECT_NEAR(a[r][c], b[r][c], tol) << r << "," << c;
}

}  // namespace

TEST(StarGeometry, ValidatesRaysAndWeights) {
    EXPECT_THROW(StarGeometry({Direction(1, 0)}, {1.0}), GeometryError);
    EXPECT_THROW(StarGeometry({Direction(1, 0), Direction(1, 0)}, {1.0, 2.0}), GeometryError);
    EXPECT_THROW(axes(1.0, 0.0), ConfigError);
    EXPECT_THROW(StarGeometry({Direction(1, 0), Direction(0, 1)}, {1.0}), ConfigError);
    const StarGeometry eq = StarGeometry::equiangular(3);
    EXPECT_EQ(eq.size(), 3);
    EXPECT_NEAR(dot(eq.gammas()[0].vec(), eq.gammas()[1].vec()), -0.5, 1e-15);
    EXPECT_NEAR(eq.min_r2(1.0), 1.0 / std::sin(std::numbers::pi / 3.0), 1e-12);
}

TEST(Gamma, DirectEvaluation) {
    const Vec2 g = gamma_of_psi(axes(1.0, 1.0), kDiagonal);
    EXPECT_NEAR(g.x, -kSqrt2, 1e-14);
    EXPECT_NEAR(g.y, -kSqrt2, 1e-14);
}

TEST(Gamma, VanishesForSymmetricPair) {
    const StarGeometry sym = antipodal(1.5, -1.5);
    for (double a = 0.05; a < 6.2; a += 0.37) {
        const Vec2 g = gamma_of_psi(sym, Direction::from_angle(a).vec());
        EXPECT_EQ(g.x, 0.0);
        EXPECT_EQ(g.y, 0.0);
    }
}

TEST(Gamma, FlipsWithWeights) {
    const std::vector<Direction> rays{Direction::from_angle(0.2), Direction::from_angle(1.9), Direction::from_angle(4.0)};
    const StarGeometry a(rays, {1.0, -0.5, 2.0}), b(rays, {-1.0, 0.5, -2.0});
    for (double t = 0.1; t < 6.2; t += 0.5) {
        const Vec2 psi = Direction::from_angle(t).vec();
        EXPECT_EQ(gamma_of_psi(a, psi).x, -gamma_of_psi(b, psi).x);
        EXPECT_EQ(gamma_of_psi(a, psi).y, -gamma_of_psi(b, psi).y);
    }
}

TEST(Gamma, OrthogonalDirectionIsTypeOneSingular) {
    try {
        gamma_of_psi(axes(1.0, 1.0), Vec2{0.0, 1.0});
        FAIL() << "expected a singular direction";
    } catch (const SingularDirectionError& e) {
        EXPECT_EQ(e.type(), SingularDirectionError::Type::orthogonal_ray);
        EXPECT_EQ(e.ray_index(), 0);
    }
}

TEST(Q, WorkedInverse) {
    const StarGeometry sg = axes(1.0, -1.0);
    const Vec2 g = gamma_of_psi(sg, kDiagonal);
    EXPECT_NEAR(g.x, -kSqrt2, 1e-14);
    EXPECT_NEAR(g.y, kSqrt2, 1e-14);
    const Mat2 pre = pre_q_of_psi(sg, kDiagonal);
    expect_matrix_near(pre, Mat2{{{-kSqrt2, kSqrt2}, {-kSqrt2, -kSqrt2}}}, 1e-14);
    EXPECT_NEAR(pre[0][0] * pre[1][1] - pre[0][1] * pre[1][0], 4.0, 1e-13);
    const Mat2 q = q_of_psi(sg, kDiagonal);
    expect_matrix_near(q, Mat2{{{-kSqrt2 / 4, -kSqrt2 / 4}, {kSqrt2 / 4, -kSqrt2 / 4}}}, 1e-14);
    EXPECT_NEAR(q_gain(sg, kDiagonal), 0.5, 1e-14);
}

TEST(Q, InvertsThePreInverseMatrix) {
    for (const StarGeometry& sg : test::star_suite(40, 11)) {
        if (classify(sg) == StarClass::symmetric) continue;
        for (double t = 0.013; t < 6.28; t += 0.29) {
            const Vec2 psi = Direction::from_angle(t).vec();
            try {
                const Mat2 id = multiply(q_of_psi(sg, psi), pre_q_of_psi(sg, psi));
                expect_matrix_near(id, Mat2{{{1.0, 0.0}, {0.0, 1.0}}}, 1e-12);
            } catch (const SingularDirectionError&) {
            }
        }
    }
}

TEST(Q, SymmetricGeometryIsSingularEverywhere) {
    const StarGeometry sym = antipodal(2.0, -2.0);
    for (double t = 0.1; t < 6.2; t += 0.7) {
        try {
            q_of_psi(sym, Direction::from_angle(t).vec());
            FAIL() << "no error at angle " << t;
        } catch (const SingularDirectionError& e) {
            EXPECT_EQ(e.type(), SingularDirectionError::Type::vanishing_gamma);
        }
    }
}

TEST(Classify, WorkedExamples) {
    EXPECT_EQ(classify(antipodal(2.0, -2.0)), StarClass::symmetric);
    EXPECT_EQ(classify(antipodal(1.0, 1.0)), StarClass::invertible);
    EXPECT_EQ(classify(StarGeometry::equiangular(3)), StarClass::invertible);
    EXPECT_EQ(classify(StarGeometry({Direction(1, 0), Direction::from_angle(2.0), Direction::from_angle(4.0)}, {1.0, -3.0, 0.2})),
              StarClass::invertible);
}

TEST(Classify, AgreesWithPairingAndPolynomialOnRandomSuite) {
    int symmetric = 0;
    for (const StarGeometry& sg : test::star_suite(200, 2024)) {
        const bool by_pairing = test::symmetric_by_pairing(sg);
        EXPECT_EQ(classify(sg) == StarClass::symmetric, by_pairing);
        EXPECT_EQ(polynomial_vanishes(sg), by_pairing);
        symmetric += by_pairing ? 1 : 0;
    }
    EXPECT_GT(symmetric, 20);
    EXPECT_LT(symmetric, 100);
}

TEST(Classify, InvariantUnderReindexingAndScaling) {
    for (const StarGeometry& sg : test::star_suite(60, 5)) {
        std::vector<Direction> g(sg.gammas().rbegin(), sg.gammas().rend());
        std::vector<double> c(sg.weights().rbegin(), sg.weights().rend());
        for (double& w : c) w *= -3.5;
        EXPECT_EQ(classify(StarGeometry(g, c)), classify(sg));
    }
}

TEST(Polynomial, HomogeneousOfDegreeMMinusOne) {
    for (const StarGeometry& sg : test::star_suite(24, 9)) {
        const StarPolynomial p = star_polynomial(sg);
        EXPECT_EQ(static_cast<int>(p.p1.size()), sg.size());
        const Vec2 psi{0.3, -0.8};
        const Vec2 base = p(psi);
        for (double t : {0.5, 2.0, -1.7}) {
            const Vec2 scaled = p(psi * t);
            const double f = std::pow(t, sg.size() - 1);
            EXPECT_NEAR(scaled.x, f * base.x, 1e-12 * (1.0 + std::abs(f * base.x)));
            EXPECT_NEAR(scaled.y, f * base.y, 1e-12 * (1.0 + std::abs(f * base.y)));
        }
    }
}

TEST(Polynomial, MatchesGammaTimesCommonDenominator) {
    const StarGeometry sg({Direction::from_angle(0.3), Direction::from_angle(1.4), Direction::from_angle(3.9)}, {1.0, 2.0, -0.7});
    const StarPolynomial p = star_polynomial(sg);
    for (double t = 0.2; t < 6.0; t += 0.4) {
        const Vec2 psi = Direction::from_angle(t).vec();
        double denom = 1.0;
        for (const Direction& g : sg.gammas()) denom *= dot(psi, g.vec());
        const Vec2 gam = gamma_of_psi(sg, psi);
        EXPECT_NEAR(p(psi).x, -gam.x * denom, 1e-12);
        EXPECT_NEAR(p(psi).y, -gam.y * denom, 1e-12);
    }
}

TEST(SingularDirections, TypeOneForAxes) {
    const SingularDirections z = singular_directions(axes(1.0, 1.0));
    ASSERT_EQ(z.z1.size(), 4u);
    const double pi = std::numbers::pi;
    const double expected[] = {0.0, pi / 2, pi, 3 * pi / 2};
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(z.z1[static_cast<std::size_t>(k)], expected[k], 1e-14);
    EXPECT_FALSE(z.degenerate);
}

TEST(SingularDirections, SymmetricGeometryIsDegenerate) {
    EXPECT_TRUE(singular_directions(antipodal(1.0, -1.0)).degenerate);
    const StarGeometry four({Direction::from_angle(0.4), Direction::from_angle(1.1), Direction::from_angle(0.4 + std::numbers::pi),
                             Direction::from_angle(1.1 + std::numbers::pi)},
                            {2.0, -1.0, -2.0, 1.0});
    EXPECT_TRUE(singular_directions(four).degenerate);
}

TEST(SingularDirections, EquiangularRootsReevaluateToZero) {
    const StarGeometry sg = StarGeometry::equiangular(3);
    const SingularDirections z = singular_directions(sg);
    EXPECT_EQ(z.z1.size(), 6u);
    for (double a : z.z2) EXPECT_LE(norm(gamma_of_psi(sg, Direction::from_angle(a).vec())), 1e-9);
}

// Choosing the weights in the null space of psi* -> gamma(psi*) makes psi*
// a type-2 singular direction of an otherwise invertible star.
TEST(SingularDirections, FindsPlantedTypeTwoRoot) {
    const std::vector<Direction> g{Direction::from_angle(0.1), Direction::from_angle(2.0), Direction::from_angle(4.4)};
    const double target = 0.9;
    const Vec2 psi = Direction::from_angle(target).vec();
    // Columns a_i = gamma_i / (psi . gamma_i); c = a_1 x a_2 style null vector.
    Vec2 a[3];
    for (int i = 0; i < 3; ++i) a[i] = g[static_cast<std::size_t>(i)].vec() / dot(psi, g[static_cast<std::size_t>(i)].vec());
    const std::vector<double> c{det2(a[2], a[1]), det2(a[0], a[2]), det2(a[1], a[0])};
    const StarGeometry sg(g, c);
    EXPECT_EQ(classify(sg), StarClass::invertible);
    EXPECT_LT(norm(gamma_of_psi(sg, psi)), 1e-12);
    const SingularDirections z = singular_directions(sg);
    bool found = false;
    for (double r : z.z2) found = found || std::abs(r - target) < 1e-10 || std::abs(r - target - std::numbers::pi) < 1e-10;
    EXPECT_TRUE(found);
    for (double r : z.z2) EXPECT_LE(norm(gamma_of_psi(sg, Direction::from_angle(r).vec())), 1e-9);
}

TEST(ForwardStar, TwoRayStarReproducesLAndT) {
    const Grid2D g = test::grid_for(test::default_geometry(), 96);
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, g);
    const TransformField L = forward_L(p.field, test::default_geometry());
    const TransformField T = forward_T(p.field, test::default_geometry());
    const TransformField s = forward_star(p.field, axes(-1.0, 1.0));
    EXPECT_EQ(s.kind, TransformKind::star);
    ASSERT_EQ(s.ncomp(), 2);
    EXPECT_TRUE(test::bit_identical(s.components[0], L.values()));
    EXPECT_TRUE(test::bit_identical(s.components[1], T.values()));
    const TransformField flipped = forward_star(p.field, axes(1.0, -1.0));
    // Exact negation; compared by value so that +0 and -0 agree.
    EXPECT_EQ((flipped.components[0] + L.values()).max_abs(), 0.0);
    EXPECT_EQ((flipped.components[1] + T.values()).max_abs(), 0.0);
}

TEST(ForwardStar, ZeroFieldGivesZero) {
    const StarGeometry sg = StarGeometry::equiangular(3);
    const VectorField zero(test::grid_for(sg, 48));
    const TransformField s = forward_star(zero, sg);
    EXPECT_EQ(s.components[0].max_abs(), 0.0);
    EXPECT_EQ(s.components[1].max_abs(), 0.0);
}

TEST(ForwardStar, MatchesRefinedQuadrature) {
    const StarGeometry sg = StarGeometry::equiangular(3, 1.0, 0.3);
    const Grid2D g = test::grid_for(sg, 128);
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, g);
    const TransformField s = forward_star(p.field, sg);
    const double step = 0.025 * g.h;
    const double scale0 = s.components[0].max_abs(), scale1 = s.components[1].max_abs();
    for (Vec2 x : {Vec2{0, 0}, Vec2{0.3, -0.2}, Vec2{-0.5, 0.4}, Vec2{0.7, 0.6}, Vec2{-1.1, -0.3}}) {
        int i = 0, j = 0;
        g.nearest(x, i, j);
        const Vec2 v = g.point(i, j);
        double e0 = 0.0, e1 = 0.0;
        for (int r = 0; r < sg.size(); ++r) {
            const Vec2 gam = sg.gammas()[static_cast<std::size_t>(r)].vec();
            const double c = sg.weights()[static_cast<std::size_t>(r)];
            e0 += c * reference::divergent_beam(project(p.field, gam), v, gam, step, false);
            e1 += c * reference::divergent_beam(project(p.field, perp(gam)), v, gam, step, false);
        }
        EXPECT_NEAR(s.components[0](i, j), e0, 5e-3 * scale0) << x.x << "," << x.y;
        EXPECT_NEAR(s.components[1](i, j), e1, 5e-3 * scale1) << x.x << "," << x.y;
    }
}

TEST(InvertStar, SymmetricGeometryRejectedUpFront) {
    const StarGeometry sym = antipodal(1.0, -1.0);
    // An empty transform would fail any computation; the check must come first.
    EXPECT_THROW(invert_star(TransformField{}, sym), NonInvertibleError);
}

TEST(InvertStar, FilteredSinogramMatchesRadonOfComponents) {
    const StarGeometry sg = StarGeometry::equiangular(3);
    const Grid2D g = test::grid_for(sg, 128);
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, g);
    StarInversionOptions opt;
    opt.n_angles = 180;
    std::vector<char> guarded;
    const Sinogram q = star_filtered_sinogram(forward_star(p.field, sg), sg, opt, &guarded);
    RadonOptions ro;
    ro.n_angles = opt.n_angles;
    const Sinogram r1 = radon_forward(p.field.f1, ro), r2 = radon_forward(p.field.f2, ro);
    ASSERT_EQ(q.n_offsets, r1.n_offsets);
    for (int c = 0; c < 2; ++c) {
        const Sinogram& r = c == 0 ? r1 : r2;
        double num = 0.0, den = 0.0;
        for (int a = 0; a < q.n_angles; ++a) {
            if (guarded[static_cast<std::size_t>(a)]) continue;
            for (int k = 0; k < q.n_offsets; ++k) {
                const double d = q.at(c, a, k) - r.at(0, a, k);
                num += d * d;
                den += r.at(0, a, k) * r.at(0, a, k);
            }
        }
        EXPECT_LT(std::sqrt(num / den), 0.02) << "component " << c;
    }
}

TEST(InvertStar, ReconstructsMixedPhantom) {
    const StarGeometry sg = StarGeometry::equiangular(3);
    const Grid2D g = test::grid_for(sg, 128);
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, g);
    StarInversionOptions opt;
    opt.n_angles = 180;
    const VectorField f = invert_star(forward_star(p.field, sg), sg, opt);
    EXPECT_LT(relative_l2(f.f1, p.field.f1, 1.0), 0.1);
    EXPECT_LT(relative_l2(f.f2, p.field.f2, 1.0), 0.1);
}

TEST(InvertStar, WeightedFourRayStar) {
    const StarGeometry sg({Direction::from_angle(0.2), Direction::from_angle(1.5), Direction::from_angle(2.9), Direction::from_angle(4.3)},
                          {1.0, -0.6, 1.4, 0.8});
    ASSERT_EQ(classify(sg), StarClass::invertible);
    const Grid2D g = test::grid_for(sg, 128);
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, g);
    StarInversionOptions opt;
    opt.n_angles = 180;
    const VectorField f = invert_star(forward_star(p.field, sg), sg, opt);
    EXPECT_LT(relative_l2(f.f1, p.field.f1, 1.0), 0.1);
    EXPECT_LT(relative_l2(f.f2, p.field.f2, 1.0), 0.1);
}

TEST(InvertStar, ZeroDataAndTooFewAngles) {
    const StarGeometry sg = StarGeometry::equiangular(3);
    const Grid2D g = test::grid_for(sg, 48);
    const TransformField zero(TransformKind::star, ScalarField(g), ScalarField(g));
    StarInversionOptions opt;
    opt.n_angles = 32;
    EXPECT_EQ(invert_star(zero, sg, opt).max_abs(), 0.0);
    opt.n_angles = 18;
    opt.guard_degrees = 10.0;
    EXPECT_THROW(invert_star(zero, sg, opt), ConfigError);
}
