#include <gtest/gtest.h>

#include <cmath>

#include "gutkin/errors.hpp"
#include "gutkin/support_geometry.hpp"
#include "test_support.hpp"

namespace gutkin {
namespace {

using testing::kPi;

// Independent reference for tan(n d) = n tan(d): the root set of the
// polynomial Im((1 + i t)^n) - n t Re((1 + i t)^n) for small n, reduced by
// hand to quadratics in t^2.
double atan_sqrt(double t2) { return std::atan(std::sqrt(t2)); }

TEST(EvalSupport, ConstantFunction) {
    const auto j = eval_support(SupportCurve::circle(1.0), 0.7);
    EXPECT_DOUBLE_EQ(j.h, 1.0);
    EXPECT_DOUBLE_EQ(j.h_prime, 0.0);
    EXPECT_DOUBLE_EQ(j.h_second, 0.0);
}

TEST(EvalSupport, PentagonalAtZero) {
    const auto j = eval_support(testing::pentagonal_curve(), 0.0);
    EXPECT_NEAR(j.h, 1.0 - 0.05 / 24.0, 1e-15);
    EXPECT_NEAR(j.h, 0.99791667, 1e-8);
    EXPECT_NEAR(j.h_prime, 0.0, 1e-15);
    EXPECT_NEAR(j.h_second, 0.05 * 25.0 / 24.0, 1e-15);
}

TEST(EvalSupport, SineFunction) {
    const SupportCurve s(TrigPolynomial(0.0, {0.0}, {1.0}));
    const auto j = eval_support(s, kPi / 2);
    EXPECT_NEAR(j.h, 1.0, 1e-15);
    EXPECT_NEAR(j.h_prime, 0.0, 1e-15);
    EXPECT_NEAR(j.h_second, -1.0, 1e-15);
    EXPECT_FALSE(s.is_strictly_convex());
}

TEST(CurvatureRadius, Examples) {
    EXPECT_DOUBLE_EQ(curvature_radius(SupportCurve::circle(2.5), 1.234), 2.5);
    const auto c = testing::pentagonal_curve();
    EXPECT_NEAR(curvature_radius(c, 0.0), 1.05, 1e-14);
    EXPECT_NEAR(curvature_radius(c, kPi / 5), 0.95, 1e-14);
    EXPECT_NEAR(c.rho_min(), 0.95, 1e-12);
}

TEST(BoundaryPoint, Examples) {
    const auto circle = SupportCurve::circle(1.0);
    EXPECT_NEAR((boundary_point(circle, 0.0) - Eigen::Vector2d(1, 0)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((boundary_point(circle, kPi / 2) - Eigen::Vector2d(0, 1)).norm(), 0.0, 1e-15);
    const auto x = boundary_point(testing::pentagonal_curve(), 0.0);
    EXPECT_NEAR(x.x(), 0.99791667, 1e-8);
    EXPECT_NEAR(x.y(), 0.0, 1e-15);
}

TEST(BoundaryPoint, SupportIdentityAndClosure) {
    auto rng = testing::make_rng();
    for (const auto& curve : testing::test_tables()) {
        for (int i = 0; i < 50; ++i) {
            const double phi = testing::uniform(rng, -10.0, 10.0);
            const Eigen::Vector2d x = boundary_point(curve, phi);
            EXPECT_NEAR(x.dot(Eigen::Vector2d(std::cos(phi), std::sin(phi))), curve.h()(phi), 1e-14);
            EXPECT_NEAR((x - boundary_point(curve, phi + 2 * kPi)).norm(), 0.0, 1e-13);
        }
    }
}

TEST(BoundaryPoint, NormalIsOutward) {
    // Tangent x'(phi) = rho(phi) (-sin phi, cos phi) is orthogonal to e(phi).
    const auto curve = testing::test_tables()[3];
    const double h = 1e-5;
    for (double phi = 0.0; phi < 6.2; phi += 0.3) {
        const Eigen::Vector2d dx = (boundary_point(curve, phi + h) - boundary_point(curve, phi - h)) / (2 * h);
        EXPECT_NEAR(dx.dot(Eigen::Vector2d(std::cos(phi), std::sin(phi))), 0.0, 1e-9);
        EXPECT_NEAR(dx.dot(Eigen::Vector2d(-std::sin(phi), std::cos(phi))), curvature_radius(curve, phi), 1e-8);
    }
}

TEST(SupportFromRadius, Circle) {
    const auto c = support_from_radius(TrigPolynomial(1.0));
    EXPECT_EQ(c.h().degree(), 0);
    EXPECT_DOUBLE_EQ(c.h().constant(), 1.0);
}

TEST(SupportFromRadius, Pentagonal) {
    const auto c = support_from_radius(TrigPolynomial::harmonic(1.0, 5, 0.05));
    EXPECT_NEAR(c.h().cos_coeff(5), -0.00208333, 1e-8);
    EXPECT_NEAR(c.h().cos_coeff(5), 0.05 / (1.0 - 25.0), 1e-17);
}

TEST(SupportFromRadius, RejectsFirstHarmonic) {
    EXPECT_THROW(support_from_radius(TrigPolynomial::harmonic(1.0, 1, 0.1)), NonClosedCurve);
    EXPECT_THROW(support_from_radius(TrigPolynomial(1.0, {0.0}, {1e-9})), NonClosedCurve);
    EXPECT_NO_THROW(support_from_radius(TrigPolynomial(1.0, {1e-13}, {})));
}

TEST(SupportFromRadius, RejectsNonPositiveRadius) {
    EXPECT_THROW(support_from_radius(TrigPolynomial::harmonic(1.0, 3, 1.0)), NonConvex);
    EXPECT_THROW(support_from_radius(TrigPolynomial(-1.0)), NonConvex);
}

TEST(SupportFromRadius, ReproducesRadiusOnDenseGrid) {
    auto rng = testing::make_rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> c(8, 0.0);
        std::vector<double> s(8, 0.0);
        for (int k = 2; k <= 8; ++k) {
            c[k - 1] = testing::uniform(rng, -0.05, 0.05);
            s[k - 1] = testing::uniform(rng, -0.05, 0.05);
        }
        const TrigPolynomial rho(1.0, c, s);
        const auto curve = support_from_radius(rho);
        EXPECT_DOUBLE_EQ(curve.h().cos_coeff(1), 0.0);
        EXPECT_DOUBLE_EQ(curve.h().sin_coeff(1), 0.0);
        double worst = 0.0;
        for (int i = 0; i < 4096; ++i) {
            const double phi = 2 * kPi * i / 4096;
            worst = std::max(worst, std::abs(curvature_radius(curve, phi) - rho(phi)));
        }
        EXPECT_LT(worst, 1e-12);
    }
}

TEST(SupportCurve, DegreeCap) {
    EXPECT_NO_THROW(SupportCurve(TrigPolynomial::harmonic(1.0, kMaxSupportDegree, 1e-6)));
    EXPECT_THROW(SupportCurve(TrigPolynomial::harmonic(1.0, kMaxSupportDegree + 1, 1e-6)), InvalidHarmonic);
}

TEST(GutkinAngles, ClosedFormsForSmallN) {
    const auto r4 = solve_gutkin_angles(4);
    ASSERT_EQ(r4.size(), 1u);
    EXPECT_NEAR(r4[0], atan_sqrt(5.0), 1e-12);
    EXPECT_NEAR(r4[0], 1.15026, 1e-5);

    const auto r5 = solve_gutkin_angles(5);
    ASSERT_EQ(r5.size(), 1u);
    EXPECT_NEAR(r5[0], atan_sqrt(5.0 / 3.0), 1e-12);
    EXPECT_NEAR(r5[0], 0.91174, 1e-5);

    // n = 7: 3 t^4 - 14 t^2 + 7 = 0.
    const auto r7 = solve_gutkin_angles(7);
    ASSERT_EQ(r7.size(), 2u);
    EXPECT_NEAR(r7[0], atan_sqrt((14.0 - std::sqrt(112.0)) / 6.0), 1e-12);
    EXPECT_NEAR(r7[1], atan_sqrt((14.0 + std::sqrt(112.0)) / 6.0), 1e-12);
}

TEST(GutkinAngles, PropertiesForManyN) {
    for (int n = 4; n <= 20; ++n) {
        const auto roots = solve_gutkin_angles(n);
        EXPECT_EQ(roots.size(), static_cast<std::size_t>(n / 2 - 1)) << "n = " << n;
        double prev = 0.0;
        for (double d : roots) {
            EXPECT_GT(d, prev);
            EXPECT_LT(d, kPi / 2);
            EXPECT_LT(std::abs(std::tan(n * d) - n * std::tan(d)), 1e-10) << "n = " << n << " d = " << d;
            prev = d;
        }
    }
}

TEST(GutkinAngles, LargeNPoleFreeResidual) {
    for (int n = 21; n <= 64; ++n) {
        const auto roots = solve_gutkin_angles(n);
        EXPECT_EQ(roots.size(), static_cast<std::size_t>(n / 2 - 1)) << "n = " << n;
        for (double d : roots) {
            EXPECT_LT(std::abs(std::sin(n * d) * std::cos(d) - n * std::cos(n * d) * std::sin(d)), 1e-12 * n);
        }
    }
}

TEST(GutkinAngles, RejectsSmallN) {
    EXPECT_THROW(solve_gutkin_angles(3), InvalidHarmonic);
    EXPECT_THROW(solve_gutkin_angles(0), InvalidHarmonic);
}

TEST(BuildGutkinTable, Examples) {
    const auto t5 = build_gutkin_table(5, 0, 1.0, 0.05);
    EXPECT_NEAR(t5.delta, 0.91174, 1e-5);
    EXPECT_NEAR(t5.curve.h()(0.0), 0.99791667, 1e-8);
    EXPECT_LT(std::abs(std::tan(5 * t5.delta) - 5 * std::tan(t5.delta)), 1e-10);

    const auto t4 = build_gutkin_table(4, 0, 1.0, 0.05);
    EXPECT_NEAR(t4.delta, 1.15026, 1e-5);
    EXPECT_NEAR(t4.curve.h().cos_coeff(4), -0.05 / 15.0, 1e-17);
    for (double phi : {0.0, 0.4, 1.9}) {
        EXPECT_NEAR(curvature_radius(t4.curve, phi), 1.0 + 0.05 * std::cos(4 * phi), 1e-14);
    }
}

TEST(BuildGutkinTable, Errors) {
    EXPECT_THROW(build_gutkin_table(5, 0, 1.0, 1.0), NonConvex);
    EXPECT_THROW(build_gutkin_table(5, 0, 1.0, -1.5), NonConvex);
    EXPECT_THROW(build_gutkin_table(5, 0, 1.0, 0.0), NonConvex);
    EXPECT_THROW(build_gutkin_table(5, 1, 1.0, 0.05), IndexOutOfRange);
    EXPECT_THROW(build_gutkin_table(7, -1, 1.0, 0.05), IndexOutOfRange);
    EXPECT_THROW(build_gutkin_table(3, 0, 1.0, 0.05), InvalidHarmonic);
}

TEST(ConstantWidth, Examples) {
    const auto circle = check_constant_width(SupportCurve::circle(1.0), 1e-12);
    EXPECT_TRUE(circle.is_constant);
    EXPECT_DOUBLE_EQ(circle.width, 2.0);

    const auto pent = check_constant_width(testing::pentagonal_curve(), 1e-12);
    EXPECT_TRUE(pent.is_constant);
    EXPECT_DOUBLE_EQ(pent.width, 2.0);

    const auto even = check_constant_width(SupportCurve(TrigPolynomial::harmonic(1.0, 4, 0.01)), 1e-12);
    EXPECT_FALSE(even.is_constant);
    EXPECT_NEAR(even.max_deviation, 0.02, 1e-12);
}

TEST(ConstantWidth, OddGutkinTablesHaveConstantWidth) {
    for (int n : {5, 7, 9, 11, 13}) {
        for (std::size_t idx = 0; idx < solve_gutkin_angles(n).size(); ++idx) {
            const auto t = build_gutkin_table(n, static_cast<int>(idx), 1.0, 0.5);
            EXPECT_TRUE(check_constant_width(t.curve, 1e-12).is_constant) << "n = " << n;
        }
    }
    for (int n : {4, 6, 8}) {
        const auto t = build_gutkin_table(n, 0, 1.0, 0.5);
        const auto w = check_constant_width(t.curve, 1e-12);
        EXPECT_FALSE(w.is_constant);
        EXPECT_NEAR(w.max_deviation, 2.0 * 0.5 / (n * n - 1.0), 1e-12);
    }
}

}  // namespace
}  // namespace gutkin
