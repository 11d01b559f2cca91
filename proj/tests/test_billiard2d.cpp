#include <gtest/gtest.h>

#include <cmath>

#include "gutkin/billiard2d.hpp"
#include "gutkin/errors.hpp"
#include "test_support.hpp"

namespace gutkin {
namespace {

using testing::kPi;

OrientedLine2D random_line(const SupportCurve& curve, std::mt19937_64& rng) {
    const double phi = testing::uniform(rng, 0.0, 2 * kPi);
    const double hi = curve.h()(phi);
    const double lo = -curve.h()(phi + kPi);
    return {lo + (hi - lo) * testing::uniform(rng, 0.02, 0.98), phi};
}

double line_offset(const SupportCurve& curve, const OrientedLine2D& line, double psi) {
    return boundary_point(curve, psi).dot(line.normal()) - line.p;
}

double pentagonal_delta() { return std::atan(std::sqrt(5.0 / 3.0)); }

TEST(OrientedLine2D, Frame) {
    const OrientedLine2D l{0.3, 2 * kPi + 0.5};
    EXPECT_NEAR(l.reduced_phi(), 0.5, 1e-15);
    EXPECT_NEAR(l.normal().dot(l.direction()), 0.0, 1e-15);
    // direction is the normal rotated counterclockwise
    EXPECT_NEAR(l.normal().x() * l.direction().y() - l.normal().y() * l.direction().x(), 1.0, 1e-15);
}

TEST(Strip, Validation) {
    EXPECT_NO_THROW(Strip(0.1, kPi / 2));
    EXPECT_THROW(Strip(0.0, 1.0), InvalidInput);
    EXPECT_THROW(Strip(1.0, 0.5), InvalidInput);
    EXPECT_THROW(Strip(0.2, 2.0), InvalidInput);
}

TEST(GeneratingFunction, Examples) {
    const auto circle = SupportCurve::circle(1.0);
    EXPECT_NEAR(generating_value(circle, 0.0, kPi / 2), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(generating_value(circle, 0.0, kPi), 2.0, 1e-15);

    const auto pent = testing::pentagonal_curve();
    const double d = 0.91174;
    const double expected = 2.0 * (1.0 - 0.05 / 24.0 * std::cos(5.0 * d)) * std::sin(d);
    EXPECT_NEAR(generating_value(pent, 0.0, 2 * d), expected, 1e-15);

    const auto h = generating_second_derivs(circle, 0.0, kPi / 2);
    EXPECT_NEAR(h.s11, -0.353553, 1e-6);
    EXPECT_NEAR(h.s22, -0.353553, 1e-6);
    EXPECT_NEAR(h.s12, 0.353553, 1e-6);
    const auto hd = generating_second_derivs(circle, 0.0, kPi);
    EXPECT_NEAR(hd.s11, -0.5, 1e-15);
    EXPECT_NEAR(hd.s12, 0.5, 1e-15);
    EXPECT_NEAR(hd.s22, -0.5, 1e-15);
}

TEST(GeneratingFunction, DegenerateChord) {
    const auto c = SupportCurve::circle(1.0);
    EXPECT_THROW(generating_value(c, 1.0, 1.0), DegenerateChord);
    EXPECT_THROW(generating_value(c, 1.0, 0.5), DegenerateChord);
    EXPECT_THROW(generating_gradient(c, 0.0, 2 * kPi), DegenerateChord);
    EXPECT_THROW(generating_second_derivs(c, 0.0, 7.0), DegenerateChord);
}

// Five-point stencils: at step 1e-3 the truncation error is O(e^4) while the
// rounding error stays near 1e-10.
template <class F>
double fd_d1(F f, double x, double e) {
    return (-f(x + 2 * e) + 8 * f(x + e) - 8 * f(x - e) + f(x - 2 * e)) / (12 * e);
}

template <class F>
double fd_d2(F f, double x, double e) {
    return (-f(x + 2 * e) + 16 * f(x + e) - 30 * f(x) + 16 * f(x - e) - f(x - 2 * e)) / (12 * e * e);
}

TEST(GeneratingFunction, DerivativesMatchFiniteDifferences) {
    auto rng = testing::make_rng(5);
    for (const auto& curve : testing::test_tables()) {
        for (int i = 0; i < 200; ++i) {
            const double a = testing::uniform(rng, 0.0, 2 * kPi);
            const double b = a + testing::uniform(rng, 0.05, 2 * kPi - 0.05);
            auto S = [&](double x, double y) { return generating_value(curve, x, y); };
            const double e = 1e-5;
            const auto g = generating_gradient(curve, a, b);
            EXPECT_NEAR(g.s1, (S(a + e, b) - S(a - e, b)) / (2 * e), 1e-9);
            EXPECT_NEAR(g.s2, (S(a, b + e) - S(a, b - e)) / (2 * e), 1e-9);
            const double E = 1e-3;
            const auto H = generating_second_derivs(curve, a, b);
            EXPECT_NEAR(H.s11, fd_d2([&](double x) { return S(x, b); }, a, E), 1e-6);
            EXPECT_NEAR(H.s22, fd_d2([&](double y) { return S(a, y); }, b, E), 1e-6);
            const double fd12 = fd_d1([&](double x) { return fd_d1([&](double y) { return S(x, y); }, b, E); }, a, E);
            EXPECT_NEAR(H.s12, fd12, 1e-6);
            EXPECT_GT(H.s12, 0.0);
        }
    }
}

TEST(ChordIncidence, CircleExamples) {
    const auto circle = SupportCurve::circle(1.0);
    const auto c = chord_incidence_angles(circle, {0.5, 0.0});
    EXPECT_NEAR(c.angle_back, kPi / 3, 1e-12);
    EXPECT_NEAR(c.angle_fwd, kPi / 3, 1e-12);
    EXPECT_NEAR(c.psi_back, -kPi / 3, 1e-12);
    EXPECT_NEAR(c.psi_fwd, kPi / 3, 1e-12);
    const auto d = chord_incidence_angles(circle, {0.0, 0.0});
    EXPECT_NEAR(d.angle_back, kPi / 2, 1e-12);
    EXPECT_NEAR(d.angle_fwd, kPi / 2, 1e-12);
}

TEST(ChordIncidence, Errors) {
    const auto circle = SupportCurve::circle(1.0);
    EXPECT_THROW(chord_incidence_angles(circle, {1.5, 0.3}), NoIntersection);
    EXPECT_THROW(chord_incidence_angles(circle, {-1.5, 0.3}), NoIntersection);
    EXPECT_THROW(chord_incidence_angles(circle, {1.0, 0.3}), TangentLine);
    EXPECT_THROW(reflect_geometric(circle, {2.0, 0.0}), NoIntersection);
    EXPECT_THROW(reflect_variational(circle, {2.0, 0.0}), NoIntersection);
    const SupportCurve flat(TrigPolynomial(0.0, {0.0}, {1.0}));
    EXPECT_THROW(chord_incidence_angles(flat, {0.0, 0.0}), NonConvex);
}

TEST(ChordIncidence, EndpointsOnLineAndTravelOrder) {
    auto rng = testing::make_rng(9);
    for (const auto& curve : testing::test_tables()) {
        for (int i = 0; i < 100; ++i) {
            const auto line = random_line(curve, rng);
            const auto c = chord_incidence_angles(curve, line);
            EXPECT_LT(std::abs(line_offset(curve, line, c.psi_back)), 1e-10);
            EXPECT_LT(std::abs(line_offset(curve, line, c.psi_fwd)), 1e-10);
            const Eigen::Vector2d chord = boundary_point(curve, c.psi_fwd) - boundary_point(curve, c.psi_back);
            EXPECT_GT(chord.dot(line.direction()), 0.0);
            EXPECT_GT(c.angle_back, 0.0);
            EXPECT_LE(c.angle_back, kPi / 2);
            // independent angle: chord against the tangent at the exit point
            const Eigen::Vector2d t(-std::sin(c.psi_fwd), std::cos(c.psi_fwd));
            const double ang = std::acos(std::min(1.0, std::abs(chord.normalized().dot(t))));
            EXPECT_NEAR(ang, c.angle_fwd, 1e-9);
        }
    }
}

TEST(ReflectGeometric, CircleExamples) {
    const auto circle = SupportCurve::circle(1.0);
    const auto r = reflect_geometric(circle, {0.5, 0.0});
    EXPECT_NEAR(r.next.p, 0.5, 1e-12);
    EXPECT_NEAR(r.next.phi, 2 * kPi / 3, 1e-12);
    const auto d = reflect_geometric(circle, {0.0, 1.2});
    EXPECT_NEAR(d.next.p, 0.0, 1e-12);
    EXPECT_NEAR(d.next.phi, 1.2 + kPi, 1e-12);
}

TEST(ReflectGeometric, BilliardLawAndExactForms) {
    auto rng = testing::make_rng(13);
    for (const auto& curve : testing::test_tables()) {
        for (int i = 0; i < 100; ++i) {
            const auto line = random_line(curve, rng);
            const auto r = reflect_geometric(curve, line);
            const auto out = chord_incidence_angles(curve, r.next);
            EXPECT_NEAR(r.chord.angle_fwd, out.angle_back, 1e-10);
            // the bounce point is shared by the two chords
            const Eigen::Vector2d P = boundary_point(curve, r.chord.psi_fwd);
            EXPECT_LT((P - boundary_point(curve, out.psi_back)).norm(), 1e-9);
            EXPECT_NEAR(P.dot(r.next.normal()), r.next.p, 1e-10);
            // the tangent at P bisects the two directions
            const Eigen::Vector2d nu(std::cos(r.chord.psi_fwd), std::sin(r.chord.psi_fwd));
            const Eigen::Vector2d v1 = line.direction();
            const Eigen::Vector2d v2 = r.next.direction();
            EXPECT_LT((v2 - (v1 - 2 * v1.dot(nu) * nu)).norm(), 1e-9);
            const auto g = generating_gradient(curve, line.phi, r.next.phi);
            EXPECT_NEAR(line.p, -g.s1, 1e-9);
            EXPECT_NEAR(r.next.p, g.s2, 1e-9);
        }
    }
}

TEST(ReflectVariational, CircleExamples) {
    const auto circle = SupportCurve::circle(1.0);
    const auto r = reflect_variational(circle, {0.5, 0.0});
    EXPECT_NEAR(r.p, 0.5, 1e-12);
    EXPECT_NEAR(r.phi, 2 * kPi / 3, 1e-12);
    const auto s = reflect_variational(circle, {std::cos(0.3), 1.1});
    EXPECT_NEAR(s.p, std::cos(0.3), 1e-12);
    EXPECT_NEAR(s.phi, 1.1 + 0.6, 1e-12);
}

TEST(ReflectVariational, AgreesWithGeometric) {
    auto rng = testing::make_rng(17);
    for (const auto& curve : testing::test_tables()) {
        for (int i = 0; i < 1000; ++i) {
            const auto line = random_line(curve, rng);
            const auto g = reflect_geometric(curve, line).next;
            const auto v = reflect_variational(curve, line);
            ASSERT_NEAR(g.p, v.p, 1e-9);
            ASSERT_NEAR(g.phi, v.phi, 1e-9);
        }
    }
}

TEST(ReflectGeometric, Reversibility) {
    // Reversing a line maps (p, phi) to (-p, phi + pi).
    auto rng = testing::make_rng(19);
    for (const auto& curve : testing::test_tables()) {
        for (int i = 0; i < 50; ++i) {
            const auto line = random_line(curve, rng);
            const auto next = reflect_geometric(curve, line).next;
            const auto back = reflect_geometric(curve, {-next.p, next.phi + kPi}).next;
            EXPECT_NEAR(back.p, -line.p, 1e-9);
            EXPECT_NEAR(std::remainder(back.phi - line.phi - kPi, 2 * kPi), 0.0, 1e-9);
        }
    }
}

TEST(ConstantAngleLine, Examples) {
    const auto circle = SupportCurve::circle(1.0);
    const auto l = constant_angle_line(circle, kPi / 3, 0.0);
    EXPECT_NEAR(l.p, 0.5, 1e-15);
    EXPECT_NEAR(l.phi, kPi / 3, 1e-15);
    const auto d = constant_angle_line(circle, kPi / 2, 0.8);
    EXPECT_NEAR(d.p, 0.0, 1e-15);
    EXPECT_NEAR(d.phi, 0.8 + kPi / 2, 1e-15);

    const auto pent = testing::pentagonal_curve();
    const double delta = 0.91174;
    const auto g = constant_angle_line(pent, delta, 0.0);
    EXPECT_NEAR(g.p, (1.0 - 0.05 / 24.0) * std::cos(delta), 1e-15);
    EXPECT_NEAR(g.phi, delta, 1e-15);
}

TEST(ConstantAngleLine, DepartsFromBoundaryAtAngle) {
    auto rng = testing::make_rng(23);
    for (const auto& curve : testing::test_tables()) {
        for (int i = 0; i < 50; ++i) {
            const double psi = testing::uniform(rng, 0.0, 2 * kPi);
            const double delta = testing::uniform(rng, 0.05, kPi / 2);
            const auto line = constant_angle_line(curve, delta, psi);
            const auto c = chord_incidence_angles(curve, line);
            EXPECT_NEAR(std::remainder(c.psi_back - psi, 2 * kPi), 0.0, 1e-9);
            EXPECT_NEAR(c.angle_back, delta, 1e-9);
        }
    }
}

TEST(VerifyConstantAngle, Circle) {
    for (double delta : {0.2, 0.7, kPi / 2}) {
        EXPECT_LT(verify_constant_angle(SupportCurve::circle(1.0), delta, 360), 1e-12);
    }
}

TEST(VerifyConstantAngle, GutkinTable) {
    const auto t = build_gutkin_table(5, 0, 1.0, 0.05);
    EXPECT_LT(verify_constant_angle(t, t.delta, 360), 1e-8);
    EXPECT_GT(verify_constant_angle(t, t.delta + 0.1, 360), 1e-3);
    EXPECT_GT(verify_constant_angle(t, 0.5, 360), 1e-3);
}

TEST(VerifyConstantAngle, AllRootsForSeveralN) {
    for (int n : {4, 6, 7, 8, 9}) {
        const auto roots = solve_gutkin_angles(n);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const auto t = build_gutkin_table(n, static_cast<int>(i), 1.0, 0.05);
            EXPECT_LT(verify_constant_angle(t, t.delta, 90), 1e-8) << "n = " << n << " root " << i;
        }
    }
}

TEST(VerifyConstantAngle, Errors) {
    const auto c = SupportCurve::circle(1.0);
    EXPECT_THROW(verify_constant_angle(c, 0.5, 7), InvalidInput);
    EXPECT_THROW(verify_constant_angle(c, 0.0, 16), InvalidInput);
    EXPECT_THROW(verify_constant_angle(c, 2.0, 16), InvalidInput);
}

TEST(Orbit, CircleExamples) {
    const auto circle = SupportCurve::circle(1.0);
    const auto o = orbit(circle, {0.5, 0.0}, 3);
    ASSERT_EQ(o.size(), 4u);
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(o[i].p, 0.5, 1e-12);
        EXPECT_NEAR(o[i].phi, 2 * kPi * i / 3, 1e-12);
    }
    const auto q = orbit(circle, {std::cos(kPi / 4), 0.0}, 8);
    EXPECT_NEAR(q.back().p, q.front().p, 1e-12);
    EXPECT_NEAR(q.back().phi, 4 * kPi, 1e-11);
    EXPECT_NEAR(q.back().reduced_phi() - 2 * kPi * std::round(q.back().reduced_phi() / (2 * kPi)), 0.0, 1e-11);
}

TEST(Orbit, BilliardLawAlongOrbit) {
    auto rng = testing::make_rng(29);
    for (const auto& curve : testing::test_tables()) {
        const auto chords = orbit_chords(curve, random_line(curve, rng), 60);
        ASSERT_EQ(chords.size(), 61u);
        for (std::size_t i = 0; i + 1 < chords.size(); ++i) {
            EXPECT_NEAR(chords[i].angle_fwd, chords[i + 1].angle_back, 1e-9);
        }
    }
}

TEST(Orbit, GutkinTableStaysOnConstantAngleCurve) {
    const auto t = build_gutkin_table(5, 0, 1.0, 0.05);
    const auto chords = orbit_chords(t.curve, constant_angle_line(t.curve, t.delta, 0.37), 200);
    for (const auto& c : chords) {
        EXPECT_NEAR(c.angle_back, t.delta, 1e-8);
        EXPECT_NEAR(c.angle_fwd, t.delta, 1e-8);
    }
}

TEST(Orbit, CircleKeepsP) {
    const auto o = orbit(SupportCurve::circle(2.0), constant_angle_line(SupportCurve::circle(2.0), 0.4, 0.0), 500);
    for (std::size_t i = 1; i < o.size(); ++i) EXPECT_NEAR(o[i].p, o[i - 1].p, 1e-13);
    EXPECT_NEAR(o.back().p, 2.0 * std::cos(0.4), 1e-12);
}

TEST(Orbit, InvariantMeasureOnTwoSteps) {
    // Jacobian of the map (p, phi) -> (p', phi') has unit determinant.
    auto rng = testing::make_rng(31);
    const double e = 1e-6;
    for (const auto& curve : testing::test_tables()) {
        for (int i = 0; i < 20; ++i) {
            const auto l = random_line(curve, rng);
            auto F = [&](double p, double phi) {
                const auto r = reflect_geometric(curve, {p, phi}).next;
                return Eigen::Vector2d(r.p, r.phi);
            };
            const Eigen::Vector2d dp = (F(l.p + e, l.phi) - F(l.p - e, l.phi)) / (2 * e);
            const Eigen::Vector2d dphi = (F(l.p, l.phi + e) - F(l.p, l.phi - e)) / (2 * e);
            EXPECT_NEAR(dp.x() * dphi.y() - dp.y() * dphi.x(), 1.0, 1e-5);
        }
    }
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    const auto gl = gauss_legendre(8);
    ASSERT_EQ(gl.nodes.size(), 8u);
    for (int deg = 0; deg <= 15; ++deg) {
        double s = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], deg);
        const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
        EXPECT_NEAR(s, exact, 1e-14) << deg;
    }
}

// Reference value built from the Fourier coefficients of h: on a strip the
// integral factorises into the alpha part [a - sin a cos a] and
// pi * sum k^2 (k^2 - 1)(a_k^2 + b_k^2).
double reference_rigidity(const SupportCurve& c, double d1, double d2) {
    const auto& h = c.h();
    double sum = 0.0;
    for (int k = 1; k <= h.degree(); ++k) {
        const double a = h.cos_coeff(k);
        const double b = h.sin_coeff(k);
        sum += k * k * (k * k - 1.0) * (a * a + b * b);
    }
    auto g = [](double a) { return a - std::sin(a) * std::cos(a); };
    return (g(d2) - g(d1)) * kPi * sum;
}

TEST(Rigidity, PentagonalExample) {
    const auto t = build_gutkin_table(5, 0, 1.0, 0.05);
    const Strip strip(t.delta, kPi / 2);
    EXPECT_NEAR(kPi * 25 * 0.0025 / 24, 8.1812e-3, 1e-7);
    const double ref = reference_rigidity(t.curve, t.delta, kPi / 2);
    EXPECT_NEAR(ref, 9.35e-3, 1e-5);
    EXPECT_NEAR(rigidity_integral_closed(t.curve, strip), ref, 1e-15);
    EXPECT_NEAR(rigidity_integral(t.curve, strip) / ref, 1.0, 1e-6);
}

TEST(Rigidity, QuadratureMatchesClosedForm) {
    auto rng = testing::make_rng(37);
    for (const auto& curve : testing::test_tables()) {
        for (int i = 0; i < 5; ++i) {
            const double d1 = testing::uniform(rng, 0.01, 1.0);
            const double d2 = testing::uniform(rng, d1 + 0.05, kPi / 2);
            const Strip strip(d1, d2);
            const double closed = rigidity_integral_closed(curve, strip);
            const double quad = rigidity_integral(curve, strip);
            EXPECT_NEAR(closed, reference_rigidity(curve, d1, d2), 1e-15);
            if (curve.h().degree() <= 1) {
                EXPECT_NEAR(quad, 0.0, 1e-10);
            } else {
                EXPECT_NEAR(quad / closed, 1.0, 1e-6);
                EXPECT_GT(quad, 0.0);
            }
        }
    }
}

TEST(Rigidity, TranslationDoesNotContribute) {
    const SupportCurve c(TrigPolynomial(1.0, {0.3}, {-0.2}));
    const Strip strip(0.2, 1.4);
    EXPECT_NEAR(rigidity_integral(c, strip), 0.0, 1e-10);
    EXPECT_DOUBLE_EQ(rigidity_integral_closed(c, strip), 0.0);
}

TEST(Rigidity, Wirtinger) {
    const SupportCurve c(TrigPolynomial::harmonic(1.0, 2, 0.01));
    for (double d1 : {0.05, 0.5, 1.2}) {
        EXPECT_GT(rigidity_integral(c, Strip(d1, d1 + 0.3)), 0.0);
    }
    EXPECT_THROW(rigidity_integral(c, Strip(0.1, 0.2), 4), InvalidInput);
}

}  // namespace
}  // namespace gutkin
