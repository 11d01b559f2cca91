#include "gutkin/support_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

#include "gutkin/errors.hpp"
#include "gutkin/root_finding.hpp"

namespace gutkin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TrigPolynomial radius_of(const TrigPolynomial& h) {
    std::vector<double> c = h.cos_coeffs();
    std::vector<double> s = h.sin_coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        c[i] *= 1.0 - k * k;
        s[i] *= 1.0 - k * k;
    }
    return {h.constant(), std::move(c), std::move(s)};
}

double grid_minimum(const TrigPolynomial& f) {
    double m = f.eval(0.0);
    for (int i = 1; i < kConvexityGrid; ++i) {
        m = std::min(m, f.eval(kTwoPi * i / kConvexityGrid));
    }
    return m;
}

}  // namespace

SupportCurve::SupportCurve() : SupportCurve(TrigPolynomial(1.0)) {}

SupportCurve::SupportCurve(TrigPolynomial h) : h_(std::move(h)) {
    if (h_.degree() > kMaxSupportDegree) {
        throw InvalidHarmonic("supporting function degree " + std::to_string(h_.degree()) + " exceeds " +
                              std::to_string(kMaxSupportDegree));
    }
    rho_ = radius_of(h_);
    rho_min_ = grid_minimum(rho_);
}

SupportCurve SupportCurve::circle(double radius) { return SupportCurve(TrigPolynomial(radius)); }

SupportJet eval_support(const SupportCurve& curve, double phi) {
    const auto j = curve.h().eval_jet(phi);
    return {j.value, j.d1, j.d2};
}

double curvature_radius(const SupportCurve& curve, double phi) {
    const auto j = curve.h().eval_jet(phi);
    return j.d2 + j.value;
}

Eigen::Vector2d boundary_point(const SupportCurve& curve, double phi) {
    const auto j = curve.h().eval_jet(phi);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {j.value * c - j.d1 * s, j.value * s + j.d1 * c};
}

SupportCurve support_from_radius(const TrigPolynomial& rho) {
    if (std::abs(rho.cos_coeff(1)) >= 1e-12 || std::abs(rho.sin_coeff(1)) >= 1e-12) {
        throw NonClosedCurve("curvature radius has a nonzero first harmonic");
    }
    std::vector<double> c = rho.cos_coeffs();
    std::vector<double> s = rho.sin_coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i == 0) {
            c[i] = 0.0;
            s[i] = 0.0;
            continue;
        }
        const double k = static_cast<double>(i + 1);
        c[i] /= 1.0 - k * k;
        s[i] /= 1.0 - k * k;
    }
    SupportCurve curve(TrigPolynomial(rho.constant(), std::move(c), std::move(s)));
    if (!curve.is_strictly_convex()) {
        throw NonConvex("curvature radius is not positive (min rho = " + std::to_string(curve.rho_min()) + ")");
    }
    return curve;
}

std::vector<double> solve_gutkin_angles(int n) {
    if (n < 4) {
        throw InvalidHarmonic("tan(n d) = n tan(d) needs n >= 4, got " + std::to_string(n));
    }
    // sin(n d) cos(d) - n cos(n d) sin(d) has the same zeros as
    // tan(n d) - n tan(d) inside (0, pi/2) and no poles. It vanishes to third
    // order at d = 0 and, for odd n, also at d = pi/2; both are excluded.
    const double dn = static_cast<double>(n);
    auto fdf = [dn](double d) {
        const double sn = std::sin(dn * d);
        const double cn = std::cos(dn * d);
        const double s = std::sin(d);
        const double c = std::cos(d);
        const double f = sn * c - dn * cn * s;
        const double df = (dn * dn - 1.0) * sn * s;
        return std::pair{f, df};
    };

    const double half_pi = 0.5 * std::numbers::pi;
    const int cells = 64 * n;
    const double lo_edge = 1e-3 / dn;
    const double hi_edge = half_pi - 1e-3 / dn;
    std::vector<double> roots;
    double a = lo_edge;
    double fa = fdf(a).first;
    for (int i = 1; i <= cells; ++i) {
        const double b = lo_edge + (hi_edge - lo_edge) * i / cells;
        const double fb = fdf(b).first;
        if ((fa < 0.0) != (fb < 0.0)) {
            roots.push_back(detail::safe_newton(fdf, a, b));
        }
        a = b;
        fa = fb;
    }
    const auto expected = static_cast<std::size_t>(n / 2 - 1);
    if (roots.size() != expected) {
        std::cerr << "warning: tan(" << n << " d) = " << n << " tan(d) gave " << roots.size()
                  << " roots in (0, pi/2), expected " << expected << '\n';
    }
    return roots;
}

GutkinTable build_gutkin_table(int n, int root_index, double a0, double an) {
    if (!(a0 > std::abs(an)) || an == 0.0) {
        throw NonConvex("Gutkin table needs a0 > |an| > 0 (a0 = " + std::to_string(a0) +
                        ", an = " + std::to_string(an) + ")");
    }
    const auto roots = solve_gutkin_angles(n);
    if (root_index < 0 || static_cast<std::size_t>(root_index) >= roots.size()) {
        throw IndexOutOfRange("root index " + std::to_string(root_index) + " out of range for n = " +
                              std::to_string(n) + " (" + std::to_string(roots.size()) + " roots)");
    }
    const double dn = static_cast<double>(n);
    SupportCurve curve(TrigPolynomial::harmonic(a0, n, -an / (dn * dn - 1.0)));
    return {std::move(curve), n, roots[static_cast<std::size_t>(root_index)], a0, an};
}

WidthCheck check_constant_width(const SupportCurve& curve, double tol) {
    // h(phi) + h(phi + pi) = 2 h_0 + 2 * (even harmonics of h).
    const auto& h = curve.h();
    std::vector<double> c(h.size(), 0.0);
    std::vector<double> s(h.size(), 0.0);
    for (std::size_t i = 1; i < h.size(); i += 2) {
        c[i] = 2.0 * h.cos_coeffs()[i];
        s[i] = 2.0 * h.sin_coeffs()[i];
    }
    const TrigPolynomial excess(0.0, std::move(c), std::move(s));
    double dev = 0.0;
    for (int i = 0; i < kConvexityGrid; ++i) {
        const double phi = kTwoPi * i / kConvexityGrid;
        dev = std::max(dev, std::abs(h.eval(phi) + h.eval(phi + std::numbers::pi) - 2.0 * h.constant()));
        dev = std::max(dev, std::abs(excess.eval(phi)));
    }
    return {dev < tol, 2.0 * h.constant(), dev};
}

}  // namespace gutkin
