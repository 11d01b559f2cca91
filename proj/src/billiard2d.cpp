#include "gutkin/billiard2d.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gutkin/errors.hpp"
#include "gutkin/root_finding.hpp"

namespace gutkin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kChordBrackets = 64;

double wrap_positive(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

struct ChordFrame {
    double phi_bar;
    double alpha;
};

ChordFrame chord_frame(double phi1, double phi2) {
    const double gap = phi2 - phi1;
    if (!(gap > 0.0 && gap < kTwoPi)) {
        throw DegenerateChord("generating function needs 0 < phi2 - phi1 < 2 pi, got " + std::to_string(gap));
    }
    return {0.5 * (phi1 + phi2), 0.5 * gap};
}

void require_convex(const SupportCurve& curve) {
    if (!curve.is_strictly_convex()) {
        throw NonConvex("billiard table is not strictly convex (min rho = " + std::to_string(curve.rho_min()) + ")");
    }
}

double fold_angle(double alpha) { return 0.5 * kPi - std::abs(0.5 * kPi - alpha); }

}  // namespace

double OrientedLine2D::reduced_phi() const { return wrap_positive(phi); }

Eigen::Vector2d OrientedLine2D::normal() const { return {std::cos(phi), std::sin(phi)}; }

Eigen::Vector2d OrientedLine2D::direction() const { return {-std::sin(phi), std::cos(phi)}; }

Strip::Strip(double d1, double d2) : delta1(d1), delta2(d2) {
    if (!(0.0 < d1 && d1 < d2 && d2 <= 0.5 * kPi)) {
        throw InvalidInput("strip needs 0 < delta1 < delta2 <= pi/2");
    }
}

double generating_value(const SupportCurve& curve, double phi1, double phi2) {
    const auto [phi_bar, alpha] = chord_frame(phi1, phi2);
    return 2.0 * curve.h().eval(phi_bar) * std::sin(alpha);
}

GeneratingGradient generating_gradient(const SupportCurve& curve, double phi1, double phi2) {
    const auto [phi_bar, alpha] = chord_frame(phi1, phi2);
    const auto j = eval_support(curve, phi_bar);
    const double s = std::sin(alpha);
    const double c = std::cos(alpha);
    return {j.h_prime * s - j.h * c, j.h_prime * s + j.h * c};
}

GeneratingHessian generating_second_derivs(const SupportCurve& curve, double phi1, double phi2) {
    const auto [phi_bar, alpha] = chord_frame(phi1, phi2);
    const auto j = eval_support(curve, phi_bar);
    const double s = std::sin(alpha);
    const double c = std::cos(alpha);
    const double even = 0.5 * (j.h_second - j.h) * s;
    return {even - j.h_prime * c, 0.5 * (j.h_second + j.h) * s, even + j.h_prime * c};
}

ChordData chord_incidence_angles(const SupportCurve& curve, const OrientedLine2D& line) {
    require_convex(curve);
    const Eigen::Vector2d e = line.normal();
    auto f = [&](double psi) { return boundary_point(curve, psi).dot(e) - line.p; };

    // <x(psi), e> peaks at psi = phi (value h(phi)) and bottoms out at
    // psi = phi + pi; both are grid points below.
    const double top = f(line.phi);
    const double bottom = f(line.phi + kPi);
    if (top < 0.0 || bottom > 0.0) {
        throw NoIntersection("line (p = " + std::to_string(line.p) + ", phi = " + std::to_string(line.phi) +
                             ") misses the table");
    }
    if (top == 0.0 || bottom == 0.0) {
        throw TangentLine("line touches the table");
    }

    double psi_back = 0.0;
    double psi_fwd = 0.0;
    int found_back = 0;
    int found_fwd = 0;
    const double start = line.phi - kPi;
    double a = start;
    double fa = f(a);
    for (int i = 1; i <= kChordBrackets; ++i) {
        const double b = (i == kChordBrackets / 2) ? line.phi : start + kTwoPi * i / kChordBrackets;
        const double fb = (i == kChordBrackets / 2) ? top : f(b);
        if ((fa < 0.0) != (fb < 0.0)) {
            const double root = detail::bisect(f, a, b);
            if (i <= kChordBrackets / 2) {
                psi_back = root;
                ++found_back;
            } else {
                psi_fwd = root;
                ++found_fwd;
            }
        }
        a = b;
        fa = fb;
    }
    if (found_back != 1 || found_fwd != 1) {
        throw ConvergenceFailure("expected exactly two boundary crossings");
    }

    ChordData chord{line, psi_back, psi_fwd, line.phi - psi_back, psi_fwd - line.phi, 0.0, 0.0};
    for (double alpha : {chord.alpha_back, chord.alpha_fwd}) {
        if (alpha < kMinChordAngle || alpha > kPi - kMinChordAngle) {
            throw TangentLine("chord is tangent to the table (alpha = " + std::to_string(alpha) + ")");
        }
    }
    chord.angle_back = fold_angle(chord.alpha_back);
    chord.angle_fwd = fold_angle(chord.alpha_fwd);
    return chord;
}

Reflection2D reflect_geometric(const SupportCurve& curve, const OrientedLine2D& line) {
    const ChordData chord = chord_incidence_angles(curve, line);
    const Eigen::Vector2d hit = boundary_point(curve, chord.psi_fwd);
    const Eigen::Vector2d nu(std::cos(chord.psi_fwd), std::sin(chord.psi_fwd));
    const Eigen::Vector2d d = line.direction();
    const Eigen::Vector2d d_out = d - 2.0 * d.dot(nu) * nu;
    // Outgoing normal is the outgoing direction rotated by -pi/2.
    const Eigen::Vector2d e_out(d_out.y(), -d_out.x());
    const double phi2 = line.phi + wrap_positive(std::atan2(e_out.y(), e_out.x()) - line.phi);
    OrientedLine2D next{hit.dot(e_out), phi2};

    // The bounce point has Gauss parameter (phi1 + phi2)/2.
    if (std::abs(0.5 * (line.phi + phi2) - chord.psi_fwd) > 1e-8) {
        throw ConvergenceFailure("reflection point inconsistent with the mean normal angle");
    }
    return {next, chord};
}

OrientedLine2D reflect_variational(const SupportCurve& curve, const OrientedLine2D& line) {
    require_convex(curve);
    // g(alpha) = -dS/dphi1 - p1 with phi2 = phi1 + 2 alpha; dg/dalpha = -2 S12 < 0.
    auto g = [&](double alpha) {
        const auto j = eval_support(curve, line.phi + alpha);
        const double s = std::sin(alpha);
        const double c = std::cos(alpha);
        return std::pair{j.h * c - j.h_prime * s - line.p, -(j.h_second + j.h) * s};
    };
    const double g0 = g(0.0).first;
    const double gpi = g(kPi).first;
    if (g0 < 0.0 || gpi > 0.0) {
        throw NoIntersection("line (p = " + std::to_string(line.p) + ", phi = " + std::to_string(line.phi) +
                             ") misses the table");
    }
    if (g0 == 0.0 || gpi == 0.0) {
        throw TangentLine("line touches the table");
    }
    const double alpha = detail::safe_newton(g, 0.0, kPi);
    if (alpha < kMinChordAngle || alpha > kPi - kMinChordAngle) {
        throw TangentLine("chord is tangent to the table (alpha = " + std::to_string(alpha) + ")");
    }
    const double phi2 = line.phi + 2.0 * alpha;
    return {generating_gradient(curve, line.phi, phi2).s2, phi2};
}

OrientedLine2D constant_angle_line(const SupportCurve& curve, double delta, double psi) {
    const auto j = eval_support(curve, psi);
    return {j.h * std::cos(delta) + j.h_prime * std::sin(delta), psi + delta};
}

double verify_constant_angle(const SupportCurve& curve, double delta, int grid_size) {
    if (grid_size < 8) throw InvalidInput("verification grid needs at least 8 points");
    if (!(delta > 0.0 && delta <= 0.5 * kPi)) throw InvalidInput("delta must lie in (0, pi/2]");
    double worst = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        const double psi = kTwoPi * i / grid_size;
        const ChordData chord = chord_incidence_angles(curve, constant_angle_line(curve, delta, psi));
        worst = std::max(worst, std::abs(chord.angle_fwd - delta));
    }
    return worst;
}

double verify_constant_angle(const GutkinTable& table, double delta, int grid_size) {
    return verify_constant_angle(table.curve, delta, grid_size);
}

std::vector<OrientedLine2D> orbit(const SupportCurve& curve, const OrientedLine2D& line0, int steps) {
    if (steps < 0) throw InvalidInput("orbit length must be non-negative");
    std::vector<OrientedLine2D> lines;
    lines.reserve(static_cast<std::size_t>(steps) + 1);
    lines.push_back(line0);
    for (int i = 0; i < steps; ++i) {
        lines.push_back(reflect_geometric(curve, lines.back()).next);
    }
    return lines;
}

std::vector<ChordData> orbit_chords(const SupportCurve& curve, const OrientedLine2D& line0, int steps) {
    const auto lines = orbit(curve, line0, steps);
    std::vector<ChordData> chords;
    chords.reserve(lines.size());
    for (const auto& l : lines) chords.push_back(chord_incidence_angles(curve, l));
    return chords;
}

GaussLegendre gauss_legendre(int order) {
    if (order < 1) throw InvalidInput("Gauss-Legendre order must be positive");
    GaussLegendre gl{std::vector<double>(order), std::vector<double>(order)};
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.nodes[i] = -x;
        gl.nodes[order - 1 - i] = x;
        gl.weights[i] = w;
        gl.weights[order - 1 - i] = w;
    }
    return gl;
}

double rigidity_integral(const SupportCurve& curve, const Strip& strip, int quad_order) {
    if (quad_order < 8) throw InvalidInput("rigidity quadrature needs order >= 8");
    const GaussLegendre gl = gauss_legendre(quad_order);
    const int phi_nodes = std::max(512, 16 * quad_order);
    const double half_width = 0.5 * (strip.delta2 - strip.delta1);
    const double mid = 0.5 * (strip.delta1 + strip.delta2);
    const double dphi = kTwoPi / phi_nodes;

    double total = 0.0;
    for (int a = 0; a < quad_order; ++a) {
        const double alpha = mid + half_width * gl.nodes[a];
        double row = 0.0;
        for (int i = 0; i < phi_nodes; ++i) {
            const double phi = dphi * i;
            const auto d2 = generating_second_derivs(curve, phi - alpha, phi + alpha);
            row += (d2.s11 + 2.0 * d2.s12 + d2.s22) * d2.s12;
        }
        total += gl.weights[a] * half_width * row * dphi;
    }
    // d(phi1) d(phi2) = 2 d(phi) d(alpha)
    return 2.0 * total;
}

double rigidity_integral_closed(const SupportCurve& curve, const Strip& strip) {
    auto primitive = [](double a) { return a - std::sin(a) * std::cos(a); };
    const double alpha_factor = primitive(strip.delta2) - primitive(strip.delta1);
    double phi_factor = 0.0;
    const auto& h = curve.h();
    for (int k = 2; k <= h.degree(); ++k) {
        const double kk = static_cast<double>(k) * k;
        const double a = h.cos_coeff(k);
        const double b = h.sin_coeff(k);
        phi_factor += kk * (kk - 1.0) * (a * a + b * b);
    }
    return alpha_factor * kPi * phi_factor;
}

}  // namespace gutkin
