#pragma once

#include <vector>

#include "gutkin/support_geometry.hpp"

namespace gutkin {

/// Oriented line {x : <x, e(phi)> = p} with e(phi) = (cos phi, sin phi).
///
/// The line is traversed in direction (-sin phi, cos phi), i.e. e(phi)
/// rotated by +pi/2. phi is kept on the lift: the billiard map returns
/// phi2 in (phi1, phi1 + 2 pi), so orbits accumulate rotation instead of
/// wrapping. Use reduced_phi() for a value in [0, 2 pi).
struct OrientedLine2D {
    double p;
    double phi;

    double reduced_phi() const;
    Eigen::Vector2d normal() const;
    Eigen::Vector2d direction() const;
};

/// A chord cut out of the table by an oriented line.
///
/// psi_back/psi_fwd are the Gauss parameters (outward normal angles) of the
/// entry and exit points, lifted so that psi_back in (phi - pi, phi) and
/// psi_fwd in (phi, phi + pi). alpha_* are the oriented angles
/// phi - psi_back and psi_fwd - phi in (0, pi); angle_* fold them into
/// (0, pi/2], the unsigned angle between chord and tangent line.
struct ChordData {
    OrientedLine2D line;
    double psi_back;
    double psi_fwd;
    double alpha_back;
    double alpha_fwd;
    double angle_back;
    double angle_fwd;
};

/// Region delta1 <= alpha <= delta2 of the phase cylinder between two
/// constant-angle curves. Requires 0 < delta1 < delta2 <= pi/2.
struct Strip {
    double delta1;
    double delta2;

    Strip(double d1, double d2);
};

/// Chords with an oriented angle below this are treated as tangent.
inline constexpr double kMinChordAngle = 1e-6;

// Generating function S(phi1, phi2) = 2 h((phi1 + phi2)/2) sin((phi2 - phi1)/2).
// All of these throw DegenerateChord unless 0 < phi2 - phi1 < 2 pi.

double generating_value(const SupportCurve& curve, double phi1, double phi2);

struct GeneratingGradient {
    double s1;
    double s2;
};
GeneratingGradient generating_gradient(const SupportCurve& curve, double phi1, double phi2);

struct GeneratingHessian {
    double s11;
    double s12;
    double s22;
};
GeneratingHessian generating_second_derivs(const SupportCurve& curve, double phi1, double phi2);

/// Locates both endpoints of the chord by bracketing sign changes of
/// <x(psi), e(phi)> - p on a uniform grid of 64 Gauss parameters and
/// bisecting. Throws NoIntersection if the line misses the table and
/// TangentLine for (near-)tangent lines.
ChordData chord_incidence_angles(const SupportCurve& curve, const OrientedLine2D& line);

struct Reflection2D {
    OrientedLine2D next;
    ChordData chord;
};

/// One bounce computed by reflecting the travel direction in the tangent
/// line at the exit point.
Reflection2D reflect_geometric(const SupportCurve& curve, const OrientedLine2D& line);

/// One bounce computed from the generating relations
///   p1 = -dS/dphi1(phi1, phi2),  p2 = dS/dphi2(phi1, phi2),
/// solving the first for phi2 in (phi1, phi1 + 2 pi).
OrientedLine2D reflect_variational(const SupportCurve& curve, const OrientedLine2D& line);

/// Line leaving the boundary point with Gauss parameter psi at angle delta
/// to the tangent: phi = psi + delta, p = h(psi) cos(delta) + h'(psi) sin(delta).
OrientedLine2D constant_angle_line(const SupportCurve& curve, double delta, double psi);

/// max over psi on a uniform grid of |arrival angle - delta| for chords that
/// depart at angle delta. Requires grid_size >= 8 and 0 < delta <= pi/2.
double verify_constant_angle(const SupportCurve& curve, double delta, int grid_size);
double verify_constant_angle(const GutkinTable& table, double delta, int grid_size);

/// steps + 1 lines starting with line0.
std::vector<OrientedLine2D> orbit(const SupportCurve& curve, const OrientedLine2D& line0, int steps);

/// Chord data for each line of orbit(curve, line0, steps).
std::vector<ChordData> orbit_chords(const SupportCurve& curve, const OrientedLine2D& line0, int steps);

/// Quadrature of (S11 + 2 S12 + S22) S12 over phi in [0, 2 pi] and alpha in
/// the strip, measured in (phi1, phi2) so the Jacobian 2 of
/// (phi, alpha) -> (phi1, phi2) is included. Gauss-Legendre of quad_order
/// nodes in alpha; periodic trapezoid with max(512, 16 quad_order) nodes in
/// phi. Requires quad_order >= 8.
double rigidity_integral(const SupportCurve& curve, const Strip& strip, int quad_order = 32);

/// Closed form of the same integral:
///   [alpha - sin(alpha) cos(alpha)]_{delta1}^{delta2} * pi * sum_k k^2 (k^2 - 1)(a_k^2 + b_k^2).
double rigidity_integral_closed(const SupportCurve& curve, const Strip& strip);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int order);

}  // namespace gutkin
