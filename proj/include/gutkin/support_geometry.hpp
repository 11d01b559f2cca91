#pragma once

#include <vector>

#include <Eigen/Core>

#include "gutkin/trig_polynomial.hpp"

namespace gutkin {

/// Highest harmonic accepted for a supporting function. The convexity test
/// samples rho on a 4096-point grid, which resolves trig polynomials up to
/// this degree.
inline constexpr int kMaxSupportDegree = 64;
inline constexpr int kConvexityGrid = 4096;
/// rho_min must exceed this for the curve to count as strictly convex.
inline constexpr double kConvexityMargin = 1e-9;

/// Planar convex body described by its supporting function h(phi), where phi
/// is the angle of the outward normal. The curvature radius is
/// rho = h'' + h.
///
/// The constructor accepts any h up to kMaxSupportDegree; strict convexity is
/// reported by is_strictly_convex() and enforced by the operations that need
/// it.
class SupportCurve {
public:
    SupportCurve();
    explicit SupportCurve(TrigPolynomial h);

    static SupportCurve circle(double radius);

    const TrigPolynomial& h() const { return h_; }
    /// rho = h'' + h as a trig polynomial (harmonic k scaled by 1 - k^2).
    const TrigPolynomial& rho() const { return rho_; }
    /// Minimum of rho over the convexity grid.
    double rho_min() const { return rho_min_; }
    bool is_strictly_convex() const { return rho_min_ > kConvexityMargin; }

private:
    TrigPolynomial h_;
    TrigPolynomial rho_;
    double rho_min_;
};

struct SupportJet {
    double h;
    double h_prime;
    double h_second;
};

SupportJet eval_support(const SupportCurve& curve, double phi);

double curvature_radius(const SupportCurve& curve, double phi);

/// Boundary point with outward normal angle phi:
///   x = h(phi) e(phi) + h'(phi) e'(phi), e(phi) = (cos phi, sin phi).
Eigen::Vector2d boundary_point(const SupportCurve& curve, double phi);

/// Supporting function with h'' + h = rho and vanishing first harmonics
/// (Steiner point at the origin).
///
/// Throws NonClosedCurve if rho carries a first harmonic above 1e-12 and
/// NonConvex if rho is not strictly positive.
SupportCurve support_from_radius(const TrigPolynomial& rho);

/// Roots of tan(n d) = n tan(d) in the open interval (0, pi/2), increasing.
/// Throws InvalidHarmonic if n < 4.
std::vector<double> solve_gutkin_angles(int n);

/// Table whose curvature radius is a0 + an cos(n phi), with delta one of the
/// roots of tan(n d) = n tan(d).
struct GutkinTable {
    SupportCurve curve;
    int n;
    double delta;
    double a0;
    double an;
};

/// Throws NonConvex unless a0 > |an| > 0, IndexOutOfRange for a bad
/// root_index and InvalidHarmonic for n < 4.
GutkinTable build_gutkin_table(int n, int root_index, double a0, double an);

struct WidthCheck {
    bool is_constant;
    /// Mean width 2 h_0.
    double width;
    /// max over the grid of |h(phi) + h(phi + pi) - width|.
    double max_deviation;
};

WidthCheck check_constant_width(const SupportCurve& curve, double tol);

}  // namespace gutkin
