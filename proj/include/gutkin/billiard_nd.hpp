#pragma once

#include <Eigen/Core>

namespace gutkin {

/// Ellipsoid {x : <A^{-1} x, x> = 1} in R^d for a symmetric positive-definite A.
class Quadric {
public:
    /// Throws InvalidInput if A is not square, not symmetric to 1e-14, not
    /// positive definite, or d < 2.
    explicit Quadric(Eigen::MatrixXd A);

    static Quadric sphere(int d, double radius);
    static Quadric diagonal(const Eigen::VectorXd& semi_axes_squared);

    int dim() const { return static_cast<int>(a_.rows()); }
    const Eigen::MatrixXd& A() const { return a_; }
    const Eigen::MatrixXd& A_inv() const { return a_inv_; }

    /// <A^{-1} x, x> - 1.
    double implicit(const Eigen::VectorXd& x) const;
    Eigen::VectorXd outward_normal(const Eigen::VectorXd& x) const;

private:
    Eigen::MatrixXd a_;
    Eigen::MatrixXd a_inv_;
};

/// Oriented line {m + t n}: |n| = 1, m orthogonal to n.
struct OrientedLineND {
    Eigen::VectorXd n;
    Eigen::VectorXd m;

    /// Line through point in direction dir (normalized here).
    static OrientedLineND through(const Eigen::VectorXd& point, const Eigen::VectorXd& dir);
};

/// h(nu) = <A nu, nu>^{1/2}. Throws NonUnit if | |nu| - 1 | > 1e-9.
double ellipsoid_support(const Quadric& q, const Eigen::VectorXd& nu);

/// Boundary point with outward unit normal nu: <A nu, nu>^{-1/2} A nu.
Eigen::VectorXd gauss_inverse(const Quadric& q, const Eigen::VectorXd& nu);

/// S(n1, n2) = <A (n1 - n2), n1 - n2>^{1/2}.
/// Throws CoincidentDirections if |n1 - n2| < 1e-12.
double generating_value_nd(const Quadric& q, const Eigen::VectorXd& n1, const Eigen::VectorXd& n2);

/// Same function through the support: h(nu) |n1 - n2|, nu = (n1 - n2)/|n1 - n2|.
double generating_value_nd_general(const Quadric& q, const Eigen::VectorXd& n1, const Eigen::VectorXd& n2);

struct ReflectionND {
    OrientedLineND next;
    /// Exit point of the incoming line (larger root of the chord equation).
    Eigen::VectorXd P;
    /// Outward unit normal at P.
    Eigen::VectorXd normal;
};

/// One billiard bounce. Throws NoIntersection when the line misses the
/// quadric and TangentLine when the discriminant is within 1e-14 of zero.
ReflectionND reflect_nd(const Quadric& q, const OrientedLineND& line);

/// Line leaving the boundary point with outward normal nu at angle delta to
/// the tangent hyperplane, heading inward along the tangent direction
/// obtained by projecting `heading` onto the tangent hyperplane.
OrientedLineND constant_angle_line_nd(const Quadric& q, double delta, const Eigen::VectorXd& nu,
                                      const Eigen::VectorXd& heading);

/// Angle between the direction n and the tangent hyperplane with unit normal nu.
double incidence_angle(const Eigen::VectorXd& n, const Eigen::VectorXd& nu);

/// Orthonormal basis (as columns) of the tangent space of the unit sphere at
/// n, by Gram-Schmidt over the standard basis minus the axis most parallel to n.
Eigen::MatrixXd sphere_tangent_basis(const Eigen::VectorXd& n);

/// Point cos(t) n + sin(t) xi on the great circle through unit n with unit
/// tangent xi.
Eigen::VectorXd great_circle(const Eigen::VectorXd& n, const Eigen::VectorXd& xi, double t);

inline constexpr double kSphereFdStep = 1e-5;
inline constexpr double kMixedFdStep = 1e-4;

struct GradientContract {
    /// |D1 S - m1| with D1 S by five-point central differences along great circles.
    double r1;
    /// |D2 S + m2|.
    double r2;
    /// |D1 S(fd) - (P - <P, n1> n1)| and |D2 S(fd) + (P - <P, n2> n2)|.
    double analytic_gap1;
    double analytic_gap2;
    /// |reflect_nd(l1) - (P, n2)|, confirming the chord realizes the pair.
    double reflection_gap;
    Eigen::VectorXd d1s;
    Eigen::VectorXd d2s;
};

/// Checks m1 = D1 S and m2 = -D2 S for the chord with directions (n1, n2).
/// m1 is the moment of the line through P = G^{-1}((n1 - n2)/|n1 - n2|) in
/// direction n1; m2 is the moment of the line produced by reflect_nd.
GradientContract gradient_contract_residual(const Quadric& q, const Eigen::VectorXd& n1, const Eigen::VectorXd& n2);

/// (d-1) x (d-1) mixed second derivative of S in the tangent bases at n1
/// and n2, by nested central differences.
Eigen::MatrixXd twist_jacobian(const Quadric& q, const Eigen::VectorXd& n1, const Eigen::VectorXd& n2);
double twist_jacobian_min_sv(const Quadric& q, const Eigen::VectorXd& n1, const Eigen::VectorXd& n2);

/// Iterates reflect_nd `steps` times from `line` and returns the largest
/// deviation of the incidence angle from delta over all bounces.
double constant_angle_residual_nd(const Quadric& q, double delta, const OrientedLineND& line, int steps);

}  // namespace gutkin
