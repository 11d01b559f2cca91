#include "gutkin/billiard_nd.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "gutkin/errors.hpp"

namespace gutkin {

namespace {

void require_unit(const Eigen::VectorXd& v, const char* what) {
    if (std::abs(v.norm() - 1.0) > 1e-9) {
        throw NonUnit(std::string(what) + " is not a unit vector (norm " + std::to_string(v.norm()) + ")");
    }
}

void require_dim(const Quadric& q, const Eigen::VectorXd& v) {
    if (v.size() != q.dim()) {
        throw InvalidInput("vector of dimension " + std::to_string(v.size()) + " used with a quadric in R^" +
                           std::to_string(q.dim()));
    }
}

}  // namespace

Quadric::Quadric(Eigen::MatrixXd A) : a_(std::move(A)) {
    if (a_.rows() != a_.cols() || a_.rows() < 2) {
        throw InvalidInput("quadric matrix must be square with d >= 2");
    }
    const double asym = (a_ - a_.transpose()).norm();
    if (asym > 1e-14 * std::max(1.0, a_.norm())) {
        throw InvalidInput("quadric matrix is not symmetric");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(a_);
    if (llt.info() != Eigen::Success) {
        throw InvalidInput("quadric matrix is not positive definite");
    }
    a_inv_ = llt.solve(Eigen::MatrixXd::Identity(a_.rows(), a_.cols()));
    a_inv_ = 0.5 * (a_inv_ + a_inv_.transpose()).eval();
}

Quadric Quadric::sphere(int d, double radius) {
    return Quadric(radius * radius * Eigen::MatrixXd::Identity(d, d));
}

Quadric Quadric::diagonal(const Eigen::VectorXd& semi_axes_squared) {
    return Quadric(semi_axes_squared.asDiagonal().toDenseMatrix());
}

double Quadric::implicit(const Eigen::VectorXd& x) const { return x.dot(a_inv_ * x) - 1.0; }

Eigen::VectorXd Quadric::outward_normal(const Eigen::VectorXd& x) const { return (a_inv_ * x).normalized(); }

OrientedLineND OrientedLineND::through(const Eigen::VectorXd& point, const Eigen::VectorXd& dir) {
    Eigen::VectorXd n = dir.normalized();
    Eigen::VectorXd m = point - point.dot(n) * n;
    return {std::move(n), std::move(m)};
}

double ellipsoid_support(const Quadric& q, const Eigen::VectorXd& nu) {
    require_dim(q, nu);
    require_unit(nu, "support direction");
    return std::sqrt(nu.dot(q.A() * nu));
}

Eigen::VectorXd gauss_inverse(const Quadric& q, const Eigen::VectorXd& nu) {
    require_dim(q, nu);
    require_unit(nu, "normal");
    const Eigen::VectorXd an = q.A() * nu;
    return an / std::sqrt(nu.dot(an));
}

double generating_value_nd(const Quadric& q, const Eigen::VectorXd& n1, const Eigen::VectorXd& n2) {
    require_dim(q, n1);
    require_dim(q, n2);
    const Eigen::VectorXd diff = n1 - n2;
    if (diff.norm() < 1e-12) throw CoincidentDirections("generating function needs n1 != n2");
    return std::sqrt(diff.dot(q.A() * diff));
}

double generating_value_nd_general(const Quadric& q, const Eigen::VectorXd& n1, const Eigen::VectorXd& n2) {
    require_dim(q, n1);
    require_dim(q, n2);
    const Eigen::VectorXd diff = n1 - n2;
    const double len = diff.norm();
    if (len < 1e-12) throw CoincidentDirections("generating function needs n1 != n2");
    return ellipsoid_support(q, diff / len) * len;
}

ReflectionND reflect_nd(const Quadric& q, const OrientedLineND& line) {
    require_dim(q, line.n);
    require_dim(q, line.m);
    const Eigen::VectorXd ain_n = q.A_inv() * line.n;
    const double a = line.n.dot(ain_n);
    const double b = line.m.dot(ain_n);
    const double c = line.m.dot(q.A_inv() * line.m) - 1.0;
    const double disc = b * b - a * c;
    if (std::abs(disc) < 1e-14) throw TangentLine("line is tangent to the quadric");
    if (disc < 0.0) throw NoIntersection("line misses the quadric");

    const double t = (-b + std::sqrt(disc)) / a;
    Eigen::VectorXd P = line.m + t * line.n;
    Eigen::VectorXd nu = q.outward_normal(P);
    Eigen::VectorXd n2 = (line.n - 2.0 * line.n.dot(nu) * nu).normalized();

    // The exit normal must be the normalized difference of the directions.
    const Eigen::VectorXd diff = line.n - n2;
    if ((diff.normalized() - nu).norm() > 1e-10) {
        throw ConvergenceFailure("exit normal disagrees with (n1 - n2)/|n1 - n2|");
    }
    OrientedLineND next = OrientedLineND::through(P, n2);
    return {std::move(next), std::move(P), std::move(nu)};
}

OrientedLineND constant_angle_line_nd(const Quadric& q, double delta, const Eigen::VectorXd& nu,
                                      const Eigen::VectorXd& heading) {
    const Eigen::VectorXd start = gauss_inverse(q, nu);
    require_dim(q, heading);
    Eigen::VectorXd tangent = heading - heading.dot(nu) * nu;
    if (tangent.norm() < 1e-12) throw InvalidInput("heading is parallel to the normal");
    tangent.normalize();
    return OrientedLineND::through(start, std::cos(delta) * tangent - std::sin(delta) * nu);
}

double incidence_angle(const Eigen::VectorXd& n, const Eigen::VectorXd& nu) {
    const double normal_part = n.dot(nu);
    return std::atan2(std::abs(normal_part), (n - normal_part * nu).norm());
}

Eigen::MatrixXd sphere_tangent_basis(const Eigen::VectorXd& n) {
    const auto d = n.size();
    Eigen::Index skip = 0;
    n.cwiseAbs().maxCoeff(&skip);
    Eigen::MatrixXd basis(d, d - 1);
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        if (i == skip) continue;
        Eigen::VectorXd e = Eigen::VectorXd::Unit(d, i);
        e -= e.dot(n) * n;
        for (Eigen::Index j = 0; j < col; ++j) e -= e.dot(basis.col(j)) * basis.col(j);
        basis.col(col++) = e.normalized();
    }
    return basis;
}

Eigen::VectorXd great_circle(const Eigen::VectorXd& n, const Eigen::VectorXd& xi, double t) {
    return std::cos(t) * n + std::sin(t) * xi;
}

GradientContract gradient_contract_residual(const Quadric& q, const Eigen::VectorXd& n1, const Eigen::VectorXd& n2) {
    require_dim(q, n1);
    require_dim(q, n2);
    require_unit(n1, "n1");
    require_unit(n2, "n2");
    const Eigen::VectorXd diff = n1 - n2;
    if (diff.norm() < 1e-12) throw CoincidentDirections("gradient check needs n1 != n2");

    const Eigen::VectorXd P = gauss_inverse(q, diff.normalized());
    const OrientedLineND l1 = OrientedLineND::through(P, n1);
    const ReflectionND bounce = reflect_nd(q, l1);

    const double h = kSphereFdStep;
    // five-point central stencil along each great circle
    auto slope = [h](auto&& f) { return (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h); };
    const Eigen::MatrixXd b1 = sphere_tangent_basis(n1);
    const Eigen::MatrixXd b2 = sphere_tangent_basis(n2);
    Eigen::VectorXd d1s = Eigen::VectorXd::Zero(q.dim());
    Eigen::VectorXd d2s = Eigen::VectorXd::Zero(q.dim());
    for (Eigen::Index i = 0; i < b1.cols(); ++i) {
        const Eigen::VectorXd xi = b1.col(i);
        d1s += slope([&](double t) { return generating_value_nd(q, great_circle(n1, xi, t), n2); }) * xi;
    }
    for (Eigen::Index i = 0; i < b2.cols(); ++i) {
        const Eigen::VectorXd xi = b2.col(i);
        d2s += slope([&](double t) { return generating_value_nd(q, n1, great_circle(n2, xi, t)); }) * xi;
    }

    const Eigen::VectorXd proj1 = P - P.dot(n1) * n1;
    const Eigen::VectorXd proj2 = P - P.dot(n2) * n2;
    GradientContract out;
    out.r1 = (d1s - l1.m).norm();
    out.r2 = (d2s + bounce.next.m).norm();
    out.analytic_gap1 = (d1s - proj1).norm();
    out.analytic_gap2 = (d2s + proj2).norm();
    out.reflection_gap = (bounce.P - P).norm() + (bounce.next.n - n2).norm();
    out.d1s = std::move(d1s);
    out.d2s = std::move(d2s);
    return out;
}

Eigen::MatrixXd twist_jacobian(const Quadric& q, const Eigen::VectorXd& n1, const Eigen::VectorXd& n2) {
    require_dim(q, n1);
    require_dim(q, n2);
    if ((n1 - n2).norm() < 1e-12) throw CoincidentDirections("twist check needs n1 != n2");
    const double h = kMixedFdStep;
    const Eigen::MatrixXd b1 = sphere_tangent_basis(n1);
    const Eigen::MatrixXd b2 = sphere_tangent_basis(n2);
    Eigen::MatrixXd mixed(b1.cols(), b2.cols());
    for (Eigen::Index i = 0; i < b1.cols(); ++i) {
        const Eigen::VectorXd u_plus = great_circle(n1, b1.col(i), h);
        const Eigen::VectorXd u_minus = great_circle(n1, b1.col(i), -h);
        for (Eigen::Index j = 0; j < b2.cols(); ++j) {
            const Eigen::VectorXd w_plus = great_circle(n2, b2.col(j), h);
            const Eigen::VectorXd w_minus = great_circle(n2, b2.col(j), -h);
            mixed(i, j) = (generating_value_nd(q, u_plus, w_plus) - generating_value_nd(q, u_plus, w_minus) -
                           generating_value_nd(q, u_minus, w_plus) + generating_value_nd(q, u_minus, w_minus)) /
                          (4.0 * h * h);
        }
    }
    return mixed;
}

double twist_jacobian_min_sv(const Quadric& q, const Eigen::VectorXd& n1, const Eigen::VectorXd& n2) {
    const Eigen::MatrixXd mixed = twist_jacobian(q, n1, n2);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mixed);
    return svd.singularValues().minCoeff();
}

double constant_angle_residual_nd(const Quadric& q, double delta, const OrientedLineND& line, int steps) {
    if (steps < 1) throw InvalidInput("need at least one bounce");
    double worst = 0.0;
    OrientedLineND current = line;
    for (int i = 0; i < steps; ++i) {
        ReflectionND r = reflect_nd(q, current);
        worst = std::max(worst, std::abs(incidence_angle(current.n, r.normal) - delta));
        current = std::move(r.next);
    }
    return worst;
}

}  // namespace gutkin
