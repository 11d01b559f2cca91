#include "gutkin/surface.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "gutkin/errors.hpp"

namespace gutkin {

namespace {

// Largest root of a t^2 + 2 b t + c = 0 if it is positive.
std::optional<double> far_root(double a, double b, double c) {
    const double disc = b * b - a * c;
    if (disc <= 0.0) return std::nullopt;
    const double t = (-b + std::sqrt(disc)) / a;
    if (t <= 0.0) return std::nullopt;
    return t;
}

}  // namespace

Eigen::Vector3d ImplicitSurface::inner_normal(const Eigen::Vector3d& x) const { return -gradient(x).normalized(); }

SphereSurface::SphereSurface(double radius) : radius_(radius) {
    if (!(radius > 0.0)) throw InvalidInput("sphere radius must be positive");
}

double SphereSurface::value(const Eigen::Vector3d& x) const { return x.squaredNorm() - radius_ * radius_; }

Eigen::Vector3d SphereSurface::gradient(const Eigen::Vector3d& x) const { return 2.0 * x; }

Eigen::Matrix3d SphereSurface::hessian(const Eigen::Vector3d&) const { return 2.0 * Eigen::Matrix3d::Identity(); }

std::optional<double> SphereSurface::ray_exit(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir) const {
    return far_root(dir.squaredNorm(), origin.dot(dir), origin.squaredNorm() - radius_ * radius_);
}

EllipsoidSurface::EllipsoidSurface(const Eigen::Matrix3d& A) : a_(A) {
    if ((a_ - a_.transpose()).norm() > 1e-14 * std::max(1.0, a_.norm())) {
        throw InvalidInput("ellipsoid matrix is not symmetric");
    }
    Eigen::LLT<Eigen::Matrix3d> llt(a_);
    if (llt.info() != Eigen::Success) throw InvalidInput("ellipsoid matrix is not positive definite");
    a_inv_ = llt.solve(Eigen::Matrix3d::Identity());
    a_inv_ = 0.5 * (a_inv_ + a_inv_.transpose()).eval();
}

double EllipsoidSurface::value(const Eigen::Vector3d& x) const { return x.dot(a_inv_ * x) - 1.0; }

Eigen::Vector3d EllipsoidSurface::gradient(const Eigen::Vector3d& x) const { return 2.0 * (a_inv_ * x); }

Eigen::Matrix3d EllipsoidSurface::hessian(const Eigen::Vector3d&) const { return 2.0 * a_inv_; }

std::optional<double> EllipsoidSurface::ray_exit(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir) const {
    const Eigen::Vector3d ain_d = a_inv_ * dir;
    return far_root(dir.dot(ain_d), origin.dot(ain_d), origin.dot(a_inv_ * origin) - 1.0);
}

double EllipsoidSurface::diameter() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(a_, Eigen::EigenvaluesOnly);
    return 2.0 * std::sqrt(es.eigenvalues().maxCoeff());
}

Eigen::Vector3d EllipsoidSurface::gauss_inverse(const Eigen::Vector3d& nu) const {
    const Eigen::Vector3d an = a_ * nu;
    return an / std::sqrt(nu.dot(an));
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> tangent_frame(const ImplicitSurface& surface, const Eigen::Vector3d& x) {
    const Eigen::Vector3d n = surface.gradient(x).normalized();
    Eigen::Index skip = 0;
    n.cwiseAbs().maxCoeff(&skip);
    Eigen::Vector3d out[2];
    int col = 0;
    for (Eigen::Index i = 0; i < 3; ++i) {
        if (i == skip) continue;
        Eigen::Vector3d e = Eigen::Vector3d::Unit(i);
        e -= e.dot(n) * n;
        if (col == 1) e -= e.dot(out[0]) * out[0];
        out[col++] = e.normalized();
    }
    return {out[0], out[1]};
}

}  // namespace gutkin
