#pragma once

#include <optional>

#include <Eigen/Core>

namespace gutkin {

/// Convex surface F = 0 in R^3 with F < 0 inside.
class ImplicitSurface {
public:
    virtual ~ImplicitSurface() = default;

    virtual double value(const Eigen::Vector3d& x) const = 0;
    virtual Eigen::Vector3d gradient(const Eigen::Vector3d& x) const = 0;
    virtual Eigen::Matrix3d hessian(const Eigen::Vector3d& x) const = 0;

    /// Largest t > 0 with F(origin + t dir) = 0, if any.
    virtual std::optional<double> ray_exit(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir) const = 0;

    /// Upper bound on the distance between two surface points.
    virtual double diameter() const = 0;

    /// -grad F / |grad F|, pointing into the body.
    Eigen::Vector3d inner_normal(const Eigen::Vector3d& x) const;
};

/// F = |x|^2 - R^2.
class SphereSurface final : public ImplicitSurface {
public:
    explicit SphereSurface(double radius);

    double radius() const { return radius_; }

    double value(const Eigen::Vector3d& x) const override;
    Eigen::Vector3d gradient(const Eigen::Vector3d& x) const override;
    Eigen::Matrix3d hessian(const Eigen::Vector3d& x) const override;
    std::optional<double> ray_exit(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir) const override;
    double diameter() const override { return 2.0 * radius_; }

private:
    double radius_;
};

/// F = <A^{-1} x, x> - 1 for symmetric positive-definite A.
class EllipsoidSurface final : public ImplicitSurface {
public:
    explicit EllipsoidSurface(const Eigen::Matrix3d& A);

    const Eigen::Matrix3d& A() const { return a_; }

    double value(const Eigen::Vector3d& x) const override;
    Eigen::Vector3d gradient(const Eigen::Vector3d& x) const override;
    Eigen::Matrix3d hessian(const Eigen::Vector3d& x) const override;
    std::optional<double> ray_exit(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir) const override;
    double diameter() const override;

    /// Boundary point with outward unit normal nu.
    Eigen::Vector3d gauss_inverse(const Eigen::Vector3d& nu) const;

private:
    Eigen::Matrix3d a_;
    Eigen::Matrix3d a_inv_;
};

/// Orthonormal tangent pair at x (Gram-Schmidt on the coordinate axes,
/// skipping the one most parallel to the normal).
std::pair<Eigen::Vector3d, Eigen::Vector3d> tangent_frame(const ImplicitSurface& surface, const Eigen::Vector3d& x);

}  // namespace gutkin
