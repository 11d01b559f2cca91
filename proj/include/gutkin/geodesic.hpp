#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "gutkin/surface.hpp"

namespace gutkin {

struct GeodesicSample {
    double s;
    Eigen::Vector3d x;
    /// Unit tangent.
    Eigen::Vector3d v;
    /// Acceleration x'' = -(<v, Hess F v> / |grad F|^2) grad F.
    Eigen::Vector3d acc;
};

/// Arc-length-sampled geodesic on a uniform grid s_i = i * step.
struct GeodesicTrajectory {
    std::vector<GeodesicSample> samples;
    double step;

    std::size_t size() const { return samples.size(); }
};

struct GeodesicOptions {
    /// Pull x back onto F = 0 (one Newton step along grad F) and v back to the
    /// unit tangent sphere after every RK4 step. Turn off only to measure the
    /// raw integrator error.
    bool project = true;
};

/// Integrates the geodesic through x0 with unit tangent v0 over the given
/// arc length with classical RK4. The step is shrunk so that it divides
/// `length` exactly.
///
/// Throws OffSurface if |F(x0)| or |<grad F/|grad F|, v0>| exceed 1e-10,
/// InvalidInput for a non-unit v0 or non-positive length/step, and
/// StepTooLarge if a single step drifts more than 1e-6 off the surface.
GeodesicTrajectory integrate_geodesic(const ImplicitSurface& surface, const Eigen::Vector3d& x0,
                                      const Eigen::Vector3d& v0, double length, double step,
                                      const GeodesicOptions& options = {});

/// Geodesic acceleration at (x, v).
Eigen::Vector3d geodesic_acceleration(const ImplicitSurface& surface, const Eigen::Vector3d& x,
                                      const Eigen::Vector3d& v);

/// max_i |F(x_i)| and max_i | |v_i| - 1 |.
struct ConstraintDrift {
    double surface;
    double speed;
};
ConstraintDrift constraint_drift(const ImplicitSurface& surface, const GeodesicTrajectory& traj);

/// Curvature, torsion and frame (v, n, w = v x n) along a geodesic.
///
/// n' and tau = <n', w> come from fourth-order central differences, so the
/// first and last `margin` entries of n_dot and tau are not meaningful.
struct FrenetData {
    std::vector<double> k;
    std::vector<double> tau;
    std::vector<Eigen::Vector3d> v;
    std::vector<Eigen::Vector3d> n;
    std::vector<Eigen::Vector3d> w;
    std::vector<Eigen::Vector3d> n_dot;
    double step;
    std::size_t margin;

    std::size_t size() const { return k.size(); }
    /// max over the valid range of |n' + k v - tau w|.
    double max_frenet_residual() const;
    /// max over the valid range of |<n', v> + k|.
    double max_curvature_consistency() const;
    /// max over all samples of the deviation of (v, n, w) from orthonormal.
    double max_frame_error() const;
};

inline constexpr double kMinGeodesicCurvature = 1e-8;

/// Throws InvalidInput for fewer than 5 samples and DegenerateCurvature
/// where k < kMinGeodesicCurvature.
FrenetData frenet_apparatus(const GeodesicTrajectory& traj);

}  // namespace gutkin
