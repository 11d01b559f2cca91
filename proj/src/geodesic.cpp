#include "gutkin/geodesic.hpp"

#include <cmath>
#include <string>

#include <Eigen/Geometry>

#include "gutkin/errors.hpp"
#include "gutkin/finite_difference.hpp"

namespace gutkin {

namespace {

constexpr double kStartTolerance = 1e-10;
constexpr double kStepDriftLimit = 1e-6;

struct State {
    Eigen::Vector3d x;
    Eigen::Vector3d v;
};

}  // namespace

Eigen::Vector3d geodesic_acceleration(const ImplicitSurface& surface, const Eigen::Vector3d& x,
                                      const Eigen::Vector3d& v) {
    const Eigen::Vector3d g = surface.gradient(x);
    return -(v.dot(surface.hessian(x) * v) / g.squaredNorm()) * g;
}

GeodesicTrajectory integrate_geodesic(const ImplicitSurface& surface, const Eigen::Vector3d& x0,
                                      const Eigen::Vector3d& v0, double length, double step,
                                      const GeodesicOptions& options) {
    if (!(length > 0.0) || !(step > 0.0)) throw InvalidInput("geodesic length and step must be positive");
    if (std::abs(v0.norm() - 1.0) > kStartTolerance) throw InvalidInput("initial tangent must be a unit vector");
    if (std::abs(surface.value(x0)) > kStartTolerance) {
        throw OffSurface("start point is off the surface (F = " + std::to_string(surface.value(x0)) + ")");
    }
    if (std::abs(surface.gradient(x0).normalized().dot(v0)) > kStartTolerance) {
        throw OffSurface("initial direction is not tangent to the surface");
    }

    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(length / step - 1e-9)));
    const double h = length / static_cast<double>(steps);

    auto rhs = [&](const State& y) { return State{y.v, geodesic_acceleration(surface, y.x, y.v)}; };

    GeodesicTrajectory traj;
    traj.step = h;
    traj.samples.reserve(steps + 1);
    State y{x0, v0};
    traj.samples.push_back({0.0, y.x, y.v, geodesic_acceleration(surface, y.x, y.v)});

    for (std::size_t i = 1; i <= steps; ++i) {
        const State k1 = rhs(y);
        const State k2 = rhs({y.x + 0.5 * h * k1.x, y.v + 0.5 * h * k1.v});
        const State k3 = rhs({y.x + 0.5 * h * k2.x, y.v + 0.5 * h * k2.v});
        const State k4 = rhs({y.x + h * k3.x, y.v + h * k3.v});
        y.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
        y.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);

        if (options.project) {
            const double f = surface.value(y.x);
            if (std::abs(f) > kStepDriftLimit) {
                throw StepTooLarge("geodesic step " + std::to_string(h) + " drifted " + std::to_string(f) +
                                   " off the surface");
            }
            Eigen::Vector3d g = surface.gradient(y.x);
            y.x -= f / g.squaredNorm() * g;
            g = surface.gradient(y.x);
            y.v -= y.v.dot(g) / g.squaredNorm() * g;
            y.v.normalize();
        }
        if (!y.x.allFinite() || !y.v.allFinite()) throw StepTooLarge("geodesic integration diverged");
        traj.samples.push_back({h * static_cast<double>(i), y.x, y.v, geodesic_acceleration(surface, y.x, y.v)});
    }
    return traj;
}

ConstraintDrift constraint_drift(const ImplicitSurface& surface, const GeodesicTrajectory& traj) {
    ConstraintDrift d{0.0, 0.0};
    for (const auto& p : traj.samples) {
        d.surface = std::max(d.surface, std::abs(surface.value(p.x)));
        d.speed = std::max(d.speed, std::abs(p.v.norm() - 1.0));
    }
    return d;
}

FrenetData frenet_apparatus(const GeodesicTrajectory& traj) {
    const std::size_t count = traj.size();
    if (count < 2 * detail::kStencilMargin + 1) throw InvalidInput("Frenet apparatus needs at least 5 samples");

    FrenetData fd;
    fd.step = traj.step;
    fd.margin = detail::kStencilMargin;
    fd.k.resize(count);
    fd.v.resize(count);
    fd.n.resize(count);
    fd.w.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& p = traj.samples[i];
        const double k = p.acc.norm();
        if (k < kMinGeodesicCurvature) {
            throw DegenerateCurvature("geodesic curvature vanishes at s = " + std::to_string(p.s));
        }
        fd.k[i] = k;
        fd.v[i] = p.v;
        fd.n[i] = p.acc / k;
        fd.w[i] = p.v.cross(fd.n[i]);
    }
    fd.n_dot = detail::central_d1(fd.n, traj.step);
    fd.tau.resize(count);
    for (std::size_t i = 0; i < count; ++i) fd.tau[i] = fd.n_dot[i].dot(fd.w[i]);
    return fd;
}

double FrenetData::max_frenet_residual() const {
    double worst = 0.0;
    for (std::size_t i = margin; i + margin < size(); ++i) {
        worst = std::max(worst, (n_dot[i] + k[i] * v[i] - tau[i] * w[i]).norm());
    }
    return worst;
}

double FrenetData::max_curvature_consistency() const {
    double worst = 0.0;
    for (std::size_t i = margin; i + margin < size(); ++i) {
        worst = std::max(worst, std::abs(n_dot[i].dot(v[i]) + k[i]));
    }
    return worst;
}

double FrenetData::max_frame_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        Eigen::Matrix3d frame;
        frame << v[i], n[i], w[i];
        worst = std::max(worst, (frame.transpose() * frame - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace gutkin
