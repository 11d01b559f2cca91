#include "gutkin/chords.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "gutkin/errors.hpp"
#include "gutkin/finite_difference.hpp"

namespace gutkin {

namespace {

void require_aligned(const ChordCorrespondence& cc, const FrenetData& frenet) {
    if (cc.size() != frenet.size()) {
        throw InvalidInput("chord correspondence and Frenet data have different sample counts");
    }
}

double det3(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
    Eigen::Matrix3d m;
    m << a, b, c;
    return m.determinant();
}

}  // namespace

ChordCorrespondence chord_correspondence(const ImplicitSurface& surface, const GeodesicTrajectory& traj,
                                         double delta) {
    if (!(delta > 0.0 && delta <= 0.5 * std::numbers::pi)) throw InvalidInput("delta must lie in (0, pi/2]");
    if (traj.size() < 2 * detail::kStencilMargin + 1) throw InvalidInput("chord correspondence needs at least 5 samples");

    const double cd = std::cos(delta);
    const double sd = std::sin(delta);
    ChordCorrespondence cc;
    cc.delta = delta;
    cc.step = traj.step;
    cc.margin = detail::kStencilMargin;
    for (const auto& p : traj.samples) {
        const Eigen::Vector3d z = (cd * p.v + sd * surface.inner_normal(p.x)).normalized();
        const auto t = surface.ray_exit(p.x, z);
        if (!t || *t <= 0.0) {
            throw NoExit("chord from s = " + std::to_string(p.s) + " does not re-enter the surface");
        }
        cc.s.push_back(p.s);
        cc.l.push_back(*t);
        cc.gamma.push_back(p.x);
        cc.z.push_back(z);
        cc.Gamma.push_back(p.x + *t * z);
    }
    cc.l_dot = detail::central_d1(cc.l, cc.step);
    cc.l_ddot = detail::central_d2(cc.l, cc.step);
    cc.Gamma_dot = detail::central_d1(cc.Gamma, cc.step);
    cc.Gamma_ddot = detail::central_d2(cc.Gamma, cc.step);
    return cc;
}

std::vector<AngleResiduals> angle_condition_residuals(const ChordCorrespondence& cc, const FrenetData& frenet,
                                                      double delta) {
    require_aligned(cc, frenet);
    const double cd = std::cos(delta);
    const double sd = std::sin(delta);
    const std::size_t margin = std::max(cc.margin, frenet.margin);
    std::vector<AngleResiduals> rows;
    for (std::size_t i = margin; i + margin < cc.size(); ++i) {
        const double k = frenet.k[i];
        const double tau = frenet.tau[i];
        const double l = cc.l[i];
        const double lead = cc.l_dot[i] + cd;
        const double bend = k * l - sd;
        const double twist_sq = tau * tau * l * l * sd * sd;
        rows.push_back({cc.s[i], std::abs(cc.Gamma_dot[i].squaredNorm() - (lead * lead + bend * bend + twist_sq)),
                        std::abs(cc.Gamma_dot[i].dot(cc.z[i]) - lead),
                        std::abs(lead - cd / sd * std::sqrt(bend * bend + twist_sq))});
    }
    return rows;
}

std::vector<PlanarityRow> planarity_residuals(const ChordCorrespondence& cc, const FrenetData& frenet,
                                              double delta) {
    require_aligned(cc, frenet);
    const double cd = std::cos(delta);
    const double sd = std::sin(delta);
    const auto k_dot = detail::central_d1(frenet.k, frenet.step);
    const auto tau_dot = detail::central_d1(frenet.tau, frenet.step);
    const std::size_t margin = std::max(cc.margin, frenet.margin) + detail::kStencilMargin;

    std::vector<PlanarityRow> rows;
    for (std::size_t i = margin; i + margin < cc.size(); ++i) {
        const double k = frenet.k[i];
        const double tau = frenet.tau[i];
        const double l = cc.l[i];
        const double ld = cc.l_dot[i];
        const double ldd = cc.l_ddot[i];
        const double kd = k_dot[i];
        const double td = tau_dot[i];

        // Gamma' and Gamma'' in the (v, n, w) frame.
        const Eigen::Vector3d row_z(cd, sd, 0.0);
        const Eigen::Vector3d row_g1(1.0 + ld * cd - k * l * sd, ld * sd + k * l * cd, tau * l * sd);
        const Eigen::Vector3d row_g2(ldd * cd - 2.0 * k * ld * sd - kd * l * sd - k * k * l * cd,
                                     k + 2.0 * k * ld * cd - k * k * l * sd + ldd * sd + kd * l * cd -
                                         tau * tau * l * sd,
                                     2.0 * tau * ld * sd + tau * k * l * cd + td * l * sd);
        Eigen::Matrix3d frame_det;
        frame_det << row_z.transpose(), row_g1.transpose(), row_g2.transpose();

        rows.push_back({cc.s[i], det3(cc.z[i], cc.Gamma_dot[i], cc.Gamma_ddot[i]), frame_det.determinant(),
                        l * sd * (k * l - sd)});
    }
    return rows;
}

double simultaneous_vanish_check(const ChordCorrespondence& cc, const FrenetData& frenet, double delta) {
    require_aligned(cc, frenet);
    const double sd = std::sin(delta);
    const std::size_t margin = std::max(cc.margin, frenet.margin);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = margin; i + margin < cc.size(); ++i) {
        const double bend = frenet.k[i] * cc.l[i] - sd;
        best = std::min(best, bend * bend + frenet.tau[i] * frenet.tau[i]);
    }
    return best;
}

double gamma_angle_deviation(const ChordCorrespondence& cc, double delta) {
    double worst = 0.0;
    for (std::size_t i = cc.margin; i + cc.margin < cc.size(); ++i) {
        const Eigen::Vector3d& g = cc.Gamma_dot[i];
        const double angle = std::atan2(g.cross(cc.z[i]).norm(), g.dot(cc.z[i]));
        worst = std::max(worst, std::abs(angle - delta));
    }
    return worst;
}

double planarity_rms(const std::vector<Eigen::Vector3d>& points) {
    if (points.size() < 3) return 0.0;
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& p : points) mean += p;
    mean /= static_cast<double>(points.size());
    Eigen::MatrixXd centred(points.size(), 3);
    for (std::size_t i = 0; i < points.size(); ++i) centred.row(static_cast<Eigen::Index>(i)) = (points[i] - mean).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred);
    return svd.singularValues().minCoeff() / std::sqrt(static_cast<double>(points.size()));
}

std::vector<ChordReportRow> chord_report(const ChordCorrespondence& cc, const FrenetData& frenet, double delta) {
    const auto angle_rows = angle_condition_residuals(cc, frenet, delta);
    const auto plan_rows = planarity_residuals(cc, frenet, delta);
    // Angle rows start at the single margin, planarity rows one stencil later.
    const std::size_t offset = detail::kStencilMargin;
    const std::size_t first = std::max(cc.margin, frenet.margin) + offset;
    std::vector<ChordReportRow> rows;
    rows.reserve(plan_rows.size());
    for (std::size_t j = 0; j < plan_rows.size(); ++j) {
        const std::size_t i = first + j;
        const auto& a = angle_rows[j + offset];
        const auto& p = plan_rows[j];
        rows.push_back({cc.s[i], frenet.k[i], frenet.tau[i], cc.l[i], cc.l_dot[i], a.r5, a.r6, a.r9, p.d_numeric,
                        p.d_analytic, p.a_coeff});
    }
    return rows;
}

}  // namespace gutkin
