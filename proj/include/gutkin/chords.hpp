#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "gutkin/geodesic.hpp"
#include "gutkin/surface.hpp"

namespace gutkin {

/// For every sample of a geodesic gamma: the chord leaving gamma(s) along
///   z(s) = cos(delta) gamma'(s) + sin(delta) n(gamma(s))   (n inner normal)
/// and its far endpoint Gamma(s) = gamma(s) + l(s) z(s).
///
/// Derivatives in s use fourth-order central differences; the first and
/// last `margin` entries of l_dot, l_ddot, Gamma_dot, Gamma_ddot are not
/// meaningful.
struct ChordCorrespondence {
    double delta;
    double step;
    std::size_t margin;
    std::vector<double> s;
    std::vector<double> l;
    std::vector<double> l_dot;
    std::vector<double> l_ddot;
    std::vector<Eigen::Vector3d> gamma;
    std::vector<Eigen::Vector3d> z;
    std::vector<Eigen::Vector3d> Gamma;
    std::vector<Eigen::Vector3d> Gamma_dot;
    std::vector<Eigen::Vector3d> Gamma_ddot;

    std::size_t size() const { return s.size(); }
};

/// Throws InvalidInput unless 0 < delta <= pi/2 and NoExit if a chord fails
/// to leave the body.
ChordCorrespondence chord_correspondence(const ImplicitSurface& surface, const GeodesicTrajectory& traj,
                                         double delta);

struct AngleResiduals {
    double s;
    /// | |Gamma'|^2 - ((l' + cos d)^2 + (k l - sin d)^2 + tau^2 l^2 sin^2 d) |
    double r5;
    /// | <Gamma', z> - (l' + cos d) |
    double r6;
    /// | (l' + cos d) - (cos d / sin d) sqrt((k l - sin d)^2 + tau^2 l^2 sin^2 d) |
    double r9;
};

/// Residual series over the interior samples (endpoints dropped).
std::vector<AngleResiduals> angle_condition_residuals(const ChordCorrespondence& cc, const FrenetData& frenet,
                                                      double delta);

struct PlanarityRow {
    double s;
    /// det[z, Gamma', Gamma''] in R^3.
    double d_numeric;
    /// The same determinant assembled in the (v, n, w) frame from l, k, tau
    /// and their derivatives.
    double d_analytic;
    /// Coefficient of tau' in that determinant: l sin d (k l - sin d).
    double a_coeff;
};

/// Rows over the samples where tau' is available (margin 2 * stencil).
std::vector<PlanarityRow> planarity_residuals(const ChordCorrespondence& cc, const FrenetData& frenet, double delta);

/// min over interior samples of (k l - sin d)^2 + tau^2.
double simultaneous_vanish_check(const ChordCorrespondence& cc, const FrenetData& frenet, double delta);

/// max over interior samples of |angle(Gamma', z) - delta|.
double gamma_angle_deviation(const ChordCorrespondence& cc, double delta);

/// RMS distance of the points from their best-fit plane (smallest singular
/// value of the centred point matrix divided by sqrt(count)).
double planarity_rms(const std::vector<Eigen::Vector3d>& points);

/// One line of the chord report CSV.
struct ChordReportRow {
    double s;
    double k;
    double tau;
    double l;
    double l_dot;
    double r5;
    double r6;
    double r9;
    double d_numeric;
    double d_analytic;
    double a_coeff;
};

/// Joins the residual series on the samples where all of them are defined.
std::vector<ChordReportRow> chord_report(const ChordCorrespondence& cc, const FrenetData& frenet, double delta);

}  // namespace gutkin
