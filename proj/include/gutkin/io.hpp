#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gutkin/billiard2d.hpp"
#include "gutkin/billiard_nd.hpp"
#include "gutkin/chords.hpp"
#include "gutkin/support_geometry.hpp"

namespace gutkin::io {

struct GutkinParams {
    int n;
    double delta;

    bool operator==(const GutkinParams&) const = default;
};

/// Contents of a table file:
///   { "a0": h_0,
///     "harmonics": [{"k": k, "cos": a_k, "sin": b_k}, ...],
///     "gutkin": {"n": n, "delta": delta} | null }
/// The coefficients are those of the supporting function h. Harmonics with
/// both coefficients zero are omitted on write.
struct TableSpec {
    SupportCurve curve;
    std::optional<GutkinParams> gutkin;
};

TableSpec table_spec(const GutkinTable& table);

nlohmann::json table_to_json(const TableSpec& spec);
/// Throws InvalidInput for malformed documents and NonConvex if the
/// described curve is not strictly convex.
TableSpec table_from_json(const nlohmann::json& doc);

void save_table(const std::filesystem::path& path, const TableSpec& spec);
TableSpec load_table(const std::filesystem::path& path);

/// Ellipsoid spec { "d": d, "A": [row-major d*d reals] }.
nlohmann::json quadric_to_json(const Quadric& q);
Quadric quadric_from_json(const nlohmann::json& doc, int max_dim = 16);
Quadric load_quadric(const std::filesystem::path& path, int max_dim = 16);

/// 17 significant digits (%.17g); parses back to the same double.
std::string format_real(double x);

inline constexpr const char* kOrbitCsvHeader = "step,p,phi,psi_back,psi_fwd,angle_back,angle_fwd";
inline constexpr const char* kChordCsvHeader = "s,k,tau,l,ldot,R5,R6,R9,D_numeric,D_analytic,A_coeff";

/// Rows numbered from 0 in the order given.
void write_orbit_csv(std::ostream& out, const std::vector<ChordData>& chords);

/// Several orbits in one file; the step column restarts at 0 for each orbit.
void write_orbits_csv(std::ostream& out, const std::vector<std::vector<ChordData>>& orbits);

/// One bounce of an nD orbit: exit point, direction of the incoming line
/// and its incidence angle at P.
struct BounceRecord {
    Eigen::VectorXd P;
    Eigen::VectorXd n;
    double incidence_angle;
};
void write_bounce_csv(std::ostream& out, const std::vector<BounceRecord>& bounces);

void write_chord_csv(std::ostream& out, const std::vector<ChordReportRow>& rows);

/// Static scatter plot of (phi mod 2 pi, p) for each orbit. Output depends
/// only on the input data.
std::string render_phase_portrait_svg(const std::vector<std::vector<ChordData>>& orbits);

}  // namespace gutkin::io
