#include "gutkin/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gutkin/billiard2d.hpp"
#include "gutkin/billiard_nd.hpp"
#include "gutkin/chords.hpp"
#include "gutkin/errors.hpp"
#include "gutkin/geodesic.hpp"
#include "gutkin/io.hpp"
#include "gutkin/support_geometry.hpp"
#include "gutkin/surface.hpp"

namespace gutkin::cli {

namespace {

using nlohmann::json;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kVerifyThreshold = 1e-6;
constexpr double kGradientThreshold = 1e-7;
constexpr double kRigidityGapThreshold = 1e-6;

/// Output sink shared by the subcommands: human-readable lines unless
/// --json is set, in which case only the final summary object is printed.
/// Once a CSV body has gone to stdout, text lines move to stderr.
struct Report {
    std::ostream& out;
    std::ostream& err;
    bool as_json = false;
    json summary = json::object();
    mutable bool body_on_stdout = false;

    void line(const std::string& text) const {
        if (!as_json) (body_on_stdout ? err : out) << text << '\n';
    }
    void finish() const {
        if (as_json) out << summary.dump() << '\n';
    }
};

unsigned long long resolve_seed(const std::optional<unsigned long long>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("GUTKIN_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InvalidInput(std::string("GUTKIN_SEED is not an unsigned integer: ") + env);
        }
    }
    return kDefaultSeed;
}

Eigen::VectorXd random_unit(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(d);
    do {
        for (int i = 0; i < d; ++i) v[i] = gauss(rng);
    } while (v.norm() < 1e-6);
    return v.normalized();
}

/// Writes `body` to path, or to the report stream when path is empty and
/// the report is not in JSON mode.
void emit(const std::string& path, const std::string& body, const Report& report) {
    if (path.empty()) {
        if (!report.as_json) {
            report.out << body;
            report.body_on_stdout = true;
        }
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + path);
    f << body;
}

std::string fmt(double x) { return io::format_real(x); }

// --- planar commands ---------------------------------------------------------

int cmd_roots(int n, Report& report) {
    const auto roots = solve_gutkin_angles(n);
    for (double r : roots) report.line(fmt(r));
    report.summary = {{"command", "roots"}, {"n", n}, {"roots", roots}};
    report.finish();
    return kExitOk;
}

struct TableArgs {
    int n = 5;
    int root_index = 0;
    double a0 = 1.0;
    std::optional<double> an;
    std::optional<double> radius;
    std::string out;
};

int cmd_table(const TableArgs& a, Report& report) {
    io::TableSpec spec;
    if (a.radius) {
        if (!(*a.radius > 0.0)) throw InvalidInput("circle radius must be positive");
        spec = {SupportCurve::circle(*a.radius), std::nullopt};
    } else {
        if (!a.an) throw InvalidInput("table needs --an (or --radius for a circle)");
        spec = io::table_spec(build_gutkin_table(a.n, a.root_index, a.a0, *a.an));
    }
    io::save_table(a.out, spec);
    std::ostringstream msg;
    msg << "wrote " << a.out;
    if (spec.gutkin) msg << " (n = " << spec.gutkin->n << ", delta = " << fmt(spec.gutkin->delta) << ")";
    report.line(msg.str());
    report.summary = {{"command", "table"}, {"out", a.out}};
    report.summary["delta"] = spec.gutkin ? json(spec.gutkin->delta) : json(nullptr);
    report.finish();
    return kExitOk;
}

double table_delta(const io::TableSpec& spec, const std::optional<double>& delta) {
    if (delta) return *delta;
    if (spec.gutkin) return spec.gutkin->delta;
    throw InvalidInput("--delta is required for tables without a Gutkin angle");
}

int cmd_verify(const std::string& path, const std::optional<double>& delta_flag, int grid, Report& report) {
    const auto spec = io::load_table(path);
    const double delta = table_delta(spec, delta_flag);
    const double residual = verify_constant_angle(spec.curve, delta, grid);
    const bool ok = residual < kVerifyThreshold;
    report.line("delta = " + fmt(delta));
    report.line("max residual: " + fmt(residual));
    report.line(ok ? "constant-angle curve: yes" : "constant-angle curve: no");
    report.summary = {{"command", "verify"}, {"delta", delta}, {"grid", grid}, {"max_residual", residual}, {"pass", ok}};
    report.finish();
    return ok ? kExitOk : kExitVerificationFailed;
}

struct OrbitArgs {
    std::string table;
    std::optional<double> p;
    std::optional<double> phi;
    std::optional<double> delta;
    double psi = 0.0;
    int steps = 100;
    std::string out;
};

int cmd_orbit(const OrbitArgs& a, Report& report) {
    const auto spec = io::load_table(a.table);
    OrientedLine2D start{};
    if (a.p || a.phi) {
        if (!a.p || !a.phi) throw InvalidInput("--p and --phi must be given together");
        start = {*a.p, *a.phi};
    } else {
        start = constant_angle_line(spec.curve, table_delta(spec, a.delta), a.psi);
    }
    const auto chords = orbit_chords(spec.curve, start, a.steps);
    double law = 0.0;
    for (std::size_t i = 0; i + 1 < chords.size(); ++i) {
        law = std::max(law, std::abs(chords[i].alpha_fwd - chords[i + 1].alpha_back));
    }
    std::ostringstream csv;
    io::write_orbit_csv(csv, chords);
    emit(a.out, csv.str(), report);
    if (!a.out.empty()) report.line("wrote " + a.out + " (" + std::to_string(chords.size()) + " rows)");
    report.summary = {{"command", "orbit"}, {"rows", chords.size()}, {"max_reflection_law_residual", law}};
    report.finish();
    return kExitOk;
}

struct PortraitArgs {
    std::string table;
    int p_grid = 8;
    int phi_grid = 1;
    int steps = 200;
    std::string out;
    std::string svg;
};

int cmd_phase_portrait(const PortraitArgs& a, Report& report) {
    if (a.p_grid < 1 || a.phi_grid < 1 || a.steps < 0) throw InvalidInput("grid sizes must be positive");
    const auto spec = io::load_table(a.table);
    std::vector<std::vector<ChordData>> orbits;
    for (int i = 0; i < a.phi_grid; ++i) {
        const double phi = kTwoPi * i / a.phi_grid;
        const double top = spec.curve.h().eval(phi);
        const double bottom = -spec.curve.h().eval(phi + std::numbers::pi);
        for (int j = 0; j < a.p_grid; ++j) {
            const double p = bottom + (top - bottom) * (j + 0.5) / a.p_grid;
            orbits.push_back(orbit_chords(spec.curve, {p, phi}, a.steps));
        }
    }
    std::ostringstream csv;
    io::write_orbits_csv(csv, orbits);
    emit(a.out, csv.str(), report);
    if (!a.svg.empty()) {
        std::ofstream f(a.svg, std::ios::binary);
        if (!f) throw InvalidInput("cannot write " + a.svg);
        f << io::render_phase_portrait_svg(orbits);
        report.line("wrote " + a.svg);
    }
    if (!a.out.empty()) report.line("wrote " + a.out + " (" + std::to_string(orbits.size()) + " orbits)");
    report.summary = {{"command", "phase-portrait"}, {"orbits", orbits.size()}, {"steps", a.steps}};
    report.finish();
    return kExitOk;
}

int cmd_rigidity(const std::string& path, double d1, double d2, int order, Report& report) {
    const auto spec = io::load_table(path);
    const Strip strip(d1, d2);
    const double quad = rigidity_integral(spec.curve, strip, order);
    const double closed = rigidity_integral_closed(spec.curve, strip);
    const double diff = std::abs(quad - closed);
    const double gap = std::abs(closed) > 0.0 ? diff / std::abs(closed) : diff;
    report.line("quadrature:  " + fmt(quad));
    report.line("closed form: " + fmt(closed));
    report.line("relative gap: " + fmt(gap));
    report.summary = {{"command", "rigidity"}, {"quadrature", quad}, {"closed_form", closed}, {"relative_gap", gap}};
    report.finish();
    return (gap < kRigidityGapThreshold || diff < 1e-10) ? kExitOk : kExitVerificationFailed;
}

// --- nD commands ---------------------------------------------------------------

struct EllipsoidArgs {
    std::string spec;
    double delta = 0.5;
    int steps = 100;
    std::string out;
    std::optional<unsigned long long> seed;
};

int cmd_ellipsoid(const EllipsoidArgs& a, Report& report) {
    const Quadric q = io::load_quadric(a.spec);
    if (!(a.delta > 0.0 && a.delta <= 0.5 * std::numbers::pi)) throw InvalidInput("delta must lie in (0, pi/2]");
    if (a.steps < 1) throw InvalidInput("--steps must be positive");
    std::mt19937_64 rng(resolve_seed(a.seed));
    const Eigen::VectorXd nu = random_unit(rng, q.dim());
    const Eigen::VectorXd heading = random_unit(rng, q.dim());
    OrientedLineND line = constant_angle_line_nd(q, a.delta, nu, heading);

    std::vector<io::BounceRecord> bounces;
    double quadric_residual = 0.0;
    double angle_residual = 0.0;
    for (int i = 0; i < a.steps; ++i) {
        ReflectionND r = reflect_nd(q, line);
        const double angle = incidence_angle(line.n, r.normal);
        quadric_residual = std::max(quadric_residual, std::abs(q.implicit(r.P)));
        angle_residual = std::max(angle_residual, std::abs(angle - a.delta));
        bounces.push_back({r.P, line.n, angle});
        line = std::move(r.next);
    }
    std::ostringstream csv;
    io::write_bounce_csv(csv, bounces);
    emit(a.out, csv.str(), report);
    report.line("max |F(P)|: " + fmt(quadric_residual));
    report.line("max |incidence - delta|: " + fmt(angle_residual));
    report.summary = {{"command", "ellipsoid"},
                      {"bounces", bounces.size()},
                      {"max_quadric_residual", quadric_residual},
                      {"max_incidence_residual", angle_residual}};
    report.finish();
    return kExitOk;
}

int cmd_gradient_check(const std::string& spec_path, int pairs, const std::optional<unsigned long long>& seed,
                       Report& report) {
    const Quadric q = io::load_quadric(spec_path);
    if (pairs < 1) throw InvalidInput("--pairs must be positive");
    std::mt19937_64 rng(resolve_seed(seed));
    double r1 = 0.0;
    double r2 = 0.0;
    double gap = 0.0;
    double min_sv = std::numeric_limits<double>::infinity();
    for (int i = 0; i < pairs; ++i) {
        Eigen::VectorXd n1;
        Eigen::VectorXd n2;
        do {
            n1 = random_unit(rng, q.dim());
            n2 = random_unit(rng, q.dim());
        } while ((n1 - n2).norm() < 0.1);
        const auto g = gradient_contract_residual(q, n1, n2);
        r1 = std::max(r1, g.r1);
        r2 = std::max(r2, g.r2);
        gap = std::max({gap, g.analytic_gap1, g.analytic_gap2});
        min_sv = std::min(min_sv, twist_jacobian_min_sv(q, n1, n2));
    }
    const bool ok = r1 < kGradientThreshold && r2 < kGradientThreshold && gap < kGradientThreshold;
    report.line("max |D1 S - m1|: " + fmt(r1));
    report.line("max |D2 S + m2|: " + fmt(r2));
    report.line("max |D S - projection formula|: " + fmt(gap));
    report.line("min twist singular value: " + fmt(min_sv));
    report.summary = {{"command", "gradient-check"}, {"pairs", pairs}, {"max_r1", r1}, {"max_r2", r2},
                      {"max_analytic_gap", gap}, {"min_twist_sv", min_sv}, {"pass", ok}};
    report.finish();
    return ok ? kExitOk : kExitVerificationFailed;
}

struct ChordArgs {
    std::string surface = "sphere";
    double radius = 1.0;
    std::string spec;
    double delta = 0.0;
    std::optional<double> length;
    double step = 1e-3;
    std::vector<double> normal{1.0, 0.0, 0.0};
    double heading = 0.0;
    std::string out;
};

int cmd_chords(const ChordArgs& a, Report& report) {
    std::unique_ptr<ImplicitSurface> surface;
    Eigen::Vector3d nu(a.normal.size() == 3 ? a.normal[0] : 0.0, a.normal.size() == 3 ? a.normal[1] : 0.0,
                       a.normal.size() == 3 ? a.normal[2] : 0.0);
    if (a.normal.size() != 3 || nu.norm() < 1e-12) throw InvalidInput("--normal needs three components");
    nu.normalize();
    Eigen::Vector3d x0;
    if (a.surface == "sphere") {
        auto sphere = std::make_unique<SphereSurface>(a.radius);
        x0 = a.radius * nu;
        surface = std::move(sphere);
    } else if (a.surface == "ellipsoid") {
        if (a.spec.empty()) throw InvalidInput("--surface ellipsoid needs --spec");
        const Quadric q = io::load_quadric(a.spec);
        if (q.dim() != 3) throw InvalidInput("chord analysis works in R^3 only");
        auto ell = std::make_unique<EllipsoidSurface>(Eigen::Matrix3d(q.A()));
        x0 = ell->gauss_inverse(nu);
        surface = std::move(ell);
    } else {
        throw InvalidInput("unknown surface '" + a.surface + "' (sphere or ellipsoid)");
    }
    const auto [t1, t2] = tangent_frame(*surface, x0);
    const Eigen::Vector3d v0 = std::cos(a.heading) * t1 + std::sin(a.heading) * t2;
    const double length = a.length.value_or(std::numbers::pi * surface->diameter());

    const auto traj = integrate_geodesic(*surface, x0, v0, length, a.step);
    const auto frenet = frenet_apparatus(traj);
    const auto cc = chord_correspondence(*surface, traj, a.delta);
    const auto rows = chord_report(cc, frenet, a.delta);

    std::ostringstream csv;
    io::write_chord_csv(csv, rows);
    emit(a.out, csv.str(), report);

    double l_min = std::numeric_limits<double>::infinity();
    double l_max = 0.0;
    double r5 = 0.0;
    double r6 = 0.0;
    double r9 = 0.0;
    for (const auto& r : rows) {
        l_min = std::min(l_min, r.l);
        l_max = std::max(l_max, r.l);
        r5 = std::max(r5, r.r5);
        r6 = std::max(r6, r.r6);
        r9 = std::max(r9, r.r9);
    }
    const double vanish = simultaneous_vanish_check(cc, frenet, a.delta);
    report.line("chord length range: [" + fmt(l_min) + ", " + fmt(l_max) + "]");
    report.line("max R5, R6, R9: " + fmt(r5) + ", " + fmt(r6) + ", " + fmt(r9));
    report.line("min (k l - sin d)^2 + tau^2: " + fmt(vanish));
    report.summary = {{"command", "chords"}, {"rows", rows.size()}, {"l_min", l_min},   {"l_max", l_max},
                      {"max_R5", r5},      {"max_R6", r6},          {"max_R9", r9},     {"min_vanish", vanish}};
    report.finish();
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical experiments with constant-angle convex billiards"};
    app.require_subcommand(1, 1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Print a one-line JSON summary instead of text");

    int roots_n = 0;
    auto* roots = app.add_subcommand("roots", "Solve tan(n d) = n tan(d) on (0, pi/2)");
    roots->add_option("--n", roots_n, "Harmonic n (>= 4)")->required();

    TableArgs table_args;
    auto* table = app.add_subcommand("table", "Write a table file (Gutkin table or circle)");
    table->add_option("--n", table_args.n, "Harmonic of the curvature radius");
    table->add_option("--root-index", table_args.root_index, "Which root of the angle equation");
    table->add_option("--a0", table_args.a0, "Mean curvature radius");
    table->add_option("--an", table_args.an, "Amplitude of cos(n phi) in the curvature radius");
    table->add_option("--radius", table_args.radius, "Write a circle of this radius instead");
    table->add_option("--out", table_args.out, "Output JSON path")->required();

    std::string verify_table;
    std::optional<double> verify_delta;
    int verify_grid = 360;
    auto* verify = app.add_subcommand("verify", "Check that the delta-chords keep their angle");
    verify->add_option("--table", verify_table, "Table JSON")->required();
    verify->add_option("--delta", verify_delta, "Angle (defaults to the table's Gutkin angle)");
    verify->add_option("--grid", verify_grid, "Number of boundary points");

    OrbitArgs orbit_args;
    auto* orbit_cmd = app.add_subcommand("orbit", "Iterate the billiard map and write the orbit CSV");
    orbit_cmd->add_option("--table", orbit_args.table, "Table JSON")->required();
    orbit_cmd->add_option("--p", orbit_args.p, "Signed distance of the start line");
    orbit_cmd->add_option("--phi", orbit_args.phi, "Normal angle of the start line");
    orbit_cmd->add_option("--delta", orbit_args.delta, "Start on the constant-angle line of this angle");
    orbit_cmd->add_option("--psi", orbit_args.psi, "Gauss parameter of the constant-angle start point");
    orbit_cmd->add_option("--steps", orbit_args.steps, "Number of bounces");
    orbit_cmd->add_option("--out", orbit_args.out, "Output CSV (stdout if omitted)");

    PortraitArgs portrait_args;
    auto* portrait = app.add_subcommand("phase-portrait", "Orbits from a grid of start lines");
    portrait->add_option("--table", portrait_args.table, "Table JSON")->required();
    portrait->add_option("--p-grid", portrait_args.p_grid, "Start lines per normal angle");
    portrait->add_option("--phi-grid", portrait_args.phi_grid, "Number of start normal angles");
    portrait->add_option("--steps", portrait_args.steps, "Bounces per orbit");
    portrait->add_option("--out", portrait_args.out, "Output CSV (stdout if omitted)");
    portrait->add_option("--svg", portrait_args.svg, "Also render an SVG scatter plot");

    std::string rigidity_table;
    double rigidity_d1 = 0.0;
    double rigidity_d2 = 0.0;
    int rigidity_order = 32;
    auto* rigidity = app.add_subcommand("rigidity", "Integral of (S11 + 2 S12 + S22) S12 over a strip");
    rigidity->add_option("--table", rigidity_table, "Table JSON")->required();
    rigidity->add_option("--delta1", rigidity_d1, "Lower strip angle")->required();
    rigidity->add_option("--delta2", rigidity_d2, "Upper strip angle")->required();
    rigidity->add_option("--order", rigidity_order, "Gauss-Legendre order in alpha");

    EllipsoidArgs ell_args;
    auto* ellipsoid = app.add_subcommand("ellipsoid", "Billiard orbit inside an ellipsoid");
    ellipsoid->add_option("--spec", ell_args.spec, "Ellipsoid spec JSON")->required();
    ellipsoid->add_option("--delta", ell_args.delta, "Angle of the first chord with the tangent hyperplane");
    ellipsoid->add_option("--steps", ell_args.steps, "Number of bounces");
    ellipsoid->add_option("--out", ell_args.out, "Output CSV (stdout if omitted)");
    ellipsoid->add_option("--seed", ell_args.seed, "Random seed for the start point (GUTKIN_SEED)");

    std::string grad_spec;
    int grad_pairs = 100;
    std::optional<unsigned long long> grad_seed;
    auto* gradient = app.add_subcommand("gradient-check", "Check m1 = D1 S, m2 = -D2 S on random chords");
    gradient->add_option("--spec", grad_spec, "Ellipsoid spec JSON")->required();
    gradient->add_option("--pairs", grad_pairs, "Number of random direction pairs");
    gradient->add_option("--seed", grad_seed, "Random seed (GUTKIN_SEED)");

    ChordArgs chord_args;
    auto* chords = app.add_subcommand("chords", "Chord correspondence along a geodesic");
    chords->add_option("--surface", chord_args.surface, "sphere or ellipsoid");
    chords->add_option("--radius", chord_args.radius, "Sphere radius");
    chords->add_option("--spec", chord_args.spec, "Ellipsoid spec JSON (d = 3)");
    chords->add_option("--delta", chord_args.delta, "Chord angle")->required();
    chords->add_option("--length", chord_args.length, "Geodesic length (default pi * diameter)");
    chords->add_option("--step", chord_args.step, "Arc-length step");
    chords->add_option("--normal", chord_args.normal, "Outward normal at the start point")->expected(3)->delimiter(',');
    chords->add_option("--heading", chord_args.heading, "Start direction angle in the tangent frame");
    chords->add_option("--out", chord_args.out, "Output CSV (stdout if omitted)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    Report report{out, err, as_json};
    try {
        if (*roots) return cmd_roots(roots_n, report);
        if (*table) return cmd_table(table_args, report);
        if (*verify) return cmd_verify(verify_table, verify_delta, verify_grid, report);
        if (*orbit_cmd) return cmd_orbit(orbit_args, report);
        if (*portrait) return cmd_phase_portrait(portrait_args, report);
        if (*rigidity) return cmd_rigidity(rigidity_table, rigidity_d1, rigidity_d2, rigidity_order, report);
        if (*ellipsoid) return cmd_ellipsoid(ell_args, report);
        if (*gradient) return cmd_gradient_check(grad_spec, grad_pairs, grad_seed, report);
        if (*chords) return cmd_chords(chord_args, report);
    } catch (const ConvergenceFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitVerificationFailed;
    } catch (const NonConvex& e) {
        err << "error: non-convex table: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}

}  // namespace gutkin::cli
