#include "gutkin/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gutkin/errors.hpp"

namespace gutkin::io {

using nlohmann::json;

TableSpec table_spec(const GutkinTable& table) { return {table.curve, GutkinParams{table.n, table.delta}}; }

json table_to_json(const TableSpec& spec) {
    const auto& h = spec.curve.h();
    json harmonics = json::array();
    for (int k = 1; k <= static_cast<int>(h.size()); ++k) {
        if (h.cos_coeff(k) == 0.0 && h.sin_coeff(k) == 0.0) continue;
        harmonics.push_back({{"k", k}, {"cos", h.cos_coeff(k)}, {"sin", h.sin_coeff(k)}});
    }
    json doc;
    doc["a0"] = h.constant();
    doc["harmonics"] = std::move(harmonics);
    if (spec.gutkin) {
        doc["gutkin"] = {{"n", spec.gutkin->n}, {"delta", spec.gutkin->delta}};
    } else {
        doc["gutkin"] = nullptr;
    }
    return doc;
}

TableSpec table_from_json(const json& doc) {
    try {
        if (!doc.is_object()) throw InvalidInput("table file must hold a JSON object");
        const double a0 = doc.at("a0").get<double>();
        std::map<int, std::pair<double, double>> coeffs;
        for (const auto& item : doc.at("harmonics")) {
            const int k = item.at("k").get<int>();
            if (k < 1 || k > kMaxSupportDegree) {
                throw InvalidInput("harmonic index " + std::to_string(k) + " out of range");
            }
            if (!coeffs.emplace(k, std::pair{item.value("cos", 0.0), item.value("sin", 0.0)}).second) {
                throw InvalidInput("harmonic " + std::to_string(k) + " listed twice");
            }
        }
        const int degree = coeffs.empty() ? 0 : coeffs.rbegin()->first;
        std::vector<double> c(static_cast<std::size_t>(degree), 0.0);
        std::vector<double> s(static_cast<std::size_t>(degree), 0.0);
        for (const auto& [k, cs] : coeffs) {
            c[k - 1] = cs.first;
            s[k - 1] = cs.second;
        }
        TableSpec spec{SupportCurve(TrigPolynomial(a0, std::move(c), std::move(s))), std::nullopt};
        if (!spec.curve.is_strictly_convex()) {
            throw NonConvex("table is non-convex (min rho = " + std::to_string(spec.curve.rho_min()) + ")");
        }
        const json& g = doc.contains("gutkin") ? doc.at("gutkin") : json(nullptr);
        if (!g.is_null()) spec.gutkin = GutkinParams{g.at("n").get<int>(), g.at("delta").get<double>()};
        return spec;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed table file: ") + e.what());
    }
}

void save_table(const std::filesystem::path& path, const TableSpec& spec) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << table_to_json(spec).dump(2) << '\n';
}

namespace {

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput(path.string() + ": " + e.what());
    }
}

}  // namespace

TableSpec load_table(const std::filesystem::path& path) { return table_from_json(read_json(path)); }

json quadric_to_json(const Quadric& q) {
    json a = json::array();
    for (int i = 0; i < q.dim(); ++i) {
        for (int j = 0; j < q.dim(); ++j) a.push_back(q.A()(i, j));
    }
    return {{"d", q.dim()}, {"A", std::move(a)}};
}

Quadric quadric_from_json(const json& doc, int max_dim) {
    try {
        const int d = doc.at("d").get<int>();
        if (d < 2 || d > max_dim) {
            throw InvalidInput("dimension " + std::to_string(d) + " outside [2, " + std::to_string(max_dim) + "]");
        }
        const auto values = doc.at("A").get<std::vector<double>>();
        if (values.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
            throw InvalidInput("ellipsoid matrix needs d*d = " + std::to_string(d * d) + " entries");
        }
        Eigen::MatrixXd A(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) A(i, j) = values[static_cast<std::size_t>(i * d + j)];
        }
        return Quadric(std::move(A));
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed ellipsoid spec: ") + e.what());
    }
}

Quadric load_quadric(const std::filesystem::path& path, int max_dim) {
    return quadric_from_json(read_json(path), max_dim);
}

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void write_chord_row(std::ostream& out, std::size_t step, const ChordData& c) {
    out << step << ',' << format_real(c.line.p) << ',' << format_real(c.line.phi) << ','
        << format_real(c.psi_back) << ',' << format_real(c.psi_fwd) << ',' << format_real(c.angle_back) << ','
        << format_real(c.angle_fwd) << '\n';
}

}  // namespace

void write_orbit_csv(std::ostream& out, const std::vector<ChordData>& chords) {
    out << kOrbitCsvHeader << '\n';
    for (std::size_t i = 0; i < chords.size(); ++i) write_chord_row(out, i, chords[i]);
}

void write_orbits_csv(std::ostream& out, const std::vector<std::vector<ChordData>>& orbits) {
    out << kOrbitCsvHeader << '\n';
    for (const auto& orbit : orbits) {
        for (std::size_t i = 0; i < orbit.size(); ++i) write_chord_row(out, i, orbit[i]);
    }
}

void write_bounce_csv(std::ostream& out, const std::vector<BounceRecord>& bounces) {
    const Eigen::Index d = bounces.empty() ? 0 : bounces.front().P.size();
    out << "step";
    for (Eigen::Index i = 1; i <= d; ++i) out << ",P_" << i;
    for (Eigen::Index i = 1; i <= d; ++i) out << ",n_" << i;
    out << ",incidence_angle\n";
    for (std::size_t row = 0; row < bounces.size(); ++row) {
        const auto& b = bounces[row];
        out << row;
        for (Eigen::Index i = 0; i < d; ++i) out << ',' << format_real(b.P[i]);
        for (Eigen::Index i = 0; i < d; ++i) out << ',' << format_real(b.n[i]);
        out << ',' << format_real(b.incidence_angle) << '\n';
    }
}

void write_chord_csv(std::ostream& out, const std::vector<ChordReportRow>& rows) {
    out << kChordCsvHeader << '\n';
    for (const auto& r : rows) {
        out << format_real(r.s) << ',' << format_real(r.k) << ',' << format_real(r.tau) << ',' << format_real(r.l)
            << ',' << format_real(r.l_dot) << ',' << format_real(r.r5) << ',' << format_real(r.r6) << ','
            << format_real(r.r9) << ',' << format_real(r.d_numeric) << ',' << format_real(r.d_analytic) << ','
            << format_real(r.a_coeff) << '\n';
    }
}

std::string render_phase_portrait_svg(const std::vector<std::vector<ChordData>>& orbits) {
    constexpr double width = 800.0;
    constexpr double height = 500.0;
    constexpr double pad = 40.0;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    static constexpr const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                              "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

    double p_lo = 0.0;
    double p_hi = 0.0;
    bool first = true;
    for (const auto& orbit : orbits) {
        for (const auto& c : orbit) {
            p_lo = first ? c.line.p : std::min(p_lo, c.line.p);
            p_hi = first ? c.line.p : std::max(p_hi, c.line.p);
            first = false;
        }
    }
    if (p_hi - p_lo < 1e-12) {
        p_lo -= 1.0;
        p_hi += 1.0;
    }

    auto fixed = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << width - 2 * pad << "\" height=\""
        << height - 2 * pad << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">phi (mod 2 pi)</text>\n";
    svg << "<text x=\"12\" y=\"" << height / 2 << "\" transform=\"rotate(-90 12 " << height / 2
        << ")\" text-anchor=\"middle\">p [" << fixed(p_lo) << ", " << fixed(p_hi) << "]</text>\n";
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        svg << "<g fill=\"" << palette[o % std::size(palette)] << "\">\n";
        for (const auto& c : orbits[o]) {
            const double x = pad + (width - 2 * pad) * c.line.reduced_phi() / two_pi;
            const double y = height - pad - (height - 2 * pad) * (c.line.p - p_lo) / (p_hi - p_lo);
            svg << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(y) << "\" r=\"1\"/>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace gutkin::io
