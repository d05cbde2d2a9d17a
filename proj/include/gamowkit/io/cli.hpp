// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io/cli.hpp
 * @brief JSON model ingestion and the command runner behind the gamowkit tool.
 *
 * Every command renders a table. CSV output starts with '#' provenance lines
 * echoing the parsed configuration and model, then a column header and rows.
 * JSON output carries the same provenance object and named-field rows.
 * Numbers print as %.12g, with ".0" appended to integral values.
 */

#pragma once

#include <gamowkit/core.hpp>
#include <gamowkit/evolution.hpp>
#include <gamowkit/goldenrule.hpp>
#include <gamowkit/openquantum.hpp>
#include <gamowkit/scattering.hpp>
#include <gamowkit/spectral.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace gamowkit::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// ============================================================================
// Number formatting
// ============================================================================

[[nodiscard]] inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    std::string s(buf);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

// ============================================================================
// JSON helpers
// ============================================================================

namespace detail {

[[noreturn]] inline void schema_error(const std::string& what) {
    throw ToolkitError(ErrorKind::InvalidModel, "model JSON: " + what);
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline double number(const json& j, const char* what) {
    if (!j.is_number()) schema_error(std::string("'") + what + "' must be a number");
    return j.get<double>();
}

inline double number_field(const json& j, const char* key) { return number(field(j, key), key); }

inline double number_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? number(j.at(key), key) : fallback;
}

/// [re, im] pair or a plain real number.
inline Complex complex_value(const json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        schema_error(std::string("'") + what + "' must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline CMatrix matrix_value(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) schema_error(std::string("'") + what + "' must be a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    CMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            schema_error(std::string("'") + what + "' must be square");
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_value(row[static_cast<std::size_t>(c)], what);
    }
    return m;
}

inline json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

[[nodiscard]] inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ToolkitError(ErrorKind::IoError, "cannot open model file", {{"path", path}});
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ToolkitError(ErrorKind::IoError, std::string("model file is not valid JSON: ") + e.what(),
                           {{"path", path}});
    }
}

// ---- S-matrix models --------------------------------------------------------

[[nodiscard]] inline SMatrixModel smatrix_from_json(const json& j) {
    const json& kind = detail::field(j, "kind");
    if (!kind.is_string()) detail::schema_error("'kind' must be a string");
    const auto k = kind.get<std::string>();
    if (k == "delta-shell") return SMatrixModel::delta_shell(detail::number_field(j, "g"), detail::number_field(j, "a"));
    if (k == "rational") {
        const json& poles = detail::field(j, "poles");
        if (!poles.is_array()) detail::schema_error("'poles' must be an array");
        std::vector<ComplexEnergy> zs;
        for (const auto& p : poles) zs.emplace_back(detail::number_field(p, "re"), detail::number_field(p, "im"));
        return SMatrixModel::rational(std::move(zs));
    }
    detail::schema_error("unknown S-matrix kind '" + k + "'");
}

[[nodiscard]] inline json to_json(const SMatrixModel& m) {
    json j;
    j["kind"] = to_string(m.kind());
    if (m.kind() == ModelKind::DeltaShell) {
        j["g"] = m.coupling();
        j["a"] = m.radius();
    } else {
        json poles = json::array();
        for (const auto& z : m.rational_poles()) poles.push_back({{"re", z.re()}, {"im", z.im()}});
        j["poles"] = std::move(poles);
    }
    return j;
}

// ---- Resonances and amplitudes ----------------------------------------------

[[nodiscard]] inline ResonanceParameters resonance_from_json(const json& j) {
    return ResonanceParameters(detail::number_field(j, "er"), detail::number_field(j, "gamma"));
}

[[nodiscard]] inline json to_json(const ResonanceParameters& p) { return {{"er", p.e_r()}, {"gamma", p.gamma()}}; }

/// {"terms": [{"re": .., "im": .., "residue": [re, im]}], "scale": [re, im]}
[[nodiscard]] inline RationalAmplitude amplitude_from_json(const json& j) {
    const json& terms = detail::field(j, "terms");
    if (!terms.is_array()) detail::schema_error("'terms' must be an array");
    std::vector<PoleTerm> out;
    for (const auto& t : terms)
        out.push_back({ComplexEnergy(detail::number_field(t, "re"), detail::number_field(t, "im")),
                       detail::complex_value(detail::field(t, "residue"), "residue")});
    const Complex scale = j.contains("scale") ? detail::complex_value(j.at("scale"), "scale") : Complex(1.0, 0.0);
    return RationalAmplitude(std::move(out), scale);
}

[[nodiscard]] inline json to_json(const RationalAmplitude& a) {
    json terms = json::array();
    for (const auto& t : a.terms())
        terms.push_back({{"re", t.location.re()}, {"im", t.location.im()}, {"residue", detail::complex_json(t.residue)}});
    return {{"terms", std::move(terms)}, {"scale", detail::complex_json(a.scale())}};
}

// ---- Decay models -------------------------------------------------------------

/// Resonance, channels and form factor as read from a decay-model document.
struct DecaySpec {
    ResonanceParameters resonance;
    DecayChannelSet channels;
    FormFactor form;
};

[[nodiscard]] inline DecaySpec decay_from_json(const json& j) {
    const auto p = resonance_from_json(detail::field(j, "resonance"));
    const json& chs = detail::field(j, "channels");
    if (!chs.is_array()) detail::schema_error("'channels' must be an array");
    std::vector<DecayChannel> channels;
    for (const auto& c : chs) {
        const json& b = detail::field(c, "b");
        if (!b.is_string()) detail::schema_error("channel 'b' must be a string");
        channels.push_back({b.get<std::string>(), detail::number_or(c, "weight", 1.0)});
    }
    Support support = Support::Semibounded;
    if (j.contains("support")) {
        const auto s = j.at("support").get<std::string>();
        if (s == "full") support = Support::FullLine;
        else if (s != "semibounded") detail::schema_error("'support' must be 'full' or 'semibounded'");
    }
    DecayChannelSet set(std::move(channels), detail::number_or(j, "threshold", 0.0), support);

    const json& ff = detail::field(j, "form_factor");
    const json& shape = detail::field(ff, "shape");
    if (!shape.is_string()) detail::schema_error("form factor 'shape' must be a string");
    const auto s = shape.get<std::string>();
    const double g2 = detail::number_or(ff, "g2", 1.0);
    std::optional<FormFactor> v;
    if (s == "constant") v = FormFactor::constant(g2);
    else if (s == "power-threshold") v = FormFactor::power_threshold(g2, detail::number_field(ff, "alpha"));
    else if (s == "lorentz-cutoff") v = FormFactor::lorentz_cutoff(g2, detail::number_field(ff, "cutoff"));
    else detail::schema_error("unknown form factor shape '" + s + "'");
    if (ff.contains("multipliers")) {
        const json& m = ff.at("multipliers");
        if (!m.is_object()) detail::schema_error("'multipliers' must be an object");
        for (const auto& [label, value] : m.items()) v = v->with_multiplier(label, detail::number(value, "multiplier"));
    }
    return {p, std::move(set), *v};
}

[[nodiscard]] inline json to_json(const DecaySpec& d) {
    json channels = json::array();
    for (const auto& c : d.channels.channels()) channels.push_back({{"b", c.label}, {"weight", c.weight}});
    json ff{{"shape", to_string(d.form.shape())}, {"g2", d.form.coupling()}};
    if (d.form.shape() == FormShape::PowerThreshold) ff["alpha"] = d.form.alpha();
    if (d.form.shape() == FormShape::LorentzCutoff) ff["cutoff"] = d.form.cutoff();
    if (!d.form.multipliers().empty()) {
        json m = json::object();
        for (const auto& [label, value] : d.form.multipliers()) m[label] = value;
        ff["multipliers"] = std::move(m);
    }
    return {{"resonance", to_json(d.resonance)},
            {"channels", std::move(channels)},
            {"threshold", d.channels.threshold()},
            {"support", to_string(d.channels.support())},
            {"form_factor", std::move(ff)}};
}

// ---- Lindblad generators ------------------------------------------------------

[[nodiscard]] inline LiouvillianGenerator generator_from_json(const json& j) {
    const double dim = detail::number_field(j, "dim");
    const CMatrix h = detail::matrix_value(detail::field(j, "h"), "h");
    if (static_cast<double>(h.rows()) != dim) detail::schema_error("'dim' does not match 'h'");
    std::vector<JumpOperator> jumps;
    if (j.contains("jumps")) {
        for (const auto& jump : j.at("jumps"))
            jumps.push_back({detail::matrix_value(detail::field(jump, "matrix"), "matrix"),
                             detail::number_or(jump, "rate", 1.0)});
    }
    return LiouvillianGenerator(h, jumps);
}

[[nodiscard]] inline json to_json(const LiouvillianGenerator& g) {
    json jumps = json::array();
    for (const auto& j : g.raw_jumps()) jumps.push_back({{"matrix", detail::matrix_json(j.matrix)}, {"rate", j.rate}});
    return {{"dim", g.dim()}, {"h", detail::matrix_json(g.hamiltonian())}, {"jumps", std::move(jumps)}};
}

/// Seeded random GKSL generator: Gaussian H, one or two Gaussian jumps.
[[nodiscard]] inline LiouvillianGenerator random_generator(int dim, std::uint64_t seed) {
    gamowkit::detail::require(dim >= 1 && dim <= kMaxOpenDim, ErrorKind::InvalidModel, "dimension out of range",
                              {{"dim", std::to_string(dim)}});
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    const auto draw = [&] {
        CMatrix m(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) m(r, c) = Complex(nd(rng), nd(rng));
        return m;
    };
    const CMatrix a = draw();
    const CMatrix h = 0.5 * (a + a.adjoint());
    std::vector<JumpOperator> jumps{{draw() / std::sqrt(2.0 * dim), 0.5}};
    if (dim > 2) jumps.push_back({draw() / std::sqrt(2.0 * dim), 0.25});
    return LiouvillianGenerator(h, jumps);
}

// ============================================================================
// Run configuration
// ============================================================================

enum class Format { Csv, Json };

struct RunConfig {
    std::string command;
    std::string model_path;
    std::string out_path;
    Format format = Format::Csv;
    std::optional<int> quad_order;
    std::optional<double> t_max;
    int steps = 100;
    std::optional<double> t;
    std::vector<double> region;
    Support support = Support::Semibounded;
    std::uint64_t seed = 1;
    int dim = 2;
    std::optional<double> tol;
    bool stamp = false;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"poles", "survival", "khalfin", "decay", "born-limit", "lindblad",
                                            "expansion"};
    return c;
}

/// "a,b,c" to numbers; InvalidModel on anything else.
[[nodiscard]] inline std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        gamowkit::detail::require(!item.empty() && end != nullptr && *end == '\0' && std::isfinite(v),
                                  ErrorKind::InvalidModel, "expected a comma-separated list of numbers",
                                  {{"value", text}});
        out.push_back(v);
    }
    return out;
}

/// Flag value, else GAMOWKIT_QUAD_ORDER, else the library default.
[[nodiscard]] inline int resolve_quad_order(const std::optional<int>& flag) {
    if (flag) {
        gamowkit::detail::require_order(*flag);
        return *flag;
    }
    if (const char* env = std::getenv("GAMOWKIT_QUAD_ORDER"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        gamowkit::detail::require(end != nullptr && *end == '\0', ErrorKind::InvalidModel,
                                  "GAMOWKIT_QUAD_ORDER must be an integer", {{"value", env}});
        gamowkit::detail::require_order(static_cast<int>(v));
        return static_cast<int>(v);
    }
    return kDefaultQuadOrder;
}

[[nodiscard]] inline json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["model"] = c.model_path;
    j["format"] = c.format == Format::Csv ? "csv" : "json";
    j["quad_order"] = resolve_quad_order(c.quad_order);
    if (c.t_max) j["t_max"] = *c.t_max;
    j["steps"] = c.steps;
    if (c.t) j["t"] = *c.t;
    if (!c.region.empty()) j["region"] = c.region;
    j["support"] = to_string(c.support);
    j["seed"] = c.seed;
    j["dim"] = c.dim;
    if (c.tol) j["tol"] = *c.tol;
    return j;
}

// ============================================================================
// Tables
// ============================================================================

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    json model;
};

namespace detail {

inline std::vector<double> time_grid(const RunConfig& c, double default_t_max) {
    if (c.t) return {*c.t};
    const double t_max = c.t_max.value_or(default_t_max);
    gamowkit::detail::require(c.steps >= 1, ErrorKind::InvalidModel, "--steps must be at least 1");
    gamowkit::detail::require(std::isfinite(t_max) && t_max > 0.0, ErrorKind::InvalidModel,
                              "--t-max must be positive", {{"t_max", gamowkit::detail::num(t_max)}});
    std::vector<double> g;
    for (int i = 0; i <= c.steps; ++i) g.push_back(t_max * i / c.steps);
    return g;
}

inline json load_model(const RunConfig& c) {
    gamowkit::detail::require(!c.model_path.empty(), ErrorKind::InvalidModel,
                              "command '" + c.command + "' needs --model");
    return read_json_file(c.model_path);
}

inline Table run_poles(const RunConfig& c) {
    const auto model = smatrix_from_json(load_model(c));
    gamowkit::detail::require(c.region.size() == 3 || c.region.size() == 4, ErrorKind::InvalidModel,
                              "poles needs --region e_min,e_max,im_min[,eps]");
    const double eps = c.region.size() == 4 ? c.region[3] : 1e-4;
    const PoleSearchRegion region(c.region[0], c.region[1], c.region[2], -eps);
    Table t{{"re", "im", "e_r", "gamma", "residue_re", "residue_im"}, {}, to_json(model)};
    for (const auto& p : find_poles(model, region)) {
        const auto rp = p.parameters();
        t.rows.push_back({p.z_r.re(), p.z_r.im(), rp.e_r(), rp.gamma(), p.residue.real(), p.residue.imag()});
    }
    return t;
}

inline EnergyWavefunction wavefunction_from_model(const json& j, int order) {
    if (j.contains("amplitude")) return EnergyWavefunction(amplitude_from_json(j.at("amplitude")), "rational", order);
    return EnergyWavefunction::breit_wigner(resonance_from_json(field(j, "resonance")));
}

inline Table run_survival(const RunConfig& c, int order) {
    const json doc = load_model(c);
    const auto phi = wavefunction_from_model(doc, order);
    SurvivalOptions opt;
    opt.order = order;
    if (c.tol) opt.tol = *c.tol;
    const auto times = time_grid(c, 10.0);
    gamowkit::detail::require_time_grid(times);
    Table t{{"t", "amplitude_re", "amplitude_im", "probability"}, {}, doc};
    for (double s : times) {
        const Complex a = survival_amplitude(phi, s, c.support, opt);
        t.rows.push_back({s, a.real(), a.imag(), survival_probability(phi, s, c.support, opt)});
    }
    return t;
}

inline Table run_khalfin(const RunConfig& c, int order) {
    const json doc = load_model(c);
    const auto p = resonance_from_json(field(doc, "resonance"));
    SurvivalOptions opt;
    opt.order = order;
    if (c.tol) opt.tol = *c.tol;
    Table t{{"t", "gamma_t", "p_semibounded", "exponential", "ratio"}, {}, {{"resonance", to_json(p)}}};
    for (const auto& r : khalfin_comparison(p, time_grid(c, 30.0 / p.gamma()), opt))
        t.rows.push_back({r.t, r.t * p.gamma(), r.p_semibounded, r.exponential, r.ratio});
    return t;
}

inline Table run_decay(const RunConfig& c, int order) {
    const auto spec = decay_from_json(load_model(c));
    const auto m = DecayModel::normalized(spec.resonance, spec.channels, spec.form, order);
    Table t{{"t", "P", "rate", "survival"}, {}, to_json(DecaySpec{m.resonance(), m.channels(), m.form()})};
    const auto times = time_grid(c, 10.0);
    for (double s : times) {
        const double pr = decay_probability(m, s);
        t.rows.push_back({s, pr, decay_rate(m, s), 1.0 - pr});
    }
    return t;
}

inline Table run_born_limit(const RunConfig& c, int order) {
    const json doc = load_model(c);
    const auto spec = decay_from_json(doc);
    std::vector<double> ratios{0.1, 0.01, 0.001};
    if (doc.contains("ratios")) {
        ratios.clear();
        for (const auto& r : doc.at("ratios")) ratios.push_back(number(r, "ratios"));
    }
    Table t{{"gamma_over_er", "exact_rate", "fermi_rate", "rel_diff"}, {}, to_json(spec)};
    t.model["ratios"] = ratios;
    for (const auto& r : born_limit_sweep(spec.resonance.e_r(), spec.channels, spec.form, ratios, order))
        t.rows.push_back({r.gamma_over_er, r.exact_rate, r.fermi_rate, r.rel_diff});
    return t;
}

inline Table run_lindblad(const RunConfig& c) {
    std::optional<LiouvillianGenerator> g;
    std::optional<DensityMatrix> rho0;
    if (!c.model_path.empty()) {
        const json doc = read_json_file(c.model_path);
        g = generator_from_json(doc);
        if (doc.contains("rho0")) rho0 = DensityMatrix(matrix_value(doc.at("rho0"), "rho0"));
    } else {
        g = random_generator(c.dim, c.seed);
    }
    if (!rho0) rho0 = DensityMatrix::basis(g->dim(), g->dim() - 1);
    const int n = g->dim();
    Table t{{"t", "trace", "purity", "min_eigenvalue"}, {}, to_json(*g)};
    t.model["rho0"] = matrix_json(rho0->matrix());
    for (int k = 0; k < n; ++k) t.columns.push_back("pop_" + std::to_string(k));
    const auto times = time_grid(c, 10.0);
    gamowkit::detail::require_time_grid(times);
    for (double s : times) {
        const auto rho = lindblad_evolve(*g, *rho0, s);
        std::vector<double> row{s, rho.trace().real(), rho.purity(), rho.min_eigenvalue()};
        for (int k = 0; k < n; ++k) row.push_back(rho(k, k).real());
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Table run_expansion(const RunConfig& c, int order) {
    const json doc = load_model(c);
    const auto model = smatrix_from_json(field(doc, "smatrix"));
    const EnergyWavefunction phi(amplitude_from_json(field(doc, "amplitude")), "rational", order);
    std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0};
    if (doc.contains("grid")) {
        grid.clear();
        for (const auto& x : doc.at("grid")) grid.push_back(number(x, "grid"));
    }
    ExpansionOptions opt;
    opt.order = order;
    if (c.tol) opt.tol = *c.tol;
    opt.probe_height = number_or(doc, "probe_height", opt.probe_height);
    const auto dirac = dirac_reconstruct(phi, model, grid, opt);
    const auto cplx = complex_basis_reconstruct(phi, model, grid, opt);
    Table t{{"x", "dirac_re", "dirac_im", "complex_re", "complex_im", "abs_diff"}, {}, {}};
    t.model = {{"smatrix", to_json(model)},
               {"amplitude", to_json(phi.amplitude())},
               {"grid", grid},
               {"probe_height", opt.probe_height}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Complex d = dirac[i];
        const Complex z = cplx.reconstruction[i];
        t.rows.push_back({grid[i], d.real(), d.imag(), z.real(), z.imag(), std::abs(d - z)});
    }
    return t;
}

inline std::string utc_stamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace detail

/// Runs the configured command and returns its table.
[[nodiscard]] inline Table compute(const RunConfig& c) {
    const int order = resolve_quad_order(c.quad_order);
    if (c.command == "poles") return detail::run_poles(c);
    if (c.command == "survival") return detail::run_survival(c, order);
    if (c.command == "khalfin") return detail::run_khalfin(c, order);
    if (c.command == "decay") return detail::run_decay(c, order);
    if (c.command == "born-limit") return detail::run_born_limit(c, order);
    if (c.command == "lindblad") return detail::run_lindblad(c);
    if (c.command == "expansion") return detail::run_expansion(c, order);
    throw ToolkitError(ErrorKind::InvalidModel, "unknown command", {{"command", c.command}});
}

/// Provenance header plus table body in the configured format.
[[nodiscard]] inline std::string render(const RunConfig& c) {
    const Table t = compute(c);
    json prov{{"tool", "gamowkit"}, {"version", kVersion}, {"config", config_json(c)}, {"model", t.model}};
    if (c.stamp) prov["stamp"] = detail::utc_stamp();

    std::ostringstream out;
    if (c.format == Format::Json) {
        json rows = json::array();
        for (const auto& r : t.rows) {
            json row = json::object();
            for (std::size_t k = 0; k < t.columns.size(); ++k) row[t.columns[k]] = r[k];
            rows.push_back(std::move(row));
        }
        out << json{{"provenance", prov}, {"columns", t.columns}, {"rows", std::move(rows)}}.dump(2) << '\n';
        return out.str();
    }
    out << "# gamowkit " << kVersion << '\n';
    out << "# config: " << prov["config"].dump() << '\n';
    out << "# model: " << t.model.dump() << '\n';
    if (c.stamp) out << "# stamp: " << prov["stamp"].get<std::string>() << '\n';
    for (std::size_t k = 0; k < t.columns.size(); ++k) out << (k ? "," : "") << t.columns[k];
    out << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << format_number(r[k]);
        out << '\n';
    }
    return out.str();
}

/// Lines of a CSV rendering that do not start with '#'.
[[nodiscard]] inline std::string csv_body(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string body;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') body += line + '\n';
    return body;
}

[[nodiscard]] inline int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::SemigroupDomain: return 3;
        case ErrorKind::NonConvergence: return 4;
        case ErrorKind::InvalidModel: return 5;
        case ErrorKind::InvariantViolation: return 6;
        case ErrorKind::IoError: return 7;
    }
    return 1;
}

/**
 * Renders to --out (or `out` when no path is set). Toolkit errors go to
 * `err` verbatim and map to a nonzero exit status.
 */
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        const std::string text = render(c);
        if (c.out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(c.out_path, std::ios::binary);
            if (!f) throw ToolkitError(ErrorKind::IoError, "cannot open output file", {{"path", c.out_path}});
            f << text;
            if (!f) throw ToolkitError(ErrorKind::IoError, "failed writing output file", {{"path", c.out_path}});
        }
        return 0;
    } catch (const ToolkitError& e) {
        err << "gamowkit: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const json::exception& e) {
        err << "gamowkit: InvalidModel: model JSON: " << e.what() << '\n';
        return exit_code(ErrorKind::InvalidModel);
    }
}

}  // namespace gamowkit::io
