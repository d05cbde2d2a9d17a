// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <gamowkit/gamowkit.hpp>
#include <gamowkit/io/cli.hpp>

#include <array>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"

namespace gk = gamowkit;
using gk::Complex;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// Records a check; the first failing check names the outcome.
class Checker {
public:
    void check(bool ok, const std::string& what) {
        if (!ok && out_.pass) out_.detail = "failed: " + what;
        out_.pass = out_.pass && ok;
    }
    void note(const std::string& s) {
        if (out_.pass) out_.detail += (out_.detail.empty() ? "" : ", ") + s;
    }
    [[nodiscard]] Outcome result() const { return out_; }

private:
    Outcome out_;
};

template <typename F>
bool throws_kind(F&& f, gk::ErrorKind kind) {
    try {
        f();
    } catch (const gk::ToolkitError& e) {
        return e.kind() == kind;
    }
    return false;
}

// ---------------------------------------------------------------------------

Outcome exponential_law() {
    Checker c;
    double worst = 0.0;
    for (double gamma : {0.1, 1.0}) {
        for (double ratio : {20.0, 100.0}) {
            const auto phi = gk::EnergyWavefunction::breit_wigner(gk::ResonanceParameters(ratio * gamma, gamma));
            for (int i = 0; i <= 100; ++i) {
                const double t = 0.1 * i / gamma;
                const double p = gk::survival_probability(phi, t, gk::Support::FullLine);
                worst = std::max(worst, std::abs(p / std::exp(-gamma * t) - 1.0));
            }
        }
    }
    c.check(worst < 1e-6, "relative error " + fmt("%.3g", worst));
    c.note("max rel err " + fmt("%.3g", worst));
    return c.result();
}

Outcome khalfin_deviation() {
    Checker c;
    const gk::ResonanceParameters p(40.0, 1.0);
    std::vector<double> early;
    for (int i = 0; i <= 30; ++i) early.push_back(0.1 * i);
    double dev = 0.0;
    for (const auto& r : gk::khalfin_comparison(p, early)) dev = std::max(dev, std::abs(r.ratio - 1.0));
    c.check(dev <= 0.02, "early deviation " + fmt("%.3g", dev));
    const auto late = gk::khalfin_comparison(p, {gk::fixtures::kKhalfinTMax});
    c.check(late[0].ratio > 10.0, "ratio at fixture " + fmt("%.6g", late[0].ratio));
    c.check(std::abs(late[0].ratio / gk::fixtures::kKhalfinRatioAtTMax - 1.0) < 1e-6, "ratio vs oracle");
    c.note("max |ratio-1| for Gamma t<=3 " + fmt("%.3g", dev) + ", ratio at Gamma t=30 " + fmt("%.6g", late[0].ratio));
    return c.result();
}

Outcome golden_rule_chain() {
    Checker c;
    const gk::ResonanceParameters p(5.0, 0.4);
    const gk::DecayChannelSet one({{"b", 1.0}});
    const gk::DecayChannelSet full({{"b", 1.0}}, 0.0, gk::Support::FullLine);
    const gk::DecayChannelSet two({{"a", 1.0}, {"b", 2.5}});
    const std::vector<std::pair<gk::DecayChannelSet, gk::FormFactor>> corpus{
        {one, gk::FormFactor::constant(1.0)},
        {full, gk::FormFactor::constant(1.0)},
        {one, gk::FormFactor::power_threshold(1.0, 0.5)},
        {gk::DecayChannelSet({{"b", 1.0}}, 1.5), gk::FormFactor::power_threshold(1.0, 0.25)},
        {one, gk::FormFactor::lorentz_cutoff(1.0, 3.0)},
        {two, gk::FormFactor::lorentz_cutoff(1.0, 10.0).with_multiplier("b", 0.2)},
    };
    double worst_rate = 0.0;
    double worst_fd = 0.0;
    for (const auto& [ch, v] : corpus) {
        const auto m = gk::DecayModel::normalized(p, ch, v);
        const double g = p.gamma();
        c.check(std::abs(gk::decay_probability(m, 0.0)) < 1e-9, "P(0)");
        c.check(gk::decay_probability(m, 40.0 / g) > 1.0 - 1e-9, "P(Gamma t = 40)");
        const double r0 = gk::decay_rate(m, 0.0);
        worst_rate = std::max(worst_rate, std::abs(r0 - g) / g);
        for (double t : {0.5, 2.0, 5.0}) {
            const double h = 1e-4;
            const double fd = (gk::decay_probability(m, t + h) - gk::decay_probability(m, t - h)) / (2 * h);
            worst_fd = std::max(worst_fd, std::abs(fd - gk::decay_rate(m, t)));
        }
        const double tau = gk::lifetime(p);
        c.check(std::abs(1.0 - gk::decay_probability(m, tau) - std::exp(-1.0)) < 1e-10, "1 - P(tau) = 1/e");
    }
    c.check(worst_rate < 1e-8, "dP/dt(0) vs Gamma " + fmt("%.3g", worst_rate));
    c.check(worst_fd < 1e-6, "finite difference " + fmt("%.3g", worst_fd));
    c.note(std::to_string(corpus.size()) + " models, |rate(0)/Gamma-1| " + fmt("%.2g", worst_rate) +
           ", fd err " + fmt("%.2g", worst_fd));
    return c.result();
}

Outcome born_limit() {
    Checker c;
    const gk::DecayChannelSet one({{"b", 1.0}});
    for (const auto& [name, v] : std::vector<std::pair<std::string, gk::FormFactor>>{
             {"constant", gk::FormFactor::constant(1.0)}, {"lorentz-cutoff", gk::FormFactor::lorentz_cutoff(1.0, 50.0)}}) {
        const auto rows = gk::born_limit_sweep(10.0, one, v, {0.1, 0.01, 0.001});
        for (std::size_t i = 1; i < rows.size(); ++i)
            c.check(std::abs(rows[i].rel_diff) < std::abs(rows[i - 1].rel_diff), name + " monotone");
        c.check(std::abs(rows.back().rel_diff) <= 0.01, name + " final error");
        c.note(name + " final " + fmt("%.3g", rows.back().rel_diff));
    }
    return c.result();
}

Outcome pole_finding() {
    Checker c;
    using E = gk::ComplexEnergy;
    const std::vector<E> zs{E(1.5, -0.2), E(2.0, -0.05), E(4.0, -0.3)};
    const auto rational = gk::SMatrixModel::rational(zs);
    const auto found = gk::find_poles(rational, gk::PoleSearchRegion::lower(0.5, 5.0, 1.0));
    c.check(found.size() == zs.size(), "constructed pole count");
    double err = 0.0;
    for (std::size_t i = 0; i < std::min(found.size(), zs.size()); ++i)
        err = std::max(err, std::abs(found[i].z_r.value() - zs[i].value()));
    c.check(err < 1e-10, "constructed poles " + fmt("%.3g", err));

    const auto shell = gk::SMatrixModel::delta_shell(20.0, 1.0);
    const auto lowest = gk::find_poles(shell, gk::PoleSearchRegion::lower(8.0, 10.0, 1.0));
    c.check(lowest.size() == 1, "delta-shell lowest pole");
    double shell_err = 1.0;
    if (!lowest.empty())
        shell_err = std::abs(lowest[0].z_r.value() -
                             Complex(gk::fixtures::kDeltaShellPoleERe, gk::fixtures::kDeltaShellPoleEIm));
    c.check(shell_err < 1e-8, "delta-shell vs oracle " + fmt("%.3g", shell_err));

    const std::vector<std::pair<gk::SMatrixModel, gk::PoleSearchRegion>> corpus{
        {rational, gk::PoleSearchRegion::lower(0.5, 5.0, 1.0)},
        {rational, gk::PoleSearchRegion::lower(1.0, 1.8, 1.0)},
        {rational, gk::PoleSearchRegion::lower(1.8, 4.5, 0.2)},
        {shell, gk::PoleSearchRegion::lower(1.0, 40.0, 2.0)},
        {shell, gk::PoleSearchRegion::lower(8.0, 10.0, 1.0)},
    };
    double conj_err = 0.0;
    for (const auto& [m, region] : corpus) {
        for (const auto& r : {region, region.mirrored()}) {
            c.check(static_cast<std::size_t>(gk::count_poles(m, r)) == gk::find_poles(m, r).size(),
                    "winding count vs refined count");
        }
        const auto lower = gk::find_poles(m, region);
        const auto upper = gk::find_poles(m, region.mirrored());
        c.check(lower.size() == upper.size(), "conjugate pair count");
        for (std::size_t i = 0; i < std::min(lower.size(), upper.size()); ++i)
            conj_err = std::max(conj_err, std::abs(upper[i].z_r.value() - std::conj(lower[i].z_r.value())));
    }
    c.check(conj_err < 1e-10, "conjugate symmetry " + fmt("%.3g", conj_err));
    c.note("constructed " + fmt("%.2g", err) + ", delta shell " + fmt("%.2g", shell_err) + ", conjugate " +
           fmt("%.2g", conj_err));
    return c.result();
}

Outcome lineshape_pole() {
    Checker c;
    const std::array<double, 3> ratios{1.0 / 50, 1.0 / 100, 1.0 / 200};
    const std::array<double, 3> limits{0.08, 0.04, 0.02};
    double prev = 1.0;
    std::string errs;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const double er = 5.0;
        const double gamma = ratios[i] * er;
        const auto m = gk::SMatrixModel::rational({gk::ComplexEnergy(er, -0.5 * gamma)});
        const auto poles = gk::find_poles(m, gk::PoleSearchRegion::lower(4.0, 6.0, 1.0));
        c.check(poles.size() == 1, "single pole");
        if (poles.empty()) break;
        const double width = -2.0 * poles[0].z_r.im();
        const double err = std::abs(gk::lineshape_fwhm(m, er - 10 * gamma, er + 10 * gamma) - width) / width;
        c.check(err <= limits[i], "fwhm error " + fmt("%.3g", err));
        c.check(err < prev, "monotone");
        prev = err;
        errs += (errs.empty() ? "" : "/") + fmt("%.2g", err);
    }
    c.note("fwhm rel err " + errs);
    return c.result();
}

Outcome expansion_equivalence() {
    Checker c;
    using E = gk::ComplexEnergy;
    const std::vector<std::pair<gk::RationalAmplitude, std::vector<E>>> corpus{
        {gk::RationalAmplitude({{E(8.0, 1.5), Complex(1.0, 0.0)}}), {E(2.0, -0.05)}},
        {gk::RationalAmplitude({{E(1.0, 0.5), Complex(0.3, 0.2)}, {E(-2.0, 0.8), Complex(-0.1, 0.4)}}),
         {E(2.0, -0.05), E(3.5, -0.4)}},
        {gk::RationalAmplitude({{E(3.0, 2.0), Complex(0.0, 1.0)}}, Complex(0.5, -0.5)),
         {E(0.7, -0.1), E(1.5, -0.2), E(5.0, -1.0)}},
        {gk::RationalAmplitude({{E(2.0, 0.3), Complex(1.0, 0.0)}}), {E(2.0, -0.3)}},
        {gk::RationalAmplitude({{E(0.5, 1.3), Complex(1.0, -1.0)}}), {}},
    };
    const std::vector<double> grid{0.0, 0.5, 1.0, 1.9, 2.0, 2.1, 3.0, 5.0, 10.0, -1.0};
    double dev = 0.0;
    double coef = 0.0;
    for (const auto& [phi, zs] : corpus) {
        const auto model = gk::SMatrixModel::rational(zs);
        const auto dirac = gk::dirac_reconstruct(phi, model, grid);
        const auto res = gk::complex_basis_reconstruct(phi, model, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) dev = std::max(dev, std::abs(res.reconstruction[i] - dirac[i]));
        gk::ExpansionOptions other;
        other.residue_radius_fraction = 0.3;
        other.residue_nodes = 96;
        other.residue_phase = 0.37;
        const auto alt = gk::complex_basis_reconstruct(phi, model, {1.0}, other);
        for (std::size_t i = 0; i < alt.pole_coefficients.size(); ++i)
            coef = std::max(coef, std::abs(alt.pole_coefficients[i] - res.pole_coefficients[i]));
    }
    c.check(dev < 1e-6, "reconstruction deviation " + fmt("%.3g", dev));
    c.check(coef < 1e-8, "pole coefficient deviation " + fmt("%.3g", coef));
    c.note("grid dev " + fmt("%.2g", dev) + ", coefficient dev " + fmt("%.2g", coef));
    return c.result();
}

Outcome lindblad_suite() {
    Checker c;
    std::mt19937_64 rng(20260101);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> rate(0.05, 1.0);
    const auto draw = [&](int n) {
        gk::CMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Complex(nd(rng), nd(rng));
        return m;
    };
    double trace = 0.0;
    double herm = 0.0;
    double min_eig = 0.0;
    double compose = 0.0;
    for (int n = 2; n <= 4; ++n) {
        for (int rep = 0; rep < 4; ++rep) {
            std::vector<gk::JumpOperator> jumps;
            for (int j = 0; j <= rep % 3; ++j) jumps.push_back({draw(n) / std::sqrt(2.0 * n), rate(rng)});
            const gk::CMatrix a = draw(n);
            const gk::LiouvillianGenerator g(0.5 * (a + a.adjoint()), jumps);
            const gk::CMatrix b = draw(n);
            gk::CMatrix r = b * b.adjoint();
            r /= r.trace();
            r = 0.5 * (r + r.adjoint()).eval();
            const gk::DensityMatrix rho0(r);
            for (double t : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
                const auto rho = gk::lindblad_evolve(g, rho0, t);
                trace = std::max(trace, std::abs(rho.trace() - 1.0));
                herm = std::max(herm, gk::detail::hermiticity_deviation(rho.matrix()));
                min_eig = std::min(min_eig, rho.min_eigenvalue());
            }
            for (auto [t1, t2] : {std::pair{0.3, 0.7}, std::pair{1.0, 2.5}})
                compose = std::max(compose, gk::semigroup_compose_check(g, rho0, t1, t2));
        }
    }
    c.check(trace < 1e-10, "trace " + fmt("%.3g", trace));
    c.check(herm < 1e-10, "hermiticity " + fmt("%.3g", herm));
    c.check(min_eig >= -1e-10, "positivity " + fmt("%.3g", min_eig));
    c.check(compose < 1e-8, "composition " + fmt("%.3g", compose));

    const double gamma = 0.8;
    const auto ad = gk::LiouvillianGenerator::amplitude_damping(gamma, 1.3);
    double pop = 0.0;
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0, 12.0})
        pop = std::max(pop, std::abs(gk::lindblad_evolve(ad, gk::DensityMatrix::basis(2, 1), t)(1, 1).real() -
                                     std::exp(-gamma * t)));
    c.check(pop < 1e-9, "amplitude damping " + fmt("%.3g", pop));

    double unitary = 0.0;
    double reversal = 0.0;
    for (int n = 2; n <= 4; ++n) {
        const gk::CMatrix a = draw(n);
        const gk::CMatrix h = 0.5 * (a + a.adjoint());
        const gk::DensityMatrix rho0 = gk::DensityMatrix::basis(n, n - 1);
        for (double t : {0.4, 3.0, 10.0}) {
            const auto vn = gk::von_neumann_evolve(h, rho0, t);
            unitary = std::max(unitary,
                               (vn.matrix() - gk::lindblad_evolve(gk::LiouvillianGenerator(h), rho0, t).matrix())
                                   .cwiseAbs()
                                   .maxCoeff());
            reversal = std::max(
                reversal, (gk::von_neumann_evolve(h, vn, -t).matrix() - rho0.matrix()).cwiseAbs().maxCoeff());
        }
    }
    c.check(unitary < 1e-10, "jump-free vs von Neumann " + fmt("%.3g", unitary));
    c.check(reversal < 1e-10, "reversibility " + fmt("%.3g", reversal));
    c.note("trace " + fmt("%.1e", trace) + ", herm " + fmt("%.1e", herm) + ", min eig " + fmt("%.1e", min_eig) +
           ", compose " + fmt("%.1e", compose) + ", damping " + fmt("%.1e", pop));
    return c.result();
}

Outcome time_asymmetry() {
    Checker c;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> neg(-100.0, -1e-12);
    const gk::ResonanceParameters p(5.0, 0.4);
    const auto m = gk::DecayModel::normalized(p, gk::DecayChannelSet({{"b", 1.0}}), gk::FormFactor::constant(1.0));
    const auto ad = gk::LiouvillianGenerator::amplitude_damping(0.5);
    const auto e = gk::DensityMatrix::basis(2, 1);
    const gk::GamowStateWeight w(p, 1.0);
    int n = 0;
    for (int k = 0; k < 200; ++k) {
        const double t = neg(rng);
        c.check(throws_kind([&] { (void)gk::gamow_evolve(w, t); }, gk::ErrorKind::SemigroupDomain), "gamow_evolve");
        c.check(throws_kind([&] { (void)gk::decay_probability(m, t); }, gk::ErrorKind::SemigroupDomain),
                "decay_probability");
        c.check(throws_kind([&] { (void)gk::decay_rate(m, t); }, gk::ErrorKind::SemigroupDomain), "decay_rate");
        c.check(throws_kind([&] { (void)gk::lindblad_evolve(ad, e, t); }, gk::ErrorKind::SemigroupDomain),
                "lindblad_evolve");
        n += 4;
    }
    c.note(std::to_string(n) + " negative-time calls rejected");
    return c.result();
}

Outcome cli_determinism() {
    namespace io = gk::io;
    Checker c;
    const std::string dir = GAMOWKIT_DEMO_MODELS;
    std::vector<io::RunConfig> configs;
    const auto add = [&](const char* cmd, const char* model) {
        io::RunConfig cfg;
        cfg.command = cmd;
        if (model != nullptr) cfg.model_path = dir + "/" + model;
        cfg.steps = 20;
        configs.push_back(cfg);
        return &configs.back();
    };
    add("poles", "delta_shell.json")->region = {1.0, 40.0, -2.0};
    add("survival", "breit_wigner.json");
    add("khalfin", "breit_wigner.json");
    add("decay", "kaonlike.json");
    add("born-limit", "born_constant.json");
    add("lindblad", "amplitude_damping.json");
    add("lindblad", nullptr)->dim = 3;
    add("expansion", "expansion.json");
    for (const auto& cfg : configs) {
        const auto a = io::csv_body(io::render(cfg));
        const auto b = io::csv_body(io::render(cfg));
        c.check(!a.empty() && a == b, cfg.command + " CSV body differs");
    }
    int models = 0;
    for (const char* name : {"rational.json", "delta_shell.json"}) {
        const auto m1 = io::smatrix_from_json(io::read_json_file(dir + "/" + name));
        const auto m2 = io::smatrix_from_json(io::json::parse(io::to_json(m1).dump()));
        c.check(m1 == m2, std::string(name) + " round trip");
        ++models;
    }
    for (const char* name : {"kaonlike.json", "born_constant.json"}) {
        const auto d1 = io::decay_from_json(io::read_json_file(dir + "/" + name));
        const auto d2 = io::decay_from_json(io::json::parse(io::to_json(d1).dump()));
        c.check(io::to_json(d1) == io::to_json(d2), std::string(name) + " round trip");
        ++models;
    }
    const auto g1 = io::generator_from_json(io::read_json_file(dir + "/amplitude_damping.json"));
    const auto g2 = io::generator_from_json(io::json::parse(io::to_json(g1).dump()));
    c.check(g1.hamiltonian() == g2.hamiltonian() && g1.jumps() == g2.jumps(), "generator round trip");
    ++models;
    c.note(std::to_string(configs.size()) + " configs byte-identical, " + std::to_string(models) +
           " models round-trip");
    return c.result();
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"exponential law", exponential_law},
        {"Khalfin deviation", khalfin_deviation},
        {"Golden Rule chain", golden_rule_chain},
        {"Born/Fermi limit", born_limit},
        {"pole finding", pole_finding},
        {"lineshape-pole consistency", lineshape_pole},
        {"expansion equivalence", expansion_equivalence},
        {"Lindblad suite", lindblad_suite},
        {"time asymmetry", time_asymmetry},
        {"CLI determinism", cli_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("criterion %2zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str());
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
