// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file evolution.hpp
 * @brief Survival amplitudes under the unitary group, the Gamow semigroup
 *        and the Khalfin comparison.
 *
 * For a normalized wavefunction phi the survival amplitude is
 *
 *     A(t) = int g(E) e^{-iEt} dE / int g(E) dE,   g(E) = |phi(E)|^2,
 *
 * over [0, inf) (semibounded) or the whole real line. g continues off the
 * axis as g(z) = phi(z) conj(phi(conj z)), a rational function.
 *
 * Short times use composite Gauss-Legendre on a core interval with panels no
 * longer than pi/t and tails rotated onto downward rays, where e^{-iEt}
 * decays. Long times close the contour in the lower half plane: the pole
 * residues give the exponential part, and on [0, inf) the leftover ray along
 * the negative imaginary axis is the cut contribution
 *
 *     -i int_0^inf g(-iy) e^{-yt} dy ~ -i g(0)/t,
 *
 * which eventually dominates any exponential.
 */

#pragma once

#include <gamowkit/core.hpp>
#include <gamowkit/resonance.hpp>
#include <gamowkit/spectral.hpp>

#include <vector>

namespace gamowkit {

enum class Support { FullLine, Semibounded };

[[nodiscard]] inline const char* to_string(Support s) noexcept {
    return s == Support::FullLine ? "full" : "semibounded";
}

struct SurvivalOptions {
    int order = kDefaultQuadOrder;  // Gauss-Legendre nodes per panel
    double long_time = 10.0;        // switch to residues once Gamma_min t exceeds this
    double tol = 1e-9;              // order-doubling tolerance
    double abs_floor = 1e-4;
};

/// Residue (exponential) and cut parts of a survival amplitude.
struct PoleCut {
    Complex pole;
    Complex cut;
};

namespace detail {

struct DensityPole {
    Complex z;
    Complex residue;
};

/// Poles and residues of g(z) = phi(z) conj(phi(conj z)); InvalidModel if any pole is not simple.
inline std::vector<DensityPole> density_poles(const EnergyWavefunction& phi) {
    const auto terms = phi.poles();
    const RationalAmplitude& amp = phi.amplitude();
    const RationalAmplitude refl = amp.reflected();
    std::vector<DensityPole> out;
    for (const auto& t : terms) {
        const Complex p = t.location.value();
        require(p.imag() != 0.0, ErrorKind::InvalidModel, "density has a double pole on the real axis",
                {{"re", num(p.real())}});
        for (const auto& u : terms)
            require(std::abs(u.location.value() - std::conj(p)) > 0.0, ErrorKind::InvalidModel,
                    "density has a double pole: wavefunction poles form a conjugate pair");
        out.push_back({p, t.residue * refl(p)});
        out.push_back({std::conj(p), std::conj(t.residue) * amp(std::conj(p))});
    }
    return out;
}

inline double min_half_width(const EnergyWavefunction& phi) {
    double h = std::numeric_limits<double>::infinity();
    for (const auto& t : phi.poles()) h = std::min(h, std::abs(t.location.im()));
    return h;
}

inline Complex density(const EnergyWavefunction& phi, Complex z) {
    return phi(z) * std::conj(phi(std::conj(z)));
}

inline Complex support_norm(const EnergyWavefunction& phi, Support support, int order) {
    if (support == Support::Semibounded) return {half_line_norm(phi.amplitude(), order), 0.0};
    Complex acc{0.0, 0.0};
    for (const auto& p : density_poles(phi))
        if (p.z.imag() < 0.0) acc += p.residue;
    return -2.0 * kPi * kI * acc;
}

/// int_supp g(E) e^{-iEt} dE for t > 0 by quadrature on a core interval plus rotated tails.
inline Complex survival_quadrature(const EnergyWavefunction& phi, double t, Support support, int order) {
    double re_lo = std::numeric_limits<double>::infinity();
    double re_hi = -std::numeric_limits<double>::infinity();
    double hw = 0.0;
    std::vector<Feature> features;
    for (const auto& term : phi.poles()) {
        const Complex p = term.location.value();
        re_lo = std::min(re_lo, p.real());
        re_hi = std::max(re_hi, p.real());
        hw = std::max(hw, std::abs(p.imag()));
        features.push_back({p.real(), std::max(std::abs(p.imag()), 1e-12)});
    }
    if (phi.poles().empty()) return {0.0, 0.0};
    const double margin = std::max(8.0 * hw, 1e-3 * std::max(std::abs(re_lo), std::abs(re_hi)));
    const double upper = std::max(re_hi, 0.0) + margin;
    const double lower = support == Support::Semibounded ? 0.0 : re_lo - margin;
    FiniteInterval core{lower, upper, features, kPi / t};
    const Complex body =
        integrate(build_quadrature(core, order), [&](double e) { return density(phi, e) * std::exp(-kI * e * t); });
    // E = X - iy: dE = -i dy, e^{-iEt} = e^{-iXt} e^{-yt}
    const auto tail = [&](double x) {
        double reach = margin;
        std::vector<Feature> near;
        for (const auto& term : phi.poles()) {
            const Complex p = term.location.value();
            reach = std::max(reach, std::abs(x - p));
            near.push_back({std::abs(p.imag()), std::max(std::abs(x - p.real()), 1e-12)});
        }
        const QuadratureRule rule = build_quadrature(SemiInfinite{0.0, std::min(reach, 1.0 / t), near}, order);
        return integrate(rule, [&](double y) { return density(phi, Complex(x, -y)) * std::exp(-y * t); });
    };
    Complex total = body - kI * std::exp(-kI * upper * t) * tail(upper);
    if (support == Support::FullLine) total += kI * std::exp(-kI * lower * t) * tail(lower);
    return total;
}

/// Residue and cut parts of int_supp g(E) e^{-iEt} dE after closing in the lower half plane.
inline PoleCut survival_residues(const EnergyWavefunction& phi, double t, Support support, int order, double tol) {
    PoleCut out{{0.0, 0.0}, {0.0, 0.0}};
    const auto poles = density_poles(phi);
    for (const auto& p : poles) {
        if (p.z.imag() >= 0.0) continue;
        if (support == Support::Semibounded && p.z.real() < 0.0) continue;
        require(!(support == Support::Semibounded && p.z.real() == 0.0), ErrorKind::NonConvergence,
                "density pole on the negative imaginary axis blocks the cut contour");
        out.pole += -2.0 * kPi * kI * p.residue * std::exp(-kI * p.z * t);
    }
    if (support == Support::FullLine) return out;
    std::vector<Feature> features;
    for (const auto& p : poles)
        if (p.z.imag() < 0.0) features.push_back({-p.z.imag(), std::max(std::abs(p.z.real()), 1e-12)});
    const auto make = [&](int n) { return build_quadrature(SemiInfinite{0.0, 1.0 / t, features}, n); };
    const auto f = [&](double y) { return density(phi, Complex(0.0, -y)) * std::exp(-y * t); };
    const Complex coarse = integrate(make(order), f);
    const Complex fine = integrate(make(2 * order), f);
    if (std::abs(fine - coarse) > tol * std::abs(fine) + 1e-300)
        throw ToolkitError(ErrorKind::NonConvergence, "cut integral failed the order-doubling check",
                           {{"t", num(t)}, {"difference", num(std::abs(fine - coarse))}});
    out.cut = -kI * fine;
    return out;
}

}  // namespace detail

/**
 * Pole and cut parts of the normalized semibounded amplitude at t > 0,
 * A(t) = pole + cut. The cut part is the deviation from exponential decay.
 */
[[nodiscard]] inline PoleCut survival_pole_cut(const EnergyWavefunction& phi, double t,
                                               const SurvivalOptions& opt = {}) {
    detail::require(std::isfinite(t) && t > 0.0, ErrorKind::InvalidModel, "pole/cut split needs t > 0",
                    {{"t", detail::num(t)}});
    const Complex n = detail::support_norm(phi, Support::Semibounded, opt.order);
    auto pc = detail::survival_residues(phi, t, Support::Semibounded, opt.order, 1e-8);
    pc.pole /= n;
    pc.cut /= n;
    return pc;
}

/**
 * <phi| e^{-iHt} |phi> over the chosen support. Any finite t is accepted;
 * A(-t) = conj(A(t)) since the group evolution is unitary.
 */
[[nodiscard]] inline Complex survival_amplitude(const EnergyWavefunction& phi, double t, Support support,
                                                const SurvivalOptions& opt = {}) {
    detail::require(std::isfinite(t), ErrorKind::InvalidModel, "time must be finite", {{"t", detail::num(t)}});
    if (t == 0.0) return {1.0, 0.0};
    if (t < 0.0) return std::conj(survival_amplitude(phi, -t, support, opt));
    const Complex n = detail::support_norm(phi, support, opt.order);
    detail::require(std::abs(n) > 0.0 && detail::is_finite(n), ErrorKind::InvalidModel,
                    "density is not normalizable on the chosen support");
    const double gamma_min = 2.0 * detail::min_half_width(phi);
    if (gamma_min * t > opt.long_time) {
        const auto pc = detail::survival_residues(phi, t, support, opt.order, 1e-8);
        return (pc.pole + pc.cut) / n;
    }
    const Complex coarse = detail::survival_quadrature(phi, t, support, opt.order);
    const Complex fine = detail::survival_quadrature(phi, t, support, 2 * opt.order);
    const double diff = std::abs(fine - coarse) / std::abs(n);
    if (diff > opt.tol * std::max(std::abs(fine / n), opt.abs_floor))
        throw ToolkitError(ErrorKind::NonConvergence, "survival amplitude failed the order-doubling check",
                           {{"t", detail::num(t)}, {"difference", detail::num(diff)}});
    return fine / n;
}

/// |A(t)|^2, clipped to [0, 1] against round-off.
[[nodiscard]] inline double survival_probability(const EnergyWavefunction& phi, double t, Support support,
                                                 const SurvivalOptions& opt = {}) {
    const double p = std::norm(survival_amplitude(phi, t, support, opt));
    detail::require(p <= 1.0 + 1e-9, ErrorKind::InvariantViolation, "survival probability exceeds 1",
                    {{"t", detail::num(t)}, {"p", detail::num(p)}});
    return std::min(p, 1.0);
}

// ============================================================================
// Curves
// ============================================================================

enum class SurvivalKind { UnitarySemibounded, UnitaryFullLine, GamowExponential };

struct SurvivalCurve {
    std::vector<double> times;
    std::vector<double> values;
    SurvivalKind kind;
};

namespace detail {

inline void require_time_grid(const std::vector<double>& times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        require(std::isfinite(times[i]), ErrorKind::InvalidModel, "time grid must be finite");
        if (times[i] < 0.0)
            throw ToolkitError(ErrorKind::SemigroupDomain, "time grid must be non-negative",
                               {{"t", num(times[i])}});
        if (i > 0)
            require(times[i] > times[i - 1], ErrorKind::InvalidModel, "time grid must be strictly increasing");
    }
}

}  // namespace detail

[[nodiscard]] inline SurvivalCurve survival_curve(const EnergyWavefunction& phi, const std::vector<double>& times,
                                                  Support support, const SurvivalOptions& opt = {}) {
    detail::require_time_grid(times);
    SurvivalCurve c{times, {},
                    support == Support::Semibounded ? SurvivalKind::UnitarySemibounded : SurvivalKind::UnitaryFullLine};
    for (double t : times) c.values.push_back(survival_probability(phi, t, support, opt));
    return c;
}

// ============================================================================
// Gamow semigroup
// ============================================================================

/// Weight of the pure Gamow state |psi^G><psi^G| in W(t).
class GamowStateWeight {
public:
    GamowStateWeight(ResonanceParameters params, double weight) : params_(params), weight_(weight) {
        detail::require(std::isfinite(weight) && weight >= 0.0 && weight <= 1.0, ErrorKind::InvalidModel,
                        "Gamow weight must lie in [0, 1]", {{"weight", detail::num(weight)}});
    }

    [[nodiscard]] const ResonanceParameters& params() const noexcept { return params_; }
    [[nodiscard]] double weight() const noexcept { return weight_; }

private:
    ResonanceParameters params_;
    double weight_;
};

/// W(t) = e^{-Gamma t} W(0), defined for t >= 0 only.
[[nodiscard]] inline GamowStateWeight gamow_evolve(const GamowStateWeight& w, double t) {
    if (!(t >= 0.0))
        throw ToolkitError(ErrorKind::SemigroupDomain, "Gamow states evolve forward only (t >= 0)",
                           {{"t", detail::num(t)}});
    detail::require(std::isfinite(t), ErrorKind::InvalidModel, "time must be finite");
    return {w.params(), w.weight() * std::exp(-w.params().gamma() * t)};
}

[[nodiscard]] inline SurvivalCurve gamow_curve(const ResonanceParameters& p, const std::vector<double>& times) {
    detail::require_time_grid(times);
    SurvivalCurve c{times, {}, SurvivalKind::GamowExponential};
    const GamowStateWeight w0(p, 1.0);
    for (double t : times) c.values.push_back(gamow_evolve(w0, t).weight());
    return c;
}

// ============================================================================
// Khalfin comparison
// ============================================================================

struct KhalfinRow {
    double t;
    double p_semibounded;
    double exponential;
    double ratio;
};

/// Largest Gamma t at which e^{-Gamma t} stays comfortably representable.
inline constexpr double kKhalfinMaxGammaT = 700.0;

/**
 * Survival of the truncated Breit-Wigner state on [0, inf) against the pure
 * exponential e^{-Gamma t}. Needs E_R/Gamma >= 2.
 */
[[nodiscard]] inline std::vector<KhalfinRow> khalfin_comparison(const ResonanceParameters& p,
                                                                const std::vector<double>& times,
                                                                const SurvivalOptions& opt = {}) {
    detail::require(p.e_r() / p.gamma() >= 2.0, ErrorKind::InvalidModel,
                    "Khalfin comparison needs a resolvable resonance (E_R/Gamma >= 2)");
    detail::require_time_grid(times);
    const auto phi = EnergyWavefunction::breit_wigner(p);
    std::vector<KhalfinRow> rows;
    for (double t : times) {
        if (p.gamma() * t > kKhalfinMaxGammaT)
            throw ToolkitError(ErrorKind::NonConvergence, "time lies beyond the representable exponential window",
                               {{"gamma_t", detail::num(p.gamma() * t)}});
        const double ps = survival_probability(phi, t, Support::Semibounded, opt);
        const double ex = std::exp(-p.gamma() * t);
        rows.push_back({t, ps, ex, ps / ex});
    }
    return rows;
}

}  // namespace gamowkit
