// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spectral.hpp
 * @brief Breit-Wigner amplitudes, rational energy wavefunctions and the two
 *        spectral expansions of a prepared state.
 *
 * Expansions. For a wavefunction phi(E) and an S-matrix model, the in-state
 * weight on the physical spectrum is w(E) = S(E) phi(E). It is probed with the
 * kernel
 *
 *     K(x, E) = -(1/(2 pi i)) / (E - x - i eta),
 *
 * which has its only pole at x + i eta and is analytic in the lower half
 * plane. The Dirac (continuum) expansion is
 *
 *     D(x) = int_0^inf w(E) K(x, E) dE.
 *
 * Deforming [0, inf) into the lower half of the second sheet picks up the
 * resonance poles z_i of S and leaves an integral along the negative axis
 * of that sheet:
 *
 *     D(x) = sum_i c_i K(x, z_i) + int_0^{-inf_II} w_II(E) K(x, E) dE,
 *     c_i  = -2 pi i Res_{z_i} [S_II phi].
 *
 * This needs every pole of phi in the upper half plane. No bound states
 * occur in the shipped models, so the discrete sum is always empty.
 */

#pragma once

#include <gamowkit/core.hpp>
#include <gamowkit/resonance.hpp>
#include <gamowkit/scattering.hpp>

#include <string>
#include <vector>

namespace gamowkit {

// ============================================================================
// Breit-Wigner
// ============================================================================

/// i sqrt(Gamma/2pi) / (E - (E_R - i Gamma/2)).
[[nodiscard]] inline Complex bw_amplitude(ComplexEnergy e, const ResonanceParameters& p) {
    const Complex d = e.value() - p.pole();
    detail::require(d != Complex(0.0, 0.0), ErrorKind::InvalidModel,
                    "Breit-Wigner amplitude evaluated at its pole",
                    {{"e_r", detail::num(p.e_r())}, {"gamma", detail::num(p.gamma())}});
    return kI * std::sqrt(p.gamma() / (2.0 * kPi)) / d;
}

/// (Gamma/2pi) / ((E - E_R)^2 + (Gamma/2)^2).
[[nodiscard]] inline double bw_density(double e, const ResonanceParameters& p) noexcept {
    const double x = e - p.e_r();
    const double h = 0.5 * p.gamma();
    return (p.gamma() / (2.0 * kPi)) / (x * x + h * h);
}

// ============================================================================
// Rational wavefunctions
// ============================================================================

struct PoleTerm {
    ComplexEnergy location;
    Complex residue;
};

/// scale * sum_i residue_i / (E - location_i); never singular on [0, inf).
class RationalAmplitude {
public:
    RationalAmplitude() = default;

    explicit RationalAmplitude(std::vector<PoleTerm> terms, Complex scale = {1.0, 0.0})
        : terms_(std::move(terms)), scale_(scale) {
        detail::require(detail::is_finite(scale), ErrorKind::InvalidModel, "amplitude scale must be finite");
        for (const auto& t : terms_) {
            detail::require(detail::is_finite(t.residue), ErrorKind::InvalidModel, "pole residue must be finite");
            detail::require(!(t.location.im() == 0.0 && t.location.re() >= 0.0), ErrorKind::InvalidModel,
                            "wavefunction pole lies on the physical spectrum [0, inf)",
                            {{"re", detail::num(t.location.re())}});
        }
    }

    [[nodiscard]] Complex operator()(Complex e) const noexcept {
        Complex acc{0.0, 0.0};
        for (const auto& t : terms_) acc += t.residue / (e - t.location.value());
        return scale_ * acc;
    }

    [[nodiscard]] const std::vector<PoleTerm>& terms() const noexcept { return terms_; }
    [[nodiscard]] Complex scale() const noexcept { return scale_; }

    [[nodiscard]] bool is_zero() const noexcept {
        if (scale_ == Complex(0.0, 0.0)) return true;
        for (const auto& t : terms_)
            if (t.residue != Complex(0.0, 0.0)) return false;
        return true;
    }

    [[nodiscard]] RationalAmplitude scaled(Complex c) const { return RationalAmplitude(terms_, scale_ * c); }

    /// conj(phi(conj E)): the continuation of conj(phi(E)) off the real axis.
    [[nodiscard]] RationalAmplitude reflected() const {
        std::vector<PoleTerm> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) out.push_back({t.location.conj(), std::conj(t.residue)});
        return RationalAmplitude(std::move(out), std::conj(scale_));
    }

    /// The same function with the scale folded into the residues.
    [[nodiscard]] std::vector<PoleTerm> effective_terms() const {
        std::vector<PoleTerm> out;
        for (const auto& t : terms_) out.push_back({t.location, scale_ * t.residue});
        return out;
    }

private:
    std::vector<PoleTerm> terms_;
    Complex scale_{1.0, 0.0};
};

namespace detail {

/// Grading features for a set of complex points near the half line [0, inf).
inline std::vector<Feature> half_line_features(const std::vector<Complex>& points) {
    std::vector<Feature> out;
    for (Complex p : points) {
        const double c = std::max(p.real(), 0.0);
        const double w = std::abs(p - Complex(c, 0.0));
        out.push_back({c, std::max(w, 1e-12)});
    }
    return out;
}

inline double typical_scale(const std::vector<Complex>& points) {
    double s = 0.0;
    for (Complex p : points) s = std::max(s, std::abs(p));
    return s > 0.0 ? s : 1.0;
}

}  // namespace detail

/// int_0^inf |phi(E)|^2 dE, checked by order doubling.
[[nodiscard]] inline double half_line_norm(const RationalAmplitude& phi, int order = kDefaultQuadOrder) {
    std::vector<Complex> pts;
    for (const auto& t : phi.terms()) pts.push_back(t.location.value());
    const SemiInfinite dom{0.0, detail::typical_scale(pts), detail::half_line_features(pts)};
    const auto make = [&](int n) { return build_quadrature(dom, n); };
    return integrate_self_converged(make, order, [&](double e) { return std::norm(phi(Complex(e, 0.0))); },
                                    1e-10, 0.0, "wavefunction normalization")
        .real();
}

/**
 * A prepared-state amplitude phi(E), normalized so that
 * int_0^inf |phi(E)|^2 dE = 1.
 */
class EnergyWavefunction {
public:
    explicit EnergyWavefunction(const RationalAmplitude& raw, std::string description = {},
                                int order = kDefaultQuadOrder)
        : description_(std::move(description)) {
        detail::require(!raw.is_zero(), ErrorKind::InvalidModel, "the zero amplitude cannot be normalized");
        const double n2 = half_line_norm(raw, order);
        detail::require(n2 > 0.0 && std::isfinite(n2), ErrorKind::InvalidModel,
                        "wavefunction norm is not positive and finite", {{"norm2", detail::num(n2)}});
        normalization_ = 1.0 / std::sqrt(n2);
        amplitude_ = raw.scaled(normalization_);
    }

    /// The Breit-Wigner amplitude restricted to [0, inf) and renormalized there.
    static EnergyWavefunction breit_wigner(const ResonanceParameters& p) {
        const RationalAmplitude raw({{ComplexEnergy(p.pole()), kI * std::sqrt(p.gamma() / (2.0 * kPi))}});
        return EnergyWavefunction(raw, "breit-wigner e_r=" + detail::num(p.e_r()) + " gamma=" + detail::num(p.gamma()));
    }

    [[nodiscard]] Complex operator()(Complex e) const noexcept { return amplitude_(e); }
    [[nodiscard]] double density(double e) const noexcept { return std::norm(amplitude_(Complex(e, 0.0))); }

    [[nodiscard]] const RationalAmplitude& amplitude() const noexcept { return amplitude_; }
    [[nodiscard]] double normalization() const noexcept { return normalization_; }
    [[nodiscard]] const std::string& description() const noexcept { return description_; }
    [[nodiscard]] std::vector<PoleTerm> poles() const { return amplitude_.effective_terms(); }

    [[nodiscard]] std::vector<Complex> sample(const std::vector<double>& grid) const {
        std::vector<Complex> out;
        out.reserve(grid.size());
        for (double e : grid) out.push_back(amplitude_(Complex(e, 0.0)));
        return out;
    }

private:
    RationalAmplitude amplitude_;
    double normalization_ = 1.0;
    std::string description_;
};

// ============================================================================
// Expansions
// ============================================================================

struct ExpansionOptions {
    double probe_height = 1.0;          // eta of the probe kernel
    int order = kDefaultQuadOrder;      // Gauss-Legendre nodes per panel
    double tol = 1e-9;                  // order-doubling tolerance
    double abs_floor = 1e-3;
    double residue_radius_fraction = 0.1;
    int residue_nodes = 64;
    double residue_phase = 0.0;         // rotation of the residue circle nodes
};

struct BoundState {
    double energy;
    Complex coefficient;
};

struct ContourSample {
    double energy;  // on the negative real axis of the second sheet
    Complex weight;
};

struct ExpansionResult {
    std::vector<ComplexEnergy> poles;
    std::vector<Complex> pole_coefficients;
    std::vector<BoundState> bound_states;
    std::vector<ContourSample> background_contour;
    std::vector<double> grid;
    std::vector<Complex> pole_terms;
    std::vector<Complex> background;
    std::vector<Complex> reconstruction;
};

/// -(1/(2 pi i)) / (E - x - i eta).
[[nodiscard]] inline Complex probe_kernel(double x, Complex e, double eta) noexcept {
    return -1.0 / (2.0 * kPi * kI) / (e - Complex(x, eta));
}

namespace detail {

inline void require_grid(const std::vector<double>& grid) {
    for (double x : grid) require(std::isfinite(x), ErrorKind::InvalidModel, "grid energies must be finite");
}

inline std::vector<Complex> expansion_points(const RationalAmplitude& phi, const SMatrixModel& model,
                                             const std::vector<double>& grid, double eta) {
    std::vector<Complex> pts;
    for (const auto& t : phi.terms()) pts.push_back(t.location.value());
    if (model.kind() == ModelKind::RationalConstructed) {
        for (const auto& p : model.rational_poles()) pts.push_back(p.value());
    } else {
        // narrow delta-shell resonances sit just below k = n pi / a
        const double a = model.radius();
        const double g = model.coupling();
        for (int n = 1; n <= 24; ++n) {
            const double k = n * kPi / a;
            pts.emplace_back(k * k, -2.0 * k * k * k / (g * g * a + 1.0));
        }
    }
    for (double x : grid) pts.emplace_back(x, eta);
    return pts;
}

}  // namespace detail

/**
 * Continuum expansion D(x) = int_0^inf S_I(E) phi(E) K(x, E) dE at each grid
 * point. Throws NonConvergence if order doubling changes a value by more
 * than the tolerance.
 */
[[nodiscard]] inline std::vector<Complex> dirac_reconstruct(const RationalAmplitude& phi, const SMatrixModel& model,
                                                            const std::vector<double>& grid,
                                                            const ExpansionOptions& opt = {}) {
    detail::require_grid(grid);
    detail::require(opt.probe_height > 0.0, ErrorKind::InvalidModel, "probe height must be positive");
    std::vector<Complex> out(grid.size(), Complex(0.0, 0.0));
    if (phi.is_zero()) return out;
    const auto pts = detail::expansion_points(phi, model, grid, opt.probe_height);
    const SemiInfinite dom{0.0, detail::typical_scale(pts), detail::half_line_features(pts)};
    const QuadratureRule coarse = build_quadrature(dom, opt.order);
    const QuadratureRule fine = build_quadrature(dom, 2 * opt.order);
    const auto weights = [&](const QuadratureRule& r) {
        std::vector<Complex> w;
        for (double e : r.nodes())
            w.push_back(s_matrix(model, ComplexEnergy(e, 0.0), Sheet::First) * phi(Complex(e, 0.0)));
        return w;
    };
    const auto wc = weights(coarse);
    const auto wf = weights(fine);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        std::size_t j = 0;
        const Complex c = integrate(coarse, [&](double e) { return wc[j++] * probe_kernel(x, e, opt.probe_height); });
        j = 0;
        const Complex f = integrate(fine, [&](double e) { return wf[j++] * probe_kernel(x, e, opt.probe_height); });
        if (std::abs(f - c) > opt.tol * std::max(std::abs(f), opt.abs_floor))
            throw ToolkitError(ErrorKind::NonConvergence, "Dirac reconstruction failed the order-doubling check",
                               {{"x", detail::num(x)}, {"difference", detail::num(std::abs(f - c))}});
        out[i] = f;
    }
    return out;
}

[[nodiscard]] inline std::vector<Complex> dirac_reconstruct(const EnergyWavefunction& phi, const SMatrixModel& model,
                                                            const std::vector<double>& grid,
                                                            const ExpansionOptions& opt = {}) {
    return dirac_reconstruct(phi.amplitude(), model, grid, opt);
}

/**
 * c = -2 pi i Res_z [S_II phi] by trapezoidal quadrature on a circle around
 * z. The radius is `radius_fraction` times the distance from z to the real
 * axis and to every other singularity.
 */
[[nodiscard]] inline Complex pole_coefficient(const RationalAmplitude& phi, const SMatrixModel& model,
                                              ComplexEnergy z, const ExpansionOptions& opt = {}) {
    detail::require(opt.residue_nodes >= 8 && opt.residue_radius_fraction > 0.0 && opt.residue_radius_fraction < 1.0,
                    ErrorKind::InvalidModel, "residue circle needs >= 8 nodes and a radius fraction in (0, 1)");
    double dist = std::abs(z.im());
    for (const auto& p : model.rational_poles())
        if (!(p == z)) dist = std::min(dist, std::abs(p.value() - z.value()));
    for (const auto& t : phi.terms()) dist = std::min(dist, std::abs(t.location.value() - z.value()));
    const double radius = opt.residue_radius_fraction * dist;
    const int n = opt.residue_nodes;
    Complex acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
        const Complex u = std::polar(1.0, opt.residue_phase + 2.0 * kPi * j / n);
        const Complex e = z.value() + radius * u;
        acc += s_matrix(model, ComplexEnergy(e), Sheet::Second) * phi(e) * radius * u;
    }
    return -2.0 * kPi * kI * acc / static_cast<double>(n);
}

/**
 * Resonance expansion: pole terms from the model's second-sheet poles plus
 * the background integral along the negative axis of the second sheet.
 * Restricted to rational S-matrix models, whose pole set is finite and known.
 */
[[nodiscard]] inline ExpansionResult complex_basis_reconstruct(const RationalAmplitude& phi, const SMatrixModel& model,
                                                               const std::vector<double>& grid,
                                                               const ExpansionOptions& opt = {}) {
    detail::require_grid(grid);
    detail::require(opt.probe_height > 0.0, ErrorKind::InvalidModel, "probe height must be positive");
    detail::require(model.kind() == ModelKind::RationalConstructed, ErrorKind::InvalidModel,
                    "complex-basis expansion needs a rational S-matrix model");
    for (const auto& t : phi.terms())
        detail::require(t.location.im() > 0.0, ErrorKind::InvalidModel,
                        "contour deformation needs every wavefunction pole in the upper half plane",
                        {{"re", detail::num(t.location.re())}, {"im", detail::num(t.location.im())}});

    ExpansionResult res;
    res.grid = grid;
    res.poles = model.rational_poles();
    for (const auto& z : res.poles) res.pole_coefficients.push_back(pole_coefficient(phi, model, z, opt));

    // int_0^{-inf} f(E) dE = -int_0^inf f(-s) ds
    std::vector<Complex> pts;
    std::vector<Complex> mirrored;
    for (Complex p : detail::expansion_points(phi, model, grid, opt.probe_height)) {
        pts.push_back(p);
        mirrored.push_back(-p);
    }
    const SemiInfinite dom{0.0, detail::typical_scale(pts), detail::half_line_features(mirrored)};
    const QuadratureRule coarse = build_quadrature(dom, opt.order);
    const QuadratureRule fine = build_quadrature(dom, 2 * opt.order);
    const auto weights = [&](const QuadratureRule& r) {
        std::vector<Complex> w;
        for (double s : r.nodes())
            w.push_back(phi.is_zero() ? Complex(0.0, 0.0)
                                      : s_matrix(model, ComplexEnergy(-s, 0.0), Sheet::Second) * phi(Complex(-s, 0.0)));
        return w;
    };
    const auto wc = weights(coarse);
    const auto wf = weights(fine);
    for (std::size_t j = 0; j < fine.size(); ++j) res.background_contour.push_back({-fine.nodes()[j], wf[j]});

    for (double x : grid) {
        std::size_t j = 0;
        const Complex bc =
            -integrate(coarse, [&](double s) { return wc[j++] * probe_kernel(x, Complex(-s, 0.0), opt.probe_height); });
        j = 0;
        const Complex bf =
            -integrate(fine, [&](double s) { return wf[j++] * probe_kernel(x, Complex(-s, 0.0), opt.probe_height); });
        if (std::abs(bf - bc) > opt.tol * std::max(std::abs(bf), opt.abs_floor))
            throw ToolkitError(ErrorKind::NonConvergence, "background contour integral failed the order-doubling check",
                               {{"x", detail::num(x)}, {"difference", detail::num(std::abs(bf - bc))}});
        Complex poles{0.0, 0.0};
        for (std::size_t i = 0; i < res.poles.size(); ++i)
            poles += res.pole_coefficients[i] * probe_kernel(x, res.poles[i].value(), opt.probe_height);
        res.pole_terms.push_back(poles);
        res.background.push_back(bf);
        res.reconstruction.push_back(poles + bf);
    }
    return res;
}

[[nodiscard]] inline ExpansionResult complex_basis_reconstruct(const EnergyWavefunction& phi,
                                                               const SMatrixModel& model,
                                                               const std::vector<double>& grid,
                                                               const ExpansionOptions& opt = {}) {
    return complex_basis_reconstruct(phi.amplitude(), model, grid, opt);
}

}  // namespace gamowkit
