// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file scattering.hpp
 * @brief s-wave S-matrix models on a two-sheet energy surface, phase shifts,
 *        scattering states and second-sheet pole search.
 *
 * Kinematics: m = 1/2 and hbar = 1, so E = k^2. The first sheet is
 * Im k >= 0 with k_I(E) = i sqrt(-E) (principal root), which puts the
 * branch cut on the positive real axis; the physical axis is its upper lip,
 * where k_I = +sqrt(E). The second sheet is reached by k -> -k, so
 * S_II(E) = S(-k_I) = 1/S_I(E) identically. Decaying resonances are the
 * poles of S_II in the lower half plane; their growing partners sit at the
 * complex-conjugate energies in the upper half of the same sheet.
 *
 * Delta-shell model, V(r) = g delta(r - a), g > 0:
 *   regular solution  phi(r) = sin(kr)/k                                   r < a
 *                     phi(r) = sin(kr)/k + g sin(ka) sin(k(r-a))/k^2       r > a
 *   Jost function     f(k)   = 1 + g e^{ika} sin(ka)/k
 *                            = 1 + (g/(2ik)) (e^{2ika} - 1)
 *   S-matrix          S(k)   = f(-k)/f(k)
 * For r > a, phi = (f(k)/(2ik)) (f(-k)/f(k) e^{ikr} - e^{-ikr}), which is
 * where the Jost-ratio form of S comes from.
 *
 * Rational model with decaying poles z_i:
 *   R(E) = prod_i (E - conj z_i)/(E - z_i),  |R(E)| = 1 on the real axis.
 * R is the physical S on the real axis and its continuation into the lower
 * half plane, so S_II = R for Im E < 0 and S_II = 1/R for Im E > 0 (where it
 * carries the growing poles conj z_i). The two half planes of this model
 * are glued along the whole real axis; the negative axis of the second
 * sheet takes the lower-lip value R(E).
 */

#pragma once

#include <gamowkit/core.hpp>
#include <gamowkit/resonance.hpp>

#include <array>
#include <limits>
#include <optional>
#include <vector>

namespace gamowkit {

enum class Sheet { First, Second };
enum class ModelKind { RationalConstructed, DeltaShell };

[[nodiscard]] inline const char* to_string(ModelKind kind) noexcept {
    return kind == ModelKind::DeltaShell ? "delta-shell" : "rational";
}

/// An analytic S-matrix model; immutable after construction.
class SMatrixModel {
public:
    /// Rational model; every pole must have Im z < 0 and poles must be distinct.
    static SMatrixModel rational(std::vector<ComplexEnergy> poles) {
        for (std::size_t i = 0; i < poles.size(); ++i) {
            detail::require(poles[i].im() < 0.0, ErrorKind::InvalidModel,
                            "rational-model poles must lie in the lower half plane",
                            {{"re", detail::num(poles[i].re())}, {"im", detail::num(poles[i].im())}});
            for (std::size_t j = 0; j < i; ++j)
                detail::require(!(poles[i] == poles[j]), ErrorKind::InvalidModel,
                                "rational-model poles must be distinct");
        }
        SMatrixModel m;
        m.kind_ = ModelKind::RationalConstructed;
        m.poles_ = std::move(poles);
        return m;
    }

    /// Repulsive delta shell of strength g > 0 at radius a > 0.
    static SMatrixModel delta_shell(double g, double a) {
        detail::require(std::isfinite(g) && g > 0.0, ErrorKind::InvalidModel,
                        "delta-shell coupling g must be positive", {{"g", detail::num(g)}});
        detail::require(std::isfinite(a) && a > 0.0, ErrorKind::InvalidModel,
                        "delta-shell radius a must be positive", {{"a", detail::num(a)}});
        SMatrixModel m;
        m.kind_ = ModelKind::DeltaShell;
        m.g_ = g;
        m.a_ = a;
        return m;
    }

    [[nodiscard]] ModelKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::vector<ComplexEnergy>& rational_poles() const noexcept { return poles_; }
    [[nodiscard]] double coupling() const noexcept { return g_; }
    [[nodiscard]] double radius() const noexcept { return a_; }

    /// Delta-shell Jost function f(k).
    [[nodiscard]] Complex jost(Complex k) const noexcept {
        // (e^{2ika} - 1)/(2ik) = a (e^x - 1)/x with x = 2ika
        const Complex x = 2.0 * kI * k * a_;
        Complex ratio;
        if (std::abs(x) < 1e-4)
            ratio = a_ * (1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0);
        else
            ratio = a_ * (std::exp(x) - 1.0) / x;
        return 1.0 + g_ * ratio;
    }

    /// df/dk for the delta shell.
    [[nodiscard]] Complex jost_derivative(Complex k) const noexcept {
        // f = 1 + g a h(x), h(x) = (e^x - 1)/x, x = 2ika; f' = g a h'(x) 2ia
        const Complex x = 2.0 * kI * k * a_;
        Complex dh;
        if (std::abs(x) < 1e-4)
            dh = 0.5 + x / 3.0 + x * x / 8.0;
        else
            dh = (std::exp(x) * (x - 1.0) + 1.0) / (x * x);
        return g_ * a_ * dh * 2.0 * kI * a_;
    }

    friend bool operator==(const SMatrixModel& l, const SMatrixModel& r) {
        return l.kind_ == r.kind_ && l.poles_ == r.poles_ && l.g_ == r.g_ && l.a_ == r.a_;
    }

private:
    SMatrixModel() = default;

    ModelKind kind_ = ModelKind::RationalConstructed;
    std::vector<ComplexEnergy> poles_;
    double g_ = 0.0;
    double a_ = 0.0;
};

// ============================================================================
// Sheet kinematics
// ============================================================================

/// Momentum on the requested sheet; the positive real axis maps to the upper lip.
[[nodiscard]] inline Complex momentum(Complex e, Sheet sheet) noexcept {
    Complex k1;
    if (e.imag() == 0.0 && e.real() > 0.0)
        k1 = Complex(std::sqrt(e.real()), 0.0);
    else if (e.imag() == 0.0)
        k1 = Complex(0.0, std::sqrt(-e.real()));
    else
        k1 = kI * std::sqrt(-e);
    return sheet == Sheet::First ? k1 : -k1;
}

namespace detail {

/// R(E) = prod (E - conj z)/(E - z) for the rational model.
inline Complex rational_r(const SMatrixModel& m, Complex e) {
    Complex r{1.0, 0.0};
    for (const auto& p : m.rational_poles()) {
        const Complex z = p.value();
        r *= (e - std::conj(z)) / (e - z);
    }
    return r;
}

/// True when the rational model uses R (rather than 1/R) at e on the given sheet.
inline bool rational_uses_r(Complex e, Sheet sheet) noexcept {
    bool lower_lip;  // positions where S_II = R
    if (e.imag() < 0.0)
        lower_lip = true;
    else if (e.imag() > 0.0)
        lower_lip = false;
    else
        lower_lip = e.real() <= 0.0;
    return sheet == Sheet::Second ? lower_lip : !lower_lip;
}

}  // namespace detail

/**
 * S(z) on the requested sheet. Throws InvalidModel at a pole of that sheet.
 * On the positive real axis S_II(E) = 1/S_I(E) and |S_I(E)| = 1.
 */
[[nodiscard]] inline Complex s_matrix(const SMatrixModel& model, ComplexEnergy z, Sheet sheet) {
    const Complex e = z.value();
    Complex s;
    if (model.kind() == ModelKind::RationalConstructed) {
        for (const auto& p : model.rational_poles()) {
            const bool hits = detail::rational_uses_r(e, sheet) ? e == p.value() : e == std::conj(p.value());
            detail::require(!hits, ErrorKind::InvalidModel, "S-matrix evaluated exactly at a pole",
                            {{"re", detail::num(z.re())}, {"im", detail::num(z.im())}});
        }
        const Complex r = detail::rational_r(model, e);
        s = detail::rational_uses_r(e, sheet) ? r : 1.0 / r;
    } else {
        const Complex k = momentum(e, sheet);
        const Complex den = model.jost(k);
        detail::require(den != Complex(0.0, 0.0), ErrorKind::InvalidModel, "S-matrix evaluated exactly at a pole",
                        {{"re", detail::num(z.re())}, {"im", detail::num(z.im())}});
        s = model.jost(-k) / den;
    }
    detail::require(detail::is_finite(s), ErrorKind::InvalidModel, "S-matrix is singular at the requested energy",
                    {{"re", detail::num(z.re())}, {"im", detail::num(z.im())}});
    return s;
}

/**
 * An analytic function whose zeros are the second-sheet poles of S and
 * which has no poles of its own off the real axis: the Jost function
 * f(k_II(E)) for the delta shell, 1/S_II(E) for the rational model.
 * Returns {value, d/dE}.
 */
[[nodiscard]] inline std::array<Complex, 2> pole_function(const SMatrixModel& model, Complex e) {
    if (model.kind() == ModelKind::DeltaShell) {
        const Complex k = momentum(e, Sheet::Second);
        return {model.jost(k), model.jost_derivative(k) / (2.0 * k)};
    }
    // lower half: N/D with N = prod (E - z), D = prod (E - conj z); upper half swaps roles
    const bool lower = e.imag() < 0.0 || (e.imag() == 0.0 && e.real() <= 0.0);
    Complex num{1.0, 0.0};
    Complex den{1.0, 0.0};
    Complex dnum{0.0, 0.0};
    Complex dden{0.0, 0.0};
    for (const auto& p : model.rational_poles()) {
        const Complex zero = lower ? p.value() : std::conj(p.value());
        const Complex pole = lower ? std::conj(p.value()) : p.value();
        dnum = dnum * (e - zero) + num;
        num *= (e - zero);
        dden = dden * (e - pole) + den;
        den *= (e - pole);
    }
    return {num / den, (dnum * den - num * dden) / (den * den)};
}

// ============================================================================
// Phase shift, cross section, scattering state
// ============================================================================

namespace detail {

/// Momentum step that resolves every delta-shell resonance below k_max.
inline double delta_shell_dk(const SMatrixModel& m) {
    const double a = m.radius();
    const double g = m.coupling();
    // narrowest (lowest) resonance has |Im k| ~ (pi/a)^2 / (g^2 a)
    const double width_k = (kPi / a) * (kPi / a) / (std::max(g * g, 1.0) * a);
    return std::min(kPi / (16.0 * a), 0.1 * width_k);
}

inline double half_arg_increment(Complex s_from, Complex s_to) { return 0.5 * std::arg(s_to / s_from); }

inline double unwrap_segment(const SMatrixModel& m, double e0, double e1, Complex s0, Complex s1, int depth) {
    const double inc = half_arg_increment(s0, s1);
    if (std::abs(inc) <= kPi / 16.0 || depth > 40) return inc;
    const double mid = 0.5 * (e0 + e1);
    const Complex sm = s_matrix(m, ComplexEnergy(mid, 0.0), Sheet::First);
    return unwrap_segment(m, e0, mid, s0, sm, depth + 1) + unwrap_segment(m, mid, e1, sm, s1, depth + 1);
}

}  // namespace detail

inline constexpr double kPhaseShiftStartEnergy = 1e-8;

/**
 * Phase shift delta(E) with S_I(E) = e^{2 i delta(E)}, on the branch that is
 * continuous in E and starts from the principal value at `e_start`.
 */
[[nodiscard]] inline double phase_shift(const SMatrixModel& model, double e,
                                        double e_start = kPhaseShiftStartEnergy) {
    detail::require(std::isfinite(e) && e > 0.0, ErrorKind::InvalidModel, "phase shift needs E > 0",
                    {{"E", detail::num(e)}});
    detail::require(e_start > 0.0 && e_start <= e, ErrorKind::InvalidModel,
                    "phase-shift branch start must satisfy 0 < e_start <= E");
    // Breakpoints fine enough that no resonance slips between samples.
    std::vector<double> grid{e_start};
    if (model.kind() == ModelKind::DeltaShell) {
        const double dk = detail::delta_shell_dk(model);
        for (double k = std::sqrt(e_start) + dk; k * k < e; k += dk) grid.push_back(k * k);
    } else {
        for (const auto& p : model.rational_poles()) {
            const double hw = -p.im();
            for (int j = -8; j <= 8; ++j) {
                const double x = p.re() + j * hw * 0.5;
                if (x > e_start && x < e) grid.push_back(x);
            }
        }
        std::sort(grid.begin(), grid.end());
    }
    grid.push_back(e);
    Complex prev = s_matrix(model, ComplexEnergy(grid.front(), 0.0), Sheet::First);
    double delta = 0.5 * std::arg(prev);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) continue;
        const Complex cur = s_matrix(model, ComplexEnergy(grid[i], 0.0), Sheet::First);
        delta += detail::unwrap_segment(model, grid[i - 1], grid[i], prev, cur, 0);
        prev = cur;
    }
    return delta;
}

/// s-wave partial cross section (4 pi/k^2) sin^2 delta = pi |1 - S|^2 / E.
[[nodiscard]] inline double partial_cross_section(const SMatrixModel& model, double e) {
    detail::require(std::isfinite(e) && e > 0.0, ErrorKind::InvalidModel, "cross section needs E > 0",
                    {{"E", detail::num(e)}});
    const Complex s = s_matrix(model, ComplexEnergy(e, 0.0), Sheet::First);
    return kPi * std::norm(1.0 - s) / e;
}

/**
 * Delta-shell s-wave scattering state at energy E and radius r, normalized
 * so that psi(r) = (S e^{ikr} - e^{-ikr})/(2i) for r > a. Inside the shell
 * psi = sin(kr)/f(k); psi is continuous at a and psi'(a+) - psi'(a-) = g psi(a).
 * For g -> 0 this is sin(kr).
 */
[[nodiscard]] inline Complex scattering_state(const SMatrixModel& model, double e, double r) {
    detail::require(model.kind() == ModelKind::DeltaShell, ErrorKind::InvalidModel,
                    "scattering states are available for the delta-shell model only");
    detail::require(std::isfinite(e) && e > 0.0, ErrorKind::InvalidModel, "scattering state needs E > 0",
                    {{"E", detail::num(e)}});
    detail::require(std::isfinite(r) && r >= 0.0, ErrorKind::InvalidModel, "radius must be non-negative",
                    {{"r", detail::num(r)}});
    const double k = std::sqrt(e);
    const double a = model.radius();
    const double g = model.coupling();
    double phi = std::sin(k * r) / k;
    if (r > a) phi += g * std::sin(k * a) * std::sin(k * (r - a)) / (k * k);
    return phi * k / model.jost(Complex(k, 0.0));
}

/// Full width at half maximum of the partial cross section peak in [e_lo, e_hi].
[[nodiscard]] inline double lineshape_fwhm(const SMatrixModel& model, double e_lo, double e_hi,
                                           int samples = 4000) {
    detail::require(e_lo > 0.0 && e_hi > e_lo && samples >= 16, ErrorKind::InvalidModel,
                    "lineshape scan needs 0 < e_lo < e_hi and at least 16 samples");
    const auto sigma = [&](double e) { return partial_cross_section(model, e); };
    const double h = (e_hi - e_lo) / samples;
    int best = 0;
    double best_val = -1.0;
    for (int i = 0; i <= samples; ++i) {
        const double v = sigma(e_lo + i * h);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    detail::require(best > 0 && best < samples, ErrorKind::NonConvergence,
                    "cross-section maximum lies on the scan boundary");
    // golden-section refinement of the peak
    double lo = e_lo + (best - 1) * h;
    double hi = e_lo + (best + 1) * h;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double x1 = hi - gr * (hi - lo);
        const double x2 = lo + gr * (hi - lo);
        if (sigma(x1) < sigma(x2))
            lo = x1;
        else
            hi = x2;
    }
    const double peak = 0.5 * (lo + hi);
    const double half = 0.5 * sigma(peak);
    const auto crossing = [&](double inside, double step) {
        double outside = inside;
        while (sigma(outside) > half) {
            inside = outside;
            outside += step;
            detail::require(outside > e_lo && outside < e_hi, ErrorKind::NonConvergence,
                            "half-maximum crossing lies outside the scan window");
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (inside + outside);
            (sigma(mid) > half ? inside : outside) = mid;
        }
        return 0.5 * (inside + outside);
    };
    return crossing(peak, h) - crossing(peak, -h);
}

// ============================================================================
// Pole search
// ============================================================================

/**
 * Axis-aligned rectangle of the second sheet that stays off the real axis.
 * The usual search region is the lower one, [e_min, e_max] x [-gamma_max/2, -eps].
 */
class PoleSearchRegion {
public:
    PoleSearchRegion(double e_min, double e_max, double im_min, double im_max)
        : e_min_(e_min), e_max_(e_max), im_min_(im_min), im_max_(im_max) {
        detail::require(std::isfinite(e_min) && std::isfinite(e_max) && e_min < e_max, ErrorKind::InvalidModel,
                        "pole search region needs e_min < e_max");
        detail::require(std::isfinite(im_min) && std::isfinite(im_max) && im_min < im_max, ErrorKind::InvalidModel,
                        "pole search region needs im_min < im_max");
        detail::require(im_max < 0.0 || im_min > 0.0, ErrorKind::InvalidModel,
                        "pole search region must not touch the real axis",
                        {{"im_min", detail::num(im_min)}, {"im_max", detail::num(im_max)}});
    }

    static PoleSearchRegion lower(double e_min, double e_max, double gamma_max, double eps = 1e-4) {
        detail::require(gamma_max > 0.0 && eps > 0.0 && eps < 0.5 * gamma_max, ErrorKind::InvalidModel,
                        "pole search region needs gamma_max > 0 and 0 < eps < gamma_max/2");
        return {e_min, e_max, -0.5 * gamma_max, -eps};
    }

    /// The complex-conjugate rectangle.
    [[nodiscard]] PoleSearchRegion mirrored() const { return {e_min_, e_max_, -im_max_, -im_min_}; }

    [[nodiscard]] double e_min() const noexcept { return e_min_; }
    [[nodiscard]] double e_max() const noexcept { return e_max_; }
    [[nodiscard]] double im_min() const noexcept { return im_min_; }
    [[nodiscard]] double im_max() const noexcept { return im_max_; }
    [[nodiscard]] bool contains(Complex z) const noexcept {
        return z.real() >= e_min_ && z.real() <= e_max_ && z.imag() >= im_min_ && z.imag() <= im_max_;
    }

private:
    double e_min_, e_max_, im_min_, im_max_;
};

/// A second-sheet pole of S with its residue. Decaying poles have Im z < 0.
struct ResonancePole {
    ComplexEnergy z_r;
    Complex residue;

    [[nodiscard]] bool decaying() const noexcept { return z_r.im() < 0.0; }

    /// E_R = Re z, Gamma = -2 Im z. Throws InvalidModel for a growing pole.
    [[nodiscard]] ResonanceParameters parameters() const {
        detail::require(decaying(), ErrorKind::InvalidModel, "growing (upper half plane) pole has no decay width");
        return ResonanceParameters::from_pole(z_r);
    }
};

struct PoleSearchOptions {
    double newton_tol = 1e-12;      // |pole function| at acceptance
    int newton_max_iter = 60;
    int max_depth = 12;             // region subdivision depth
    int residue_nodes = 64;         // trapezoid nodes on the residue circle
    double boundary_threshold = 1e-9;
};

namespace detail {

struct WindingResult {
    double turns;
    double min_abs;
};

inline double winding_segment(const SMatrixModel& m, Complex a, Complex b, Complex fa, Complex fb, double max_step,
                              int depth, double& min_abs) {
    const double inc = std::arg(fb / fa);
    if (std::abs(inc) <= max_step || depth > 30) return inc;
    const Complex mid = 0.5 * (a + b);
    const Complex fm = pole_function(m, mid)[0];
    min_abs = std::min(min_abs, std::abs(fm));
    return winding_segment(m, a, mid, fa, fm, max_step, depth + 1, min_abs) +
           winding_segment(m, mid, b, fm, fb, max_step, depth + 1, min_abs);
}

/// Total argument change of the pole function around the region, in turns.
inline WindingResult winding(const SMatrixModel& m, const PoleSearchRegion& r, double max_step, int per_side) {
    const std::array<Complex, 5> corners{Complex(r.e_min(), r.im_min()), Complex(r.e_max(), r.im_min()),
                                         Complex(r.e_max(), r.im_max()), Complex(r.e_min(), r.im_max()),
                                         Complex(r.e_min(), r.im_min())};
    double total = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
    for (int side = 0; side < 4; ++side) {
        const Complex a = corners[static_cast<std::size_t>(side)];
        const Complex b = corners[static_cast<std::size_t>(side + 1)];
        Complex prev_z = a;
        Complex prev_f = pole_function(m, a)[0];
        min_abs = std::min(min_abs, std::abs(prev_f));
        for (int i = 1; i <= per_side; ++i) {
            const Complex z = a + (b - a) * (static_cast<double>(i) / per_side);
            const Complex f = pole_function(m, z)[0];
            min_abs = std::min(min_abs, std::abs(f));
            total += winding_segment(m, prev_z, z, prev_f, f, max_step, 0, min_abs);
            prev_z = z;
            prev_f = f;
        }
    }
    return {total / (2.0 * kPi), min_abs};
}

inline std::optional<Complex> newton_refine(const SMatrixModel& m, Complex z, const PoleSearchOptions& opt) {
    for (int it = 0; it < opt.newton_max_iter; ++it) {
        const auto [f, df] = pole_function(m, z);
        if (!is_finite(f) || !is_finite(df) || df == Complex(0.0, 0.0)) return std::nullopt;
        if (std::abs(f) < opt.newton_tol) {
            // two polishing steps; the acceptance test above already holds
            for (int p = 0; p < 2; ++p) {
                const auto [f2, df2] = pole_function(m, z);
                if (f2 == Complex(0.0, 0.0) || df2 == Complex(0.0, 0.0)) break;
                z -= f2 / df2;
            }
            return z;
        }
        z -= f / df;
    }
    return std::nullopt;
}

}  // namespace detail

/**
 * Number of second-sheet poles inside the region by the argument principle,
 * accepted once two sampling resolutions agree on the same integer within
 * 1e-3. Throws InvalidModel when a pole sits on the boundary.
 */
[[nodiscard]] inline int count_poles(const SMatrixModel& model, const PoleSearchRegion& region,
                                     const PoleSearchOptions& opt = {}) {
    const auto coarse = detail::winding(model, region, kPi / 4.0, 16);
    detail::require(coarse.min_abs > opt.boundary_threshold, ErrorKind::InvalidModel,
                    "a pole lies on (or numerically at) the search-region boundary",
                    {{"min_abs", detail::num(coarse.min_abs)}});
    const auto fine = detail::winding(model, region, kPi / 8.0, 32);
    const double n = std::round(fine.turns);
    if (std::abs(fine.turns - n) > 1e-3 || std::abs(coarse.turns - n) > 1e-3)
        throw ToolkitError(ErrorKind::NonConvergence, "argument-principle winding number did not stabilize",
                           {{"coarse", detail::num(coarse.turns)}, {"fine", detail::num(fine.turns)}});
    detail::require(n >= 0.0, ErrorKind::InvariantViolation, "negative winding number: pole function has poles");
    return static_cast<int>(n);
}

/// Residue of S_II at z by trapezoidal quadrature on a circle of the given radius.
[[nodiscard]] inline Complex residue_on_circle(const SMatrixModel& model, Complex z, double radius, int nodes) {
    detail::require(radius > 0.0 && radius < std::abs(z.imag()), ErrorKind::InvalidModel,
                    "residue circle must be positive and stay off the real axis");
    detail::require(nodes >= 8, ErrorKind::InvalidModel, "residue circle needs at least 8 nodes");
    Complex acc{0.0, 0.0};
    for (int j = 0; j < nodes; ++j) {
        const Complex u = std::polar(1.0, 2.0 * kPi * j / nodes);
        acc += s_matrix(model, ComplexEnergy(z + radius * u), Sheet::Second) * radius * u;
    }
    return acc / static_cast<double>(nodes);
}

namespace detail {

inline void search_region(const SMatrixModel& m, const PoleSearchRegion& r, int depth, const PoleSearchOptions& opt,
                          std::vector<Complex>& out) {
    const int n = count_poles(m, r, opt);
    if (n == 0) return;
    if (n == 1) {
        const Complex centre(0.5 * (r.e_min() + r.e_max()), 0.5 * (r.im_min() + r.im_max()));
        if (auto z = newton_refine(m, centre, opt); z && r.contains(*z)) {
            out.push_back(*z);
            return;
        }
    }
    if (depth >= opt.max_depth)
        throw ToolkitError(ErrorKind::NonConvergence, "pole refinement failed at maximum subdivision depth",
                           {{"depth", std::to_string(depth)}, {"count", std::to_string(n)}});
    // Off-centre cuts keep the new edges away from symmetric pole placements.
    const double fx = 0.5 + 0.0317;
    const double fy = 0.5 - 0.0231;
    const double xm = r.e_min() + fx * (r.e_max() - r.e_min());
    const double ym = r.im_min() + fy * (r.im_max() - r.im_min());
    const std::array<PoleSearchRegion, 4> quads{
        PoleSearchRegion(r.e_min(), xm, r.im_min(), ym), PoleSearchRegion(xm, r.e_max(), r.im_min(), ym),
        PoleSearchRegion(r.e_min(), xm, ym, r.im_max()), PoleSearchRegion(xm, r.e_max(), ym, r.im_max())};
    for (const auto& q : quads) search_region(m, q, depth + 1, opt, out);
}

}  // namespace detail

/**
 * All second-sheet poles of S inside the region: counted by the argument
 * principle, refined by Newton iteration on the pole function, with
 * residues from small-circle contour quadrature. Sorted by real part.
 */
[[nodiscard]] inline std::vector<ResonancePole> find_poles(const SMatrixModel& model, const PoleSearchRegion& region,
                                                           const PoleSearchOptions& opt = {}) {
    std::vector<Complex> zs;
    detail::search_region(model, region, 0, opt, zs);
    std::sort(zs.begin(), zs.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    std::vector<ResonancePole> poles;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        double nearest = std::abs(zs[i].imag()) * 2.0;
        for (std::size_t j = 0; j < zs.size(); ++j)
            if (j != i) nearest = std::min(nearest, std::abs(zs[i] - zs[j]));
        // the conjugate partner on the other half plane
        nearest = std::min(nearest, 2.0 * std::abs(zs[i].imag()));
        const double gamma = 2.0 * std::abs(zs[i].imag());
        const double radius = std::min(gamma / 10.0, nearest / 4.0);
        poles.push_back({ComplexEnergy(zs[i]), residue_on_circle(model, zs[i], radius, opt.residue_nodes)});
    }
    return poles;
}

}  // namespace gamowkit
