// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file goldenrule.hpp
 * @brief Decay probability, the exact Golden Rule and its Born limit.
 *
 * With v(E, b) = |<E,b|V|psi^G>|^2 and the line shape
 * L(E) = 1/((E - E_R)^2 + (Gamma/2)^2):
 *
 *     I    = int dE sum_b v(E, b) L(E)
 *     P(t) = 1 - e^{-Gamma t} I
 *     dP/dt = 2 pi e^{-Gamma t} int dE sum_b v(E, b) (Gamma/2pi) L(E)
 *
 * A consistent model has I = 1 so that P(0) = 0 and P(inf) = 1; then
 * dP/dt(0) = Gamma. When Gamma/E_R -> 0 the line shape becomes a delta
 * function and the rate tends to Fermi's 2 pi sum_b v(E_R, b).
 */

#pragma once

#include <gamowkit/core.hpp>
#include <gamowkit/evolution.hpp>
#include <gamowkit/resonance.hpp>
#include <gamowkit/spectral.hpp>

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace gamowkit {

struct DecayChannel {
    std::string label;
    double weight = 1.0;
};

/// Decay channels b with degeneracy weights and a common energy support.
class DecayChannelSet {
public:
    explicit DecayChannelSet(std::vector<DecayChannel> channels, double threshold = 0.0,
                             Support support = Support::Semibounded)
        : channels_(std::move(channels)), threshold_(threshold), support_(support) {
        detail::require(!channels_.empty(), ErrorKind::InvalidModel, "a decay channel set needs at least one channel");
        for (const auto& c : channels_)
            detail::require(std::isfinite(c.weight) && c.weight > 0.0, ErrorKind::InvalidModel,
                            "channel weights must be positive", {{"channel", c.label}, {"weight", detail::num(c.weight)}});
        detail::require(std::isfinite(threshold_), ErrorKind::InvalidModel, "channel threshold must be finite");
    }

    [[nodiscard]] const std::vector<DecayChannel>& channels() const noexcept { return channels_; }
    [[nodiscard]] double threshold() const noexcept { return threshold_; }
    [[nodiscard]] Support support() const noexcept { return support_; }

    [[nodiscard]] double total_weight() const noexcept {
        double w = 0.0;
        for (const auto& c : channels_) w += c.weight;
        return w;
    }

private:
    std::vector<DecayChannel> channels_;
    double threshold_;
    Support support_;
};

enum class FormShape { Constant, PowerThreshold, LorentzCutoff };

[[nodiscard]] inline const char* to_string(FormShape s) noexcept {
    switch (s) {
        case FormShape::Constant: return "constant";
        case FormShape::PowerThreshold: return "power-threshold";
        case FormShape::LorentzCutoff: return "lorentz-cutoff";
    }
    return "unknown";
}

/**
 * v(E, b) = g2 * m_b * s(E), with s = 1, (E - E_th)^alpha above threshold,
 * or cutoff^2/(E^2 + cutoff^2). Channel multipliers m_b default to 1.
 */
class FormFactor {
public:
    static FormFactor constant(double g2) { return FormFactor(FormShape::Constant, g2, 0.0, 0.0); }

    /// Needs 0 < alpha < 1 so that the line-shape integral converges.
    static FormFactor power_threshold(double g2, double alpha) {
        detail::require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidModel,
                        "power-threshold exponent must satisfy 0 < alpha < 1", {{"alpha", detail::num(alpha)}});
        return FormFactor(FormShape::PowerThreshold, g2, alpha, 0.0);
    }

    static FormFactor lorentz_cutoff(double g2, double cutoff) {
        detail::require(std::isfinite(cutoff) && cutoff > 0.0, ErrorKind::InvalidModel,
                        "lorentz cutoff must be positive", {{"cutoff", detail::num(cutoff)}});
        return FormFactor(FormShape::LorentzCutoff, g2, 0.0, cutoff);
    }

    [[nodiscard]] FormFactor with_multiplier(const std::string& label, double m) const {
        detail::require(std::isfinite(m) && m >= 0.0, ErrorKind::InvalidModel,
                        "channel multiplier must be non-negative", {{"channel", label}});
        FormFactor f = *this;
        f.multipliers_[label] = m;
        return f;
    }

    [[nodiscard]] FormFactor with_coupling(double g2) const {
        FormFactor f(shape_, g2, alpha_, cutoff_);
        f.multipliers_ = multipliers_;
        return f;
    }

    [[nodiscard]] FormShape shape() const noexcept { return shape_; }
    [[nodiscard]] double coupling() const noexcept { return g2_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double cutoff() const noexcept { return cutoff_; }
    [[nodiscard]] const std::map<std::string, double>& multipliers() const noexcept { return multipliers_; }

    [[nodiscard]] double multiplier(const std::string& label) const {
        const auto it = multipliers_.find(label);
        return it == multipliers_.end() ? 1.0 : it->second;
    }

    /// s(E) for a support starting at `threshold`; zero below it.
    [[nodiscard]] double shape_value(double e, double threshold) const noexcept {
        switch (shape_) {
            case FormShape::Constant: return 1.0;
            case FormShape::PowerThreshold: return e > threshold ? std::pow(e - threshold, alpha_) : 0.0;
            case FormShape::LorentzCutoff: return cutoff_ * cutoff_ / (e * e + cutoff_ * cutoff_);
        }
        return 0.0;
    }

    /// v(E, b) = |<E,b|V|psi^G>|^2 >= 0.
    [[nodiscard]] double operator()(double e, const DecayChannel& b, double threshold) const {
        return g2_ * multiplier(b.label) * shape_value(e, threshold);
    }

private:
    FormFactor(FormShape shape, double g2, double alpha, double cutoff)
        : shape_(shape), g2_(g2), alpha_(alpha), cutoff_(cutoff) {
        detail::require(std::isfinite(g2) && g2 >= 0.0, ErrorKind::InvalidModel, "coupling g^2 must be non-negative",
                        {{"g2", detail::num(g2)}});
    }

    FormShape shape_;
    double g2_;
    double alpha_;
    double cutoff_;
    std::map<std::string, double> multipliers_;
};

inline constexpr double kGoldenRuleQuadTol = 1e-10;

namespace detail {

inline void require_support(const ResonanceParameters& p, const DecayChannelSet& ch, const FormFactor& v) {
    require(ch.support() == Support::Semibounded || v.shape() == FormShape::Constant, ErrorKind::InvalidModel,
            "full-line support is defined for the constant form factor only");
    if (ch.support() == Support::Semibounded)
        require(p.e_r() > ch.threshold(), ErrorKind::InvalidModel, "resonance must lie above the channel threshold",
                {{"e_r", num(p.e_r())}, {"threshold", num(ch.threshold())}});
}

/// int dE sum_b v(E, b) h(E) over the channel support, with h peaked at E_R.
template <typename H>
double line_integral(const ResonanceParameters& p, const DecayChannelSet& ch, const FormFactor& v, H&& h, int order) {
    const auto f = [&](double e) {
        double acc = 0.0;
        for (const auto& b : ch.channels()) acc += v(e, b, ch.threshold()) * b.weight;
        return acc * h(e);
    };
    const double hw = 0.5 * p.gamma();
    if (ch.support() == Support::FullLine) {
        // E_R + s and E_R - s, s in [0, inf)
        const auto make = [&](int n) { return build_quadrature(SemiInfinite{0.0, hw, {{0.0, hw}}}, n); };
        const auto g = [&](double s) { return f(p.e_r() + s) + f(p.e_r() - s); };
        return integrate_self_converged(make, order, g, kGoldenRuleQuadTol, 0.0, "line-shape integral").real();
    }
    // core [th, e_hi] graded at the threshold and the peak; tail x = X y^{-beta}, y in (0, 1],
    // with beta chosen so that an x^{alpha-2} decay becomes flat in y
    const double th = ch.threshold();
    const double x_hi = 2.0 * (p.e_r() - th) + 20.0 * p.gamma();
    std::vector<Feature> features{{p.e_r(), hw}};
    if (v.shape() == FormShape::PowerThreshold) features.push_back({th, 1e-8 * (p.e_r() - th)});
    const auto make_core = [&](int n) { return build_quadrature(FiniteInterval{th, th + x_hi, features}, n); };
    const double core =
        integrate_self_converged(make_core, order, f, kGoldenRuleQuadTol, 0.0, "line-shape integral").real();
    const double beta = v.shape() == FormShape::PowerThreshold ? 1.0 / (1.0 - v.alpha()) : 1.0;
    const auto tail_f = [&](double y) {
        if (y <= 0.0) return 0.0;
        const double x = x_hi * std::pow(y, -beta);
        return f(th + x) * x * beta / y;
    };
    const auto make_tail = [&](int n) { return build_quadrature(FiniteInterval{0.0, 1.0, {{0.0, 1e-6}}}, n); };
    const double tail = integrate_self_converged(make_tail, order, tail_f, kGoldenRuleQuadTol,
                                                 1e-3 * std::abs(core), "line-shape tail").real();
    return core + tail;
}

inline double lorentz_line(double e, const ResonanceParameters& p) noexcept {
    const double x = e - p.e_r();
    const double h = 0.5 * p.gamma();
    return 1.0 / (x * x + h * h);
}

}  // namespace detail

/// I = int dE sum_b v(E, b) / ((E - E_R)^2 + (Gamma/2)^2). InvariantViolation if I = 0.
[[nodiscard]] inline double normalization_integral(const ResonanceParameters& p, const DecayChannelSet& ch,
                                                   const FormFactor& v, int order = kDefaultQuadOrder) {
    detail::require_support(p, ch, v);
    const double i = detail::line_integral(p, ch, v, [&](double e) { return detail::lorentz_line(e, p); }, order);
    detail::require(i > 0.0, ErrorKind::InvariantViolation, "normalization integral vanishes: no coupling, no decay");
    return i;
}

/// Resonance, channels and form factor; `normalized` rescales g^2 so that I = 1.
class DecayModel {
public:
    DecayModel(ResonanceParameters p, DecayChannelSet ch, FormFactor v, int order = kDefaultQuadOrder)
        : p_(p), ch_(std::move(ch)), v_(std::move(v)), order_(order) {
        detail::require_order(order);
        norm_ = normalization_integral(p_, ch_, v_, order_);
    }

    static DecayModel normalized(ResonanceParameters p, DecayChannelSet ch, const FormFactor& v,
                                 int order = kDefaultQuadOrder) {
        const double i = normalization_integral(p, ch, v, order);
        return DecayModel(p, std::move(ch), v.with_coupling(v.coupling() / i), order);
    }

    [[nodiscard]] const ResonanceParameters& resonance() const noexcept { return p_; }
    [[nodiscard]] const DecayChannelSet& channels() const noexcept { return ch_; }
    [[nodiscard]] const FormFactor& form() const noexcept { return v_; }
    [[nodiscard]] int order() const noexcept { return order_; }
    /// I for this model's coupling (1 up to quadrature error when normalized).
    [[nodiscard]] double normalization() const noexcept { return norm_; }

private:
    ResonanceParameters p_;
    DecayChannelSet ch_;
    FormFactor v_;
    int order_;
    double norm_ = 1.0;
};

namespace detail {

inline void require_semigroup_time(double t, const char* what) {
    if (!(t >= 0.0))
        throw ToolkitError(ErrorKind::SemigroupDomain, std::string(what) + " is defined for t >= 0 only",
                           {{"t", num(t)}});
    require(std::isfinite(t) || t == std::numeric_limits<double>::infinity(), ErrorKind::InvalidModel,
            "time must be a number");
}

}  // namespace detail

/// P(t) = 1 - e^{-Gamma t} I, the probability that decay products are registered by time t.
[[nodiscard]] inline double decay_probability(const DecayModel& m, double t) {
    detail::require_semigroup_time(t, "decay probability");
    return 1.0 - std::exp(-m.resonance().gamma() * t) * m.normalization();
}

/// dP/dt from the line-shape integral (not by differentiating P).
[[nodiscard]] inline double decay_rate(const DecayModel& m, double t) {
    detail::require_semigroup_time(t, "decay rate");
    const auto& p = m.resonance();
    const double j = detail::line_integral(p, m.channels(), m.form(), [&](double e) { return bw_density(e, p); },
                                           m.order());
    return 2.0 * kPi * std::exp(-p.gamma() * t) * j;
}

/// Gamma_computed = 2 pi int dE sum_b v(E, b) delta_Gamma(E - E_R); zero for v = 0.
[[nodiscard]] inline double width_consistency(const ResonanceParameters& p, const DecayChannelSet& ch,
                                              const FormFactor& v, int order = kDefaultQuadOrder) {
    detail::require_support(p, ch, v);
    if (v.coupling() == 0.0) return 0.0;
    return 2.0 * kPi * detail::line_integral(p, ch, v, [&](double e) { return bw_density(e, p); }, order);
}

[[nodiscard]] inline double width_consistency(const DecayModel& m) {
    return width_consistency(m.resonance(), m.channels(), m.form(), m.order());
}

/// tau_R = 1/Gamma.
[[nodiscard]] inline double lifetime(const ResonanceParameters& p) noexcept { return 1.0 / p.gamma(); }

/**
 * A non-interacting state f^d with H0 f^d = E_d f^d and its Born form
 * factor. `e_eval` is where the Fermi rule evaluates v; it defaults to E_d.
 */
struct BornState {
    BornState(double e_d_, FormFactor form_) : BornState(e_d_, std::move(form_), e_d_) {}
    BornState(double e_d_, FormFactor form_, double e_eval_) : e_d(e_d_), form(std::move(form_)), e_eval(e_eval_) {
        detail::require(std::isfinite(e_d) && e_d > 0.0, ErrorKind::InvalidModel, "E_d must be positive",
                        {{"e_d", detail::num(e_d)}});
        detail::require(std::isfinite(e_eval), ErrorKind::InvalidModel, "evaluation energy must be finite");
    }

    double e_d;
    FormFactor form;
    double e_eval;
};

/// 2 pi sum_b v(e_eval, b) w_b.
[[nodiscard]] inline double fermi_golden_rule(const BornState& b, const DecayChannelSet& ch) {
    detail::require(ch.support() == Support::FullLine || b.e_d > ch.threshold(), ErrorKind::InvalidModel,
                    "E_d must lie above the channel threshold",
                    {{"e_d", detail::num(b.e_d)}, {"threshold", detail::num(ch.threshold())}});
    double acc = 0.0;
    for (const auto& c : ch.channels()) acc += b.form(b.e_eval, c, ch.threshold()) * c.weight;
    return 2.0 * kPi * acc;
}

// ============================================================================
// Curves and sweeps
// ============================================================================

struct DecayCurve {
    std::vector<double> times;
    std::vector<double> p_values;
    std::vector<double> rate_values;
};

[[nodiscard]] inline DecayCurve decay_curve(const DecayModel& m, const std::vector<double>& times) {
    detail::require_time_grid(times);
    DecayCurve c{times, {}, {}};
    const double r0 = decay_rate(m, 0.0);
    for (double t : times) {
        c.p_values.push_back(decay_probability(m, t));
        c.rate_values.push_back(r0 * std::exp(-m.resonance().gamma() * t));
    }
    return c;
}

struct BornLimitRow {
    double gamma_over_er;
    double exact_rate;
    double fermi_rate;
    double rel_diff;  // (exact - fermi)/fermi
};

/**
 * Exact rate dP/dt(0) of the normalized model against Fermi's rule with the
 * same normalized coupling, along a sequence of Gamma/E_R at fixed E_R.
 */
[[nodiscard]] inline std::vector<BornLimitRow> born_limit_sweep(double e_r, const DecayChannelSet& ch,
                                                                const FormFactor& v, const std::vector<double>& ratios,
                                                                int order = kDefaultQuadOrder) {
    std::vector<BornLimitRow> rows;
    for (double r : ratios) {
        detail::require(std::isfinite(r) && r > 0.0, ErrorKind::InvalidModel, "Gamma/E_R must be positive");
        const ResonanceParameters p(e_r, r * e_r);
        const auto m = DecayModel::normalized(p, ch, v, order);
        const double exact = decay_rate(m, 0.0);
        const double fermi = fermi_golden_rule(BornState(e_r, m.form()), ch);
        rows.push_back({r, exact, fermi, (exact - fermi) / fermi});
    }
    return rows;
}

}  // namespace gamowkit
