// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file core.hpp
 * @brief Shared numeric foundations: complex energies, quadrature rules and
 *        the error taxonomy used across gamowkit.
 *
 * Units: hbar = 1 everywhere. Energies are in arbitrary model units and
 * times in inverse energy units.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gamowkit {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// ============================================================================
// Errors
// ============================================================================

enum class ErrorKind { SemigroupDomain, NonConvergence, InvalidModel, InvariantViolation, IoError };

[[nodiscard]] inline const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::SemigroupDomain: return "SemigroupDomain";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::InvalidModel: return "InvalidModel";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

using ErrorContext = std::vector<std::pair<std::string, std::string>>;

/**
 * Every failure raised by gamowkit. what() renders "<Kind>: <message>" so the
 * kind survives when the error is only printed.
 */
class ToolkitError : public std::runtime_error {
public:
    ToolkitError(ErrorKind kind, std::string message, ErrorContext context = {})
        : std::runtime_error(render(kind, message, context)),
          kind_(kind),
          message_(message.empty() ? std::string("unspecified contract violation") : std::move(message)),
          context_(std::move(context)) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& message() const noexcept { return message_; }
    [[nodiscard]] const ErrorContext& context() const noexcept { return context_; }

private:
    static std::string render(ErrorKind kind, const std::string& message, const ErrorContext& context) {
        std::string out = std::string(to_string(kind)) + ": " +
                          (message.empty() ? std::string("unspecified contract violation") : message);
        for (const auto& [key, value] : context) out += " [" + key + "=" + value + "]";
        return out;
    }

    ErrorKind kind_;
    std::string message_;
    ErrorContext context_;
};

namespace detail {

inline std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void require(bool ok, ErrorKind kind, const std::string& message, ErrorContext context = {}) {
    if (!ok) throw ToolkitError(kind, message, std::move(context));
}

[[nodiscard]] inline bool is_finite(Complex z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace detail

// ============================================================================
// Complex energy
// ============================================================================

/// A point of the complex energy plane; rejects NaN and infinite parts.
class ComplexEnergy {
public:
    constexpr ComplexEnergy() = default;

    ComplexEnergy(double re, double im) : re_(re), im_(im) {
        detail::require(std::isfinite(re) && std::isfinite(im), ErrorKind::InvalidModel,
                        "complex energy must have finite real and imaginary parts",
                        {{"re", detail::num(re)}, {"im", detail::num(im)}});
    }

    explicit ComplexEnergy(Complex z) : ComplexEnergy(z.real(), z.imag()) {}

    [[nodiscard]] constexpr double re() const noexcept { return re_; }
    [[nodiscard]] constexpr double im() const noexcept { return im_; }
    [[nodiscard]] Complex value() const noexcept { return {re_, im_}; }
    [[nodiscard]] ComplexEnergy conj() const noexcept { return ComplexEnergy(re_, -im_); }

    friend bool operator==(const ComplexEnergy&, const ComplexEnergy&) = default;

private:
    double re_ = 0.0;
    double im_ = 0.0;
};

// ============================================================================
// Quadrature
// ============================================================================

enum class QuadratureKind { FiniteInterval, SemiInfiniteMapped, ContourParameterized };

/// A fixed set of nodes and positive weights; integrate() evaluates sum w_i f(x_i).
class QuadratureRule {
public:
    QuadratureRule(std::vector<double> nodes, std::vector<double> weights, QuadratureKind kind)
        : nodes_(std::move(nodes)), weights_(std::move(weights)), kind_(kind) {
        detail::require(nodes_.size() == weights_.size() && nodes_.size() >= 2, ErrorKind::InvariantViolation,
                        "quadrature rule needs matching node/weight lists of length >= 2");
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            detail::require(std::isfinite(nodes_[i]) && std::isfinite(weights_[i]) && weights_[i] > 0.0,
                            ErrorKind::InvariantViolation, "quadrature weights must be finite and positive");
            if (i > 0)
                detail::require(nodes_[i] > nodes_[i - 1], ErrorKind::InvariantViolation,
                                "quadrature nodes must be strictly increasing");
        }
    }

    [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
    [[nodiscard]] QuadratureKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    QuadratureKind kind_;
};

/**
 * A point the integrand is sharply structured around (a nearby pole, a peak).
 * Composite rules grade their panels geometrically toward `center`, with the
 * innermost panel of half-width `width`.
 */
struct Feature {
    double center = 0.0;
    double width = 1.0;
};

/// [lower, upper] with optional panel grading and a cap on panel length (0 = none).
struct FiniteInterval {
    double lower = 0.0;
    double upper = 1.0;
    std::vector<Feature> features{};
    double max_panel = 0.0;
};

/**
 * [lower, inf) through E = lower + scale (1+u)/(1-u), u in (-1, 1). The
 * Jacobian 2 scale/(1-u)^2 is folded into the weights.
 */
struct SemiInfinite {
    double lower = 0.0;
    double scale = 1.0;
    std::vector<Feature> features{};
};

/// Parameter interval [s0, s1] of a contour z(s); the caller multiplies by z'(s).
struct ContourParameter {
    double s0 = 0.0;
    double s1 = 1.0;
};

inline constexpr int kDefaultQuadOrder = 48;
inline constexpr double kQuadSelfConvergenceTol = 1e-8;
inline constexpr double kRootTol = 1e-10;

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre_reference(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // one more derivative evaluation at the converged node
        double p0 = 1.0;
        double p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        x[lo] = -z;
        x[hi] = z;
        w[lo] = w[hi] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

/// Breakpoints in (a, b) that grade geometrically (ratio 2) toward each feature.
inline std::vector<double> graded_breakpoints(double a, double b, const std::vector<Feature>& features) {
    std::vector<double> pts{a, b};
    for (const auto& f : features) {
        if (!(f.width > 0.0) || !std::isfinite(f.center) || !std::isfinite(f.width)) continue;
        const double c = std::clamp(f.center, a, b);
        if (c > a && c < b) pts.push_back(c);
        for (double h = f.width; h < (b - a); h *= 2.0) {
            if (c - h > a) pts.push_back(c - h);
            if (c + h < b) pts.push_back(c + h);
        }
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    const double min_gap = 1e-14 * (b - a);
    for (double p : pts) {
        if (out.empty() || p - out.back() > min_gap) out.push_back(p);
    }
    if (out.back() != b) out.back() = b;
    return out;
}

/// Splits every panel longer than max_panel into equal pieces.
inline std::vector<double> cap_panels(const std::vector<double>& breaks, double max_panel) {
    if (!(max_panel > 0.0)) return breaks;
    std::vector<double> out{breaks.front()};
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double len = breaks[p + 1] - breaks[p];
        const auto pieces = static_cast<long>(std::ceil(len / max_panel));
        for (long j = 1; j < pieces; ++j) out.push_back(breaks[p] + len * static_cast<double>(j) / pieces);
        out.push_back(breaks[p + 1]);
    }
    return out;
}

inline void append_panels(const std::vector<double>& breaks, int order, std::vector<double>& nodes,
                          std::vector<double>& weights) {
    std::vector<double> xr;
    std::vector<double> wr;
    gauss_legendre_reference(order, xr, wr);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
        const double half = 0.5 * (breaks[p + 1] - breaks[p]);
        for (std::size_t i = 0; i < xr.size(); ++i) {
            nodes.push_back(mid + half * xr[i]);
            weights.push_back(half * wr[i]);
        }
    }
}

inline void require_order(int order) {
    require(order >= 2, ErrorKind::InvalidModel, "quadrature order must be >= 2", {{"order", std::to_string(order)}});
}

}  // namespace detail

/**
 * Gauss-Legendre rule on [lower, upper]. Without features this is a single
 * panel exact for polynomials of degree 2*order - 1; features switch to a
 * composite rule with `order` nodes per panel.
 */
[[nodiscard]] inline QuadratureRule build_quadrature(const FiniteInterval& interval, int order) {
    detail::require_order(order);
    detail::require(std::isfinite(interval.lower) && std::isfinite(interval.upper), ErrorKind::InvalidModel,
                    "finite-interval endpoints must be finite");
    detail::require(interval.upper > interval.lower, ErrorKind::InvalidModel,
                    "quadrature interval is degenerate or reversed",
                    {{"lower", detail::num(interval.lower)}, {"upper", detail::num(interval.upper)}});
    std::vector<double> nodes;
    std::vector<double> weights;
    const auto breaks = detail::cap_panels(
        detail::graded_breakpoints(interval.lower, interval.upper, interval.features), interval.max_panel);
    detail::append_panels(breaks, order, nodes, weights);
    return {std::move(nodes), std::move(weights), QuadratureKind::FiniteInterval};
}

/**
 * Rule on [lower, inf) through the rational map E = lower + L (1+u)/(1-u).
 * Features are graded in the u variable, which keeps narrow peaks resolved
 * however far they sit from `lower`.
 */
[[nodiscard]] inline QuadratureRule build_quadrature(const SemiInfinite& domain, int order) {
    detail::require_order(order);
    detail::require(std::isfinite(domain.lower), ErrorKind::InvalidModel, "semi-infinite lower end must be finite");
    detail::require(std::isfinite(domain.scale) && domain.scale > 0.0, ErrorKind::InvalidModel,
                    "semi-infinite map scale must be positive", {{"scale", detail::num(domain.scale)}});
    const double L = domain.scale;
    std::vector<Feature> ufeatures;
    for (const auto& f : domain.features) {
        const double x = std::max(f.center - domain.lower, 0.0);
        const double u = (x - L) / (x + L);
        const double dudx = 2.0 * L / ((x + L) * (x + L));
        ufeatures.push_back({u, std::max(f.width * dudx, 1e-15)});
    }
    std::vector<double> unodes;
    std::vector<double> uweights;
    detail::append_panels(detail::graded_breakpoints(-1.0, 1.0, ufeatures), order, unodes, uweights);
    std::vector<double> nodes;
    std::vector<double> weights;
    nodes.reserve(unodes.size());
    weights.reserve(unodes.size());
    for (std::size_t i = 0; i < unodes.size(); ++i) {
        const double u = unodes[i];
        const double e = domain.lower + L * (1.0 + u) / (1.0 - u);
        const double jac = 2.0 * L / ((1.0 - u) * (1.0 - u));
        if (!std::isfinite(e) || !std::isfinite(jac)) continue;
        if (!nodes.empty() && !(e > nodes.back())) continue;
        nodes.push_back(e);
        weights.push_back(uweights[i] * jac);
    }
    return {std::move(nodes), std::move(weights), QuadratureKind::SemiInfiniteMapped};
}

/// Gauss-Legendre rule in the parameter s of a contour z(s).
[[nodiscard]] inline QuadratureRule build_quadrature(const ContourParameter& param, int order) {
    detail::require_order(order);
    detail::require(std::isfinite(param.s0) && std::isfinite(param.s1) && param.s1 > param.s0,
                    ErrorKind::InvalidModel, "contour parameter interval is degenerate or reversed");
    std::vector<double> nodes;
    std::vector<double> weights;
    detail::append_panels({param.s0, param.s1}, order, nodes, weights);
    return {std::move(nodes), std::move(weights), QuadratureKind::ContourParameterized};
}

/// sum_i w_i f(x_i). Throws InvariantViolation when f is non-finite at a node.
template <typename F>
[[nodiscard]] Complex integrate(const QuadratureRule& rule, F&& f) {
    Complex acc{0.0, 0.0};
    const auto& x = rule.nodes();
    const auto& w = rule.weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Complex v = Complex(f(x[i]));
        if (!detail::is_finite(v))
            throw ToolkitError(ErrorKind::InvariantViolation, "integrand is not finite at a quadrature node",
                               {{"node", detail::num(x[i])}});
        acc += w[i] * v;
    }
    return acc;
}

/**
 * Integrates with rule(order) and rule(2*order) and returns the finer value.
 * Throws NonConvergence when the two differ by more than tol (relative to
 * max(|fine|, abs_floor)).
 */
template <typename MakeRule, typename F>
[[nodiscard]] Complex integrate_self_converged(MakeRule&& make_rule, int order, F&& f,
                                               double tol = kQuadSelfConvergenceTol, double abs_floor = 1.0,
                                               const char* what = "quadrature") {
    const Complex coarse = integrate(make_rule(order), f);
    const Complex fine = integrate(make_rule(2 * order), f);
    const double diff = std::abs(fine - coarse);
    if (diff > tol * std::max(std::abs(fine), abs_floor)) {
        throw ToolkitError(ErrorKind::NonConvergence, std::string(what) + " failed the order-doubling check",
                           {{"order", std::to_string(order)}, {"difference", detail::num(diff)}});
    }
    return fine;
}

}  // namespace gamowkit
