// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gamowkit/core.hpp>

namespace gamowkit {

/**
 * Resonance energy E_R and width Gamma of a decaying state, i.e. the
 * second-sheet pole z_R = E_R - i Gamma/2. Both must be positive.
 */
class ResonanceParameters {
public:
    ResonanceParameters(double e_r, double gamma) : e_r_(e_r), gamma_(gamma) {
        detail::require(std::isfinite(gamma) && gamma > 0.0, ErrorKind::InvalidModel,
                        "resonance width gamma must be positive", {{"gamma", detail::num(gamma)}});
        detail::require(std::isfinite(e_r) && e_r > 0.0, ErrorKind::InvalidModel,
                        "resonance energy e_r must lie above the threshold at 0", {{"e_r", detail::num(e_r)}});
    }

    /// Reads E_R = Re z, Gamma = -2 Im z off a decaying pole.
    static ResonanceParameters from_pole(ComplexEnergy z) { return {z.re(), -2.0 * z.im()}; }

    [[nodiscard]] double e_r() const noexcept { return e_r_; }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] Complex pole() const noexcept { return {e_r_, -0.5 * gamma_}; }

    friend bool operator==(const ResonanceParameters&, const ResonanceParameters&) = default;

private:
    double e_r_;
    double gamma_;
};

}  // namespace gamowkit
