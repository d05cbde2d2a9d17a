// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Reference values produced by scripts/derive_fixtures.py (mpmath, 40 digits).
// Regenerate with: python3 scripts/derive_fixtures.py

#pragma once

namespace gamowkit::fixtures {

// (Gamma/2pi)/((E-E_R)^2+(Gamma/2)^2) over [0, inf), E_R = 10, Gamma = 0.1
inline constexpr double kLorentzHalfLine = 0.99840846383179403084;

// delta shell g = 20, a = 1: lowest zero of f(k) with Im k < 0
inline constexpr double kDeltaShellPoleKRe = 2.9957751761809765696;
inline constexpr double kDeltaShellPoleKIm = -0.020542952649143441063;
inline constexpr double kDeltaShellPoleERe = 8.9742468933186162555;
inline constexpr double kDeltaShellPoleEIm = -0.123084135183530303;

// truncated Breit-Wigner, E_R/Gamma = 40, Gamma = 1
// first Gamma t with ratio > 10 is 26.58; the ratio oscillates around there,
// so the asserted point sits further out.
inline constexpr double kKhalfinFirstCrossing = 26.58;
inline constexpr double kKhalfinTMax = 30.0;
inline constexpr double kKhalfinRatioAtTMax = 117.433492527;
inline constexpr double kKhalfinCutRe = -5.54650845658777e-9;
inline constexpr double kKhalfinCutIm = -3.32843891934561e-6;

// |A(t)|/e^{-Gamma t/2}, truncated Breit-Wigner, Gamma = 1, at t = 0.1, 0.5, 1, 2
inline constexpr double kTruncatedBwTimes[4] = {0.1, 0.5, 1.0, 2.0};
inline constexpr double kTruncatedBwModulusRatio20[4] = {1.01094439551, 1.00764510418, 1.00858844804, 1.00844239923};
inline constexpr double kTruncatedBwModulusRatio40[4] = {1.00359181505, 1.0042151525, 1.00412222764, 1.00386017365};

// (exact - fermi)/fermi for constant v on [0, inf) at Gamma/E_R = 1/10, 1/100, 1/1000
inline constexpr double kBornRelDiff[3] = {-0.0159022512562, -0.00159153616821, -0.000159154929829};

}  // namespace gamowkit::fixtures
