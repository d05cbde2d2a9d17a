// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <gamowkit/scattering.hpp>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace gk = gamowkit;
using gk::Complex;

namespace {

template <typename F>
void expect_error(F&& f, gk::ErrorKind kind) {
    try {
        f();
        FAIL() << "expected ToolkitError(" << gk::to_string(kind) << ")";
    } catch (const gk::ToolkitError& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

gk::SMatrixModel single_pole(double er, double half_width) {
    return gk::SMatrixModel::rational({gk::ComplexEnergy(er, -half_width)});
}

gk::SMatrixModel three_poles() {
    return gk::SMatrixModel::rational(
        {gk::ComplexEnergy(1.5, -0.2), gk::ComplexEnergy(2.0, -0.05), gk::ComplexEnergy(4.0, -0.3)});
}

std::vector<double> test_energies() {
    std::vector<double> es;
    for (double e = 0.01; e < 40.0; e *= 1.37) es.push_back(e);
    return es;
}

}  // namespace

// ---------------------------------------------------------------------------
// s_matrix
// ---------------------------------------------------------------------------

TEST(SMatrix, RationalDirectSubstitution) {
    const auto m = single_pole(2.0, 0.05);
    const gk::ComplexEnergy z(3.0, -0.05);
    const Complex s = gk::s_matrix(m, z, gk::Sheet::Second);
    const Complex expected = (z.value() - Complex(2.0, 0.05)) / (z.value() - Complex(2.0, -0.05));
    EXPECT_NEAR(std::abs(s - expected), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s - Complex(1.0, -0.1)), 0.0, 1e-15);
}

TEST(SMatrix, UnitarityOnRealAxis) {
    const auto models = {single_pole(2.0, 0.05), three_poles(), gk::SMatrixModel::delta_shell(20.0, 1.0),
                         gk::SMatrixModel::delta_shell(0.5, 2.0)};
    for (const auto& m : models)
        for (double e : test_energies()) {
            EXPECT_NEAR(std::abs(gk::s_matrix(m, gk::ComplexEnergy(e, 0.0), gk::Sheet::First)), 1.0, 1e-12);
        }
}

TEST(SMatrix, SecondSheetIsReciprocalOnRealAxis) {
    for (const auto& m : {three_poles(), gk::SMatrixModel::delta_shell(20.0, 1.0)})
        for (double e : test_energies()) {
            const gk::ComplexEnergy z(e, 0.0);
            const Complex s1 = gk::s_matrix(m, z, gk::Sheet::First);
            const Complex s2 = gk::s_matrix(m, z, gk::Sheet::Second);
            EXPECT_NEAR(std::abs(s1 * s2 - 1.0), 0.0, 1e-12);
        }
}

TEST(SMatrix, SecondSheetContinuesFromUpperLip) {
    // approaching the positive axis from below on sheet II meets the physical value from sheet I
    for (const auto& m : {three_poles(), gk::SMatrixModel::delta_shell(20.0, 1.0)})
        for (double e : {0.3, 1.9, 7.0}) {
            const Complex below = gk::s_matrix(m, gk::ComplexEnergy(e, -1e-9), gk::Sheet::Second);
            const Complex above = gk::s_matrix(m, gk::ComplexEnergy(e, 1e-9), gk::Sheet::First);
            const Complex axis = gk::s_matrix(m, gk::ComplexEnergy(e, 0.0), gk::Sheet::First);
            EXPECT_NEAR(std::abs(below - axis), 0.0, 1e-6) << e;
            EXPECT_NEAR(std::abs(above - axis), 0.0, 1e-6) << e;
        }
}

TEST(SMatrix, FreeLimit) {
    const auto m = gk::SMatrixModel::delta_shell(1e-12, 1.0);
    for (double e : test_energies())
        EXPECT_NEAR(std::abs(gk::s_matrix(m, gk::ComplexEnergy(e, 0.0), gk::Sheet::First) - 1.0), 0.0, 1e-10);
}

TEST(SMatrix, ErrorsAtPoles) {
    const auto m = single_pole(2.0, 0.05);
    expect_error([&] { (void)gk::s_matrix(m, gk::ComplexEnergy(2.0, -0.05), gk::Sheet::Second); },
                 gk::ErrorKind::InvalidModel);
    expect_error([&] { (void)gk::s_matrix(m, gk::ComplexEnergy(2.0, 0.05), gk::Sheet::Second); },
                 gk::ErrorKind::InvalidModel);
    EXPECT_NO_THROW((void)gk::s_matrix(m, gk::ComplexEnergy(2.0, -0.05), gk::Sheet::First));
}

TEST(SMatrix, ModelValidation) {
    expect_error([] { (void)gk::SMatrixModel::rational({gk::ComplexEnergy(2.0, 0.1)}); },
                 gk::ErrorKind::InvalidModel);
    expect_error([] { (void)gk::SMatrixModel::rational({gk::ComplexEnergy(2.0, 0.0)}); },
                 gk::ErrorKind::InvalidModel);
    expect_error([] { (void)gk::SMatrixModel::delta_shell(-1.0, 1.0); }, gk::ErrorKind::InvalidModel);
    expect_error([] { (void)gk::SMatrixModel::delta_shell(1.0, 0.0); }, gk::ErrorKind::InvalidModel);
}

TEST(SMatrix, JostDerivativeMatchesFiniteDifference) {
    const auto m = gk::SMatrixModel::delta_shell(20.0, 1.0);
    for (Complex k : {Complex(3.0, -0.02), Complex(1e-6, 0.0), Complex(-2.0, -0.5), Complex(0.7, 0.3)}) {
        const double h = 1e-6;
        const Complex fd = (m.jost(k + h) - m.jost(k - h)) / (2.0 * h);
        EXPECT_NEAR(std::abs(m.jost_derivative(k) - fd), 0.0, 1e-6 * (1.0 + std::abs(fd))) << k;
    }
}

TEST(SMatrix, PoleFunctionDerivative) {
    for (const auto& m : {three_poles(), gk::SMatrixModel::delta_shell(20.0, 1.0)})
        for (Complex e : {Complex(2.5, -0.3), Complex(1.0, 0.4), Complex(9.0, -0.1)}) {
            const double h = 1e-6;
            const Complex fd = (gk::pole_function(m, e + h)[0] - gk::pole_function(m, e - h)[0]) / (2.0 * h);
            const Complex d = gk::pole_function(m, e)[1];
            EXPECT_NEAR(std::abs(d - fd), 0.0, 1e-6 * (1.0 + std::abs(fd))) << e;
        }
}

// ---------------------------------------------------------------------------
// phase shift and cross section
// ---------------------------------------------------------------------------

TEST(PhaseShift, ReproducesSMatrix) {
    for (const auto& m : {three_poles(), gk::SMatrixModel::delta_shell(20.0, 1.0)})
        for (double e : {0.05, 1.0, 2.0, 3.3, 9.0, 20.0}) {
            const double d = gk::phase_shift(m, e);
            const Complex s = gk::s_matrix(m, gk::ComplexEnergy(e, 0.0), gk::Sheet::First);
            EXPECT_NEAR(std::abs(std::exp(2.0 * gk::kI * d) - s), 0.0, 1e-10) << e;
        }
}

TEST(PhaseShift, FreeLimitIsZero) {
    const auto m = gk::SMatrixModel::delta_shell(1e-12, 1.0);
    for (double e : {0.1, 1.0, 10.0}) EXPECT_NEAR(gk::phase_shift(m, e), 0.0, 1e-10);
}

TEST(PhaseShift, BreitWignerPhaseForSinglePole) {
    const double er = 2.0;
    const double gamma = 0.1;
    const auto m = single_pole(er, 0.5 * gamma);
    for (double e : {0.2, 1.0, 1.9, 1.95, 2.0, 2.05, 2.3, 5.0}) {
        const double bw = std::atan2(0.5 * gamma, er - e);
        EXPECT_NEAR(gk::phase_shift(m, e), bw, 1e-10) << e;
    }
    EXPECT_NEAR(gk::phase_shift(m, er), 0.5 * gk::kPi, 1e-12);
}

TEST(PhaseShift, ContinuousOnFineGrid) {
    for (const auto& m : {three_poles(), gk::SMatrixModel::delta_shell(20.0, 1.0)}) {
        double prev = gk::phase_shift(m, 0.01);
        for (double e = 0.02; e < 12.0; e += 0.01) {
            const double d = gk::phase_shift(m, e);
            EXPECT_LT(std::abs(d - prev), 0.5 * gk::kPi) << e;
            prev = d;
        }
    }
}

TEST(PhaseShift, Errors) {
    const auto m = three_poles();
    expect_error([&] { (void)gk::phase_shift(m, 0.0); }, gk::ErrorKind::InvalidModel);
    expect_error([&] { (void)gk::phase_shift(m, -1.0); }, gk::ErrorKind::InvalidModel);
}

TEST(CrossSection, UnitarityBound) {
    const double er = 2.0;
    const auto m = single_pole(er, 0.05);
    EXPECT_NEAR(gk::partial_cross_section(m, er), 4.0 * gk::kPi / er, 1e-12);
    for (double e : test_energies()) {
        EXPECT_GE(gk::partial_cross_section(m, e), 0.0);
        EXPECT_LE(gk::partial_cross_section(m, e), 4.0 * gk::kPi / e * (1.0 + 1e-14));
        const double d = gk::phase_shift(m, e);
        EXPECT_NEAR(gk::partial_cross_section(m, e), 4.0 * gk::kPi / e * std::sin(d) * std::sin(d),
                    1e-10 * 4.0 * gk::kPi / e);
    }
    EXPECT_NEAR(gk::partial_cross_section(gk::SMatrixModel::delta_shell(1e-14, 1.0), 3.0), 0.0, 1e-20);
}

TEST(CrossSection, FwhmMatchesPoleWidth) {
    double prev = 1.0;
    const std::array<double, 3> ratios{1.0 / 50, 1.0 / 100, 1.0 / 200};
    const std::array<double, 3> limits{0.08, 0.04, 0.02};
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const double er = 5.0;
        const double gamma = ratios[i] * er;
        const auto m = single_pole(er, 0.5 * gamma);
        const auto poles = gk::find_poles(m, gk::PoleSearchRegion::lower(4.0, 6.0, 1.0));
        ASSERT_EQ(poles.size(), 1u);
        const double width = poles[0].parameters().gamma();
        const double fwhm = gk::lineshape_fwhm(m, er - 10 * gamma, er + 10 * gamma);
        const double err = std::abs(fwhm - width) / width;
        EXPECT_LE(err, limits[i]);
        EXPECT_LT(err, prev);
        prev = err;
    }
}

TEST(CrossSection, NarrowLineApproachesBreitWignerShape) {
    double prev = 1.0;
    for (double ratio : {1.0 / 50, 1.0 / 100, 1.0 / 200}) {
        const double er = 5.0;
        const double gamma = ratio * er;
        const auto m = single_pole(er, 0.5 * gamma);
        const auto bw = [&](double e) { return (gamma / (2 * gk::kPi)) / ((e - er) * (e - er) + 0.25 * gamma * gamma); };
        const double c = gk::partial_cross_section(m, er) / bw(er);
        double dev = 0.0;
        for (double x = -5.0; x <= 5.0; x += 0.25) {
            const double e = er + x * gamma;
            dev = std::max(dev, std::abs(gk::partial_cross_section(m, e) / (c * bw(e)) - 1.0));
        }
        EXPECT_LT(dev, prev);
        prev = dev;
    }
    EXPECT_LT(prev, 0.03);
}

// ---------------------------------------------------------------------------
// scattering states
// ---------------------------------------------------------------------------

TEST(ScatteringState, RegularAtOrigin) {
    const auto m = gk::SMatrixModel::delta_shell(20.0, 1.0);
    EXPECT_EQ(gk::scattering_state(m, 4.0, 0.0), Complex(0.0, 0.0));
}

TEST(ScatteringState, FreeLimitIsSine) {
    const auto m = gk::SMatrixModel::delta_shell(1e-14, 1.0);
    const double k = 1.7;
    for (double r = 0.0; r < 10.0; r += 0.37)
        EXPECT_NEAR(std::abs(gk::scattering_state(m, k * k, r) - std::sin(k * r)), 0.0, 1e-12);
}

TEST(ScatteringState, MatchingConditionsAtShell) {
    const double g = 20.0;
    const double a = 1.0;
    const auto m = gk::SMatrixModel::delta_shell(g, a);
    for (double e : {0.5, 4.0, 8.97, 30.0}) {
        const double h = 1e-6;
        const Complex in = gk::scattering_state(m, e, a - h);
        const Complex out = gk::scattering_state(m, e, a + h);
        const Complex at = gk::scattering_state(m, e, a);
        EXPECT_NEAR(std::abs(in - out), 0.0, 1e-4 * (1.0 + std::abs(at)));
        const Complex d_in = (gk::scattering_state(m, e, a - h) - gk::scattering_state(m, e, a - 2 * h)) / h;
        const Complex d_out = (gk::scattering_state(m, e, a + 2 * h) - gk::scattering_state(m, e, a + h)) / h;
        EXPECT_NEAR(std::abs((d_out - d_in) - g * at), 0.0, 1e-3 * (1.0 + std::abs(g * at))) << e;
    }
}

TEST(ScatteringState, AsymptoticFitRecoversSMatrix) {
    for (double g : {0.5, 3.0, 20.0})
        for (double e : {0.3, 2.0, 8.9742, 17.0}) {
            const auto m = gk::SMatrixModel::delta_shell(g, 1.0);
            const double k = std::sqrt(e);
            // psi = A e^{-ikr} + B e^{ikr} at two radii beyond the shell
            const double r1 = 25.0;
            const double r2 = 25.0 + 0.25 * gk::kPi / k;
            const Complex p1 = gk::scattering_state(m, e, r1);
            const Complex p2 = gk::scattering_state(m, e, r2);
            const Complex m11 = std::exp(-gk::kI * k * r1), m12 = std::exp(gk::kI * k * r1);
            const Complex m21 = std::exp(-gk::kI * k * r2), m22 = std::exp(gk::kI * k * r2);
            const Complex det = m11 * m22 - m12 * m21;
            const Complex A = (p1 * m22 - m12 * p2) / det;
            const Complex B = (m11 * p2 - p1 * m21) / det;
            const Complex s_fit = -B / A;
            EXPECT_NEAR(std::abs(s_fit - gk::s_matrix(m, gk::ComplexEnergy(e, 0.0), gk::Sheet::First)), 0.0, 1e-10)
                << "g=" << g << " E=" << e;
        }
}

TEST(ScatteringState, Errors) {
    const auto m = gk::SMatrixModel::delta_shell(2.0, 1.0);
    expect_error([&] { (void)gk::scattering_state(m, 0.0, 1.0); }, gk::ErrorKind::InvalidModel);
    expect_error([&] { (void)gk::scattering_state(m, 1.0, -1.0); }, gk::ErrorKind::InvalidModel);
    expect_error([] { (void)gk::scattering_state(three_poles(), 1.0, 1.0); }, gk::ErrorKind::InvalidModel);
}

// ---------------------------------------------------------------------------
// pole search
// ---------------------------------------------------------------------------

TEST(Poles, ConstructedPoleRecovered) {
    const auto m = single_pole(2.0, 0.05);
    const auto poles = gk::find_poles(m, gk::PoleSearchRegion(1.0, 3.0, -0.5, -1e-4));
    ASSERT_EQ(poles.size(), 1u);
    EXPECT_NEAR(poles[0].z_r.re(), 2.0, 1e-10);
    EXPECT_NEAR(poles[0].z_r.im(), -0.05, 1e-10);
    const auto p = poles[0].parameters();
    EXPECT_EQ(p.gamma(), -2.0 * poles[0].z_r.im());
    EXPECT_EQ(p.e_r(), poles[0].z_r.re());
    // Res_{z} (E - conj z)/(E - z) = z - conj z
    EXPECT_NEAR(std::abs(poles[0].residue - Complex(0.0, -0.1)), 0.0, 1e-10);
}

TEST(Poles, EmptyRegion) {
    const auto m = single_pole(2.0, 0.05);
    EXPECT_TRUE(gk::find_poles(m, gk::PoleSearchRegion(5.0, 6.0, -0.5, -1e-4)).empty());
    EXPECT_EQ(gk::count_poles(m, gk::PoleSearchRegion(5.0, 6.0, -0.5, -1e-4)), 0);
}

TEST(Poles, DeltaShellLowestResonanceMatchesOracle) {
    const auto m = gk::SMatrixModel::delta_shell(20.0, 1.0);
    const auto poles = gk::find_poles(m, gk::PoleSearchRegion::lower(8.0, 10.0, 1.0));
    ASSERT_EQ(poles.size(), 1u);
    EXPECT_NEAR(poles[0].z_r.re(), gk::fixtures::kDeltaShellPoleERe, 1e-8);
    EXPECT_NEAR(poles[0].z_r.im(), gk::fixtures::kDeltaShellPoleEIm, 1e-8);
    const Complex k = gk::momentum(poles[0].z_r.value(), gk::Sheet::Second);
    EXPECT_NEAR(k.real(), gk::fixtures::kDeltaShellPoleKRe, 1e-8);
    EXPECT_NEAR(k.imag(), gk::fixtures::kDeltaShellPoleKIm, 1e-8);
}

TEST(Poles, ResidueMatchesAnalyticForm) {
    // Res_{z_j} R = (z_j - conj z_j) prod_{i != j} (z_j - conj z_i)/(z_j - z_i)
    const auto m = three_poles();
    const auto poles = gk::find_poles(m, gk::PoleSearchRegion::lower(0.5, 5.0, 1.0));
    ASSERT_EQ(poles.size(), 3u);
    for (const auto& p : poles) {
        const Complex zj = p.z_r.value();
        Complex res = zj - std::conj(zj);
        for (const auto& q : m.rational_poles())
            if (std::abs(q.value() - zj) > 1e-6) res *= (zj - std::conj(q.value())) / (zj - q.value());
        EXPECT_NEAR(std::abs(p.residue - res), 0.0, 1e-9 * std::abs(res));
    }
}

TEST(Poles, WindingNumberEqualsRefinedCount) {
    const auto rational = three_poles();
    const auto shell = gk::SMatrixModel::delta_shell(20.0, 1.0);
    const std::vector<std::pair<gk::SMatrixModel, gk::PoleSearchRegion>> corpus{
        {rational, gk::PoleSearchRegion::lower(0.5, 5.0, 1.0)},
        {rational, gk::PoleSearchRegion::lower(1.0, 1.8, 1.0)},
        {rational, gk::PoleSearchRegion::lower(1.8, 4.5, 0.2)},
        {rational, gk::PoleSearchRegion::lower(0.5, 5.0, 1.0).mirrored()},
        {shell, gk::PoleSearchRegion::lower(1.0, 40.0, 2.0)},
        {shell, gk::PoleSearchRegion::lower(8.0, 10.0, 1.0)},
        {shell, gk::PoleSearchRegion::lower(8.0, 10.0, 1.0).mirrored()},
    };
    for (const auto& [m, region] : corpus) {
        const int n = gk::count_poles(m, region);
        const auto poles = gk::find_poles(m, region);
        EXPECT_EQ(static_cast<std::size_t>(n), poles.size());
        for (const auto& p : poles) EXPECT_TRUE(region.contains(p.z_r.value()));
    }
}

TEST(Poles, ConjugatePairSymmetry) {
    for (const auto& [m, region] :
         std::vector<std::pair<gk::SMatrixModel, gk::PoleSearchRegion>>{
             {three_poles(), gk::PoleSearchRegion::lower(0.5, 5.0, 1.0)},
             {gk::SMatrixModel::delta_shell(20.0, 1.0), gk::PoleSearchRegion::lower(1.0, 40.0, 2.0)}}) {
        const auto lower = gk::find_poles(m, region);
        const auto upper = gk::find_poles(m, region.mirrored());
        ASSERT_EQ(lower.size(), upper.size());
        ASSERT_FALSE(lower.empty());
        for (std::size_t i = 0; i < lower.size(); ++i) {
            EXPECT_NEAR(std::abs(upper[i].z_r.value() - std::conj(lower[i].z_r.value())), 0.0, 1e-10);
            EXPECT_FALSE(upper[i].decaying());
            expect_error([&] { (void)upper[i].parameters(); }, gk::ErrorKind::InvalidModel);
        }
    }
}

TEST(Poles, InvariantUnderSubdivision) {
    const auto m = gk::SMatrixModel::delta_shell(20.0, 1.0);
    const auto whole = gk::find_poles(m, gk::PoleSearchRegion::lower(1.0, 40.0, 2.0));
    auto left = gk::find_poles(m, gk::PoleSearchRegion::lower(1.0, 20.0, 2.0));
    const auto right = gk::find_poles(m, gk::PoleSearchRegion::lower(20.0, 40.0, 2.0));
    left.insert(left.end(), right.begin(), right.end());
    ASSERT_EQ(whole.size(), left.size());
    for (std::size_t i = 0; i < whole.size(); ++i)
        EXPECT_NEAR(std::abs(whole[i].z_r.value() - left[i].z_r.value()), 0.0, 1e-10);
}

TEST(Poles, BoundaryPoleRejected) {
    const auto m = single_pole(2.0, 0.05);
    expect_error([&] { (void)gk::find_poles(m, gk::PoleSearchRegion(1.0, 2.0, -0.5, -1e-4)); },
                 gk::ErrorKind::InvalidModel);
}

TEST(Poles, RegionValidation) {
    expect_error([] { gk::PoleSearchRegion(3.0, 1.0, -0.5, -0.1); }, gk::ErrorKind::InvalidModel);
    expect_error([] { gk::PoleSearchRegion(1.0, 3.0, -0.5, 0.1); }, gk::ErrorKind::InvalidModel);
    expect_error([] { (void)gk::PoleSearchRegion::lower(1.0, 3.0, -1.0); }, gk::ErrorKind::InvalidModel);
    expect_error([] { (void)gk::PoleSearchRegion::lower(1.0, 3.0, 1.0, 0.0); }, gk::ErrorKind::InvalidModel);
}
