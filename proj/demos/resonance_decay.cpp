// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Finds the lowest delta-shell resonance, then compares the exact
// semibounded survival probability with the Gamow exponential.

#include <gamowkit/gamowkit.hpp>

#include <cstdio>

int main() {
    namespace gk = gamowkit;
    const auto shell = gk::SMatrixModel::delta_shell(20.0, 1.0);
    const auto poles = gk::find_poles(shell, gk::PoleSearchRegion::lower(1.0, 20.0, 2.0));
    for (const auto& p : poles)
        std::printf("pole E = %.10f %+.10fi  (E_R = %.6f, Gamma = %.6f)\n", p.z_r.re(), p.z_r.im(),
                    p.parameters().e_r(), p.parameters().gamma());

    const auto res = poles.front().parameters();
    const auto phi = gk::EnergyWavefunction::breit_wigner(res);
    std::printf("\n%8s %14s %14s %10s\n", "Gamma t", "P(t)", "exp(-Gamma t)", "ratio");
    for (double gt : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        const double t = gt / res.gamma();
        const double p = gk::survival_probability(phi, t, gk::Support::Semibounded);
        std::printf("%8.1f %14.6e %14.6e %10.5f\n", gt, p, std::exp(-gt), p / std::exp(-gt));
    }
}
