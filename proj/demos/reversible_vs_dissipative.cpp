// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Purity of a qubit under unitary evolution and under dephasing.

#include <gamowkit/openquantum.hpp>

#include <cstdio>

int main() {
    namespace gk = gamowkit;
    gk::CVector psi(2);
    psi << 1.0, gk::Complex(0.0, 1.0);
    const auto rho0 = gk::DensityMatrix::pure(psi);
    const auto dephasing = gk::LiouvillianGenerator::pure_dephasing(0.4, 1.0);

    std::printf("%6s %12s %12s\n", "t", "unitary", "dephasing");
    for (double t = 0.0; t <= 10.0; t += 2.0) {
        const double u = gk::von_neumann_evolve(dephasing.hamiltonian(), rho0, t).purity();
        const double d = gk::lindblad_evolve(dephasing, rho0, t).purity();
        std::printf("%6.1f %12.8f %12.8f\n", t, u, d);
    }
    // backwards in time is fine for the group, not for the semigroup
    std::printf("unitary at t = -3: %.8f\n", gk::von_neumann_evolve(dephasing.hamiltonian(), rho0, -3.0).purity());
    try {
        (void)gk::lindblad_evolve(dephasing, rho0, -3.0);
    } catch (const gk::ToolkitError& e) {
        std::printf("dissipative at t = -3: %s\n", e.what());
    }
}
