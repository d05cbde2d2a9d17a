#!/usr/bin/env python3
# Copyright 2026 The gamowkit Authors
# SPDX-License-Identifier: Apache-2.0
"""Derives the frozen numeric fixtures used by the C++ test suites.

Every value here comes from a route that shares no code with the library:
arbitrary-precision root finding on the Jost function, closed-form
Lorentzian integrals and the long-time endpoint asymptotics of the
truncated Breit-Wigner survival amplitude. Run it and paste the output
into tests/fixtures.hpp when a fixture definition changes.
"""
import mpmath as mp

mp.mp.dps = 40


def delta_shell_jost(k, g, a):
    return 1 + g / (2j * k) * (mp.exp(2j * k * a) - 1)


def delta_shell_lowest_resonance(g, a):
    # Narrow resonances sit close to ka = n*pi; start from n = 1.
    k = mp.findroot(lambda k: delta_shell_jost(k, g, a), mp.mpc(mp.pi / a * 0.95, -0.01))
    return k, k * k


def truncated_bw_cut_asymptotic(e_r, gamma, t, terms=8):
    """Endpoint (E = 0) integration-by-parts series of the cut contribution.

    int_0^inf g(E) e^{-iEt} dE  ~  sum_k g^(k)(0) / (i t)^(k+1)
    """
    norm = (mp.pi / 2 + mp.atan(2 * e_r / gamma)) / mp.pi
    dens = lambda e: (gamma / (2 * mp.pi)) / ((e - e_r) ** 2 + (gamma / 2) ** 2) / norm
    total = mp.mpc(0)
    for k in range(terms):
        total += mp.diff(dens, 0, k) / (1j * t) ** (k + 1)
    return total, norm


def khalfin_ratio_asymptotic(e_r, gamma, t):
    cut, norm = truncated_bw_cut_asymptotic(e_r, gamma, t)
    z = mp.mpc(e_r, -gamma / 2)
    pole = mp.exp(-1j * z * t) / norm
    amp = pole + cut
    return abs(amp) ** 2 / mp.exp(-gamma * t)


def khalfin_crossover(ratio_er_gamma, threshold=10):
    gamma = mp.mpf(1)
    e_r = ratio_er_gamma * gamma
    t = mp.mpf(10)
    step = mp.mpf('0.01')
    while khalfin_ratio_asymptotic(e_r, gamma, t) <= threshold:
        t += step
    return t


def truncated_bw_modulus_ratio(e_r, gamma, t):
    """|A(t)| / e^{-Gamma t/2} for the truncated Breit-Wigner.

    Exact split of int_0^inf into the pole residue and the non-oscillatory
    ray integral along the negative imaginary axis.
    """
    norm = (mp.pi / 2 + mp.atan(2 * e_r / gamma)) / mp.pi
    dens = lambda e: (gamma / (2 * mp.pi)) / ((e - e_r) ** 2 + (gamma / 2) ** 2) / norm
    z = mp.mpc(e_r, -gamma / 2)
    pole = mp.exp(-1j * z * t) / norm
    cut = -1j * mp.quad(lambda y: dens(-1j * y) * mp.exp(-y * t), [0, 1, 10, mp.inf])
    return abs(pole + cut) / mp.exp(-gamma * t / 2)


def main():
    print("# semi-infinite Lorentzian E_R=10 Gamma=0.1 over [0,inf)")
    print(mp.nstr((mp.pi / 2 + mp.atan(2 * 10 / mp.mpf('0.1'))) / mp.pi, 20))

    k, e = delta_shell_lowest_resonance(20, 1)
    print("# delta-shell g=20 a=1 lowest resonance: k, E")
    print(mp.nstr(k.real, 20), mp.nstr(k.imag, 20))
    print(mp.nstr(e.real, 20), mp.nstr(e.imag, 20))

    print("# Khalfin crossover (Gamma t where P/exp(-Gamma t) first exceeds 10), E_R/Gamma = 40")
    tc = khalfin_crossover(40)
    print(mp.nstr(tc, 6))
    for t in (tc, tc + 1, tc + 5):
        print("  ratio at", mp.nstr(t, 6), "=", mp.nstr(khalfin_ratio_asymptotic(40, 1, t), 10))
    # The ratio oscillates around the crossover (pole/cut interference), so the
    # asserted fixture is a later time where it is far above the threshold.
    print("# ratio at Gamma t = 30 (asserted t_max fixture)")
    print(mp.nstr(khalfin_ratio_asymptotic(40, 1, 30), 12))
    cut, _ = truncated_bw_cut_asymptotic(40, 1, 30)
    print("# cut amplitude at Gamma t = 30 (E_R/Gamma = 40, Gamma = 1)")
    print(mp.nstr(cut.real, 15), mp.nstr(cut.imag, 15))

    print("# |A(t)|/exp(-Gamma t/2), truncated Breit-Wigner, Gamma = 1, E_R = 20 then 40")
    for e_r in (20, 40):
        print(" ", e_r, [mp.nstr(truncated_bw_modulus_ratio(e_r, 1, t), 12) for t in (0.1, 0.5, 1, 2)])

    print("# Born limit, constant v, semibounded: relative (exact - fermi)/fermi")
    for r in (10, 100, 1000):
        x = 2 * mp.mpf(r)
        rel = (mp.pi / 2 + mp.atan(x)) / mp.pi - 1
        print(" ", r, mp.nstr(rel, 12))


if __name__ == "__main__":
    main()
