#!/usr/bin/env python3
"""Reference values for the C++ tests, computed with mpmath at high precision.

Everything here is evaluated straight from the spin sum (or its binomial
collapse) without sharing code with the library. Run it to regenerate
tests/oracle_values.hpp:

    python3 tests/oracles/compute_oracles.py > tests/oracle_values.hpp
"""
import itertools

import mpmath as mp

mp.mp.dps = 80


def log_xi(n, bj, bh):
    """log of sum over all 2^N configurations, collapsed by magnetization."""
    total = mp.mpf(0)
    for down in range(n + 1):
        m = mp.mpf(n) / 2 - down  # sum of s_i
        # -beta H = beta J sum_{i<j} s_i s_j + beta h sum s
        pair = (m * m - mp.mpf(n) / 4) / 2
        total += mp.binomial(n, down) * mp.e ** (bj * pair + bh * m)
    return mp.log(total)


def log_xi_enumerate(n, bj, bh):
    total = mp.mpf(0)
    for spins in itertools.product((mp.mpf(1) / 2, -mp.mpf(1) / 2), repeat=n):
        e = sum(spins[i] * spins[j] for i in range(n) for j in range(i + 1, n))
        total += mp.e ** (bj * e + bh * sum(spins))
    return mp.log(total)


def coherence(n, bj, bh, theta):
    """L = sum_m w_m exp(i m theta) with Boltzmann weights of magnetization m."""
    num = mp.mpc(0)
    den = mp.mpf(0)
    for down in range(n + 1):
        m = mp.mpf(n) / 2 - down
        w = mp.binomial(n, down) * mp.e ** (bj * m * m / 2 + bh * m)
        num += w * mp.e ** (1j * m * theta)
        den += w
    return num / den


def dcoherence(n, bj, bh, theta):
    return mp.diff(lambda t: coherence(n, bj, bh, t), theta)


def zeros_n(n, bj):
    """Angles of the roots of sum_n p_n z^n, z = exp(-i theta)."""
    coeffs = [mp.binomial(n, k) * mp.e ** (bj * (k * k - n * k) / 2) for k in range(n + 1)]
    roots = mp.polyroots(coeffs[::-1], maxsteps=500, extraprec=400)
    angles = sorted(float((-mp.arg(r)) % (2 * mp.pi)) for r in roots)
    radii = [float(abs(r)) for r in roots]
    return angles, max(abs(r - 1) for r in radii)


def real_coherence(n, bj, theta):
    return mp.re(coherence(n, bj, 0, theta))


def first_zero_large(n, t_over_nj, guess_lo, guess_hi):
    bj = 1 / (t_over_nj * n)
    f = lambda t: real_coherence(n, bj, t)
    lo, hi = mp.mpf(guess_lo), mp.mpf(guess_hi)
    f_lo = f(lo)
    assert f_lo * f(hi) < 0, (t_over_nj, f_lo)
    for _ in range(70):
        mid = (lo + hi) / 2
        f_mid = f(mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def saddle(nbj):
    phi_p = lambda x: mp.log((mp.mpf(1) / 2 + x) / (mp.mpf(1) / 2 - x)) - nbj * x
    x = mp.findroot(phi_p, (mp.mpf("1e-6"), mp.mpf(1) / 2 - mp.mpf("1e-30")), solver="anderson")
    phi = (mp.mpf(1) / 2 + x) * mp.log(mp.mpf(1) / 2 + x) + (mp.mpf(1) / 2 - x) * mp.log(mp.mpf(1) / 2 - x) - nbj * x * x / 2
    return float(x), float(phi)


def emit_array(name, values):
    body = ", ".join(repr(float(v)) for v in values)
    print(f"inline constexpr double {name}[] = {{{body}}};")


def main():
    print("// Generated by tests/oracles/compute_oracles.py (mpmath, 80 digits). Do not edit.")
    print("#pragma once\n\nnamespace oracle {\n")

    for label, n, bj in [("n9_bj8_15", 9, mp.mpf(8) / 15), ("n9_bj40_9", 9, mp.mpf(40) / 9),
                         ("n9_bj1", 9, mp.mpf(1)), ("n12_bj0_3", 12, mp.mpf("0.3")),
                         ("n6_bj2", 6, mp.mpf(2))]:
        angles, dev = zeros_n(n, bj)
        assert dev < 1e-30, dev
        emit_array(f"kZeros_{label}", angles)

    angles, _ = zeros_n(2, mp.mpf("1.3863"))
    emit_array("kZeros_n2_bj1_3863", angles)

    # log Xi at selected (N, beta J, beta h); checked against enumeration where cheap.
    cases = [(1, 1, 0), (2, 1, 0), (2, 1.3863, 0.5), (5, 0.5, -0.1), (9, 8 / 15, 0), (9, 40 / 9, 0),
             (9, 1, 0.3), (12, 2, 0.5), (12, 5, -0.5), (40, 0.2, 0.1)]
    rows = []
    for n, bj, bh in cases:
        v = log_xi(n, mp.mpf(bj), mp.mpf(bh))
        if n <= 9:
            assert abs(v - log_xi_enumerate(n, mp.mpf(bj), mp.mpf(bh))) < mp.mpf("1e-60")
        rows.append(f"    {{{n}, {float(bj)!r}, {float(bh)!r}, {float(v)!r}}}")
    print("struct LogXiCase { unsigned n; double beta_j; double beta_h; double log_xi; };")
    print("inline constexpr LogXiCase kLogXi[] = {\n" + ",\n".join(rows) + "};")

    # Coherence and its sensitivity.
    rows = []
    for n, bj, bh, th in [(9, 8 / 15, 0, 1.0), (9, 40 / 9, 0, 0.2), (9, 0, 0, 2.0), (4, 1, 0.3, 0.7),
                          (7, 0.5, -0.2, 2.5), (30, 0.1, 0, 0.3)]:
        v = coherence(n, mp.mpf(bj), mp.mpf(bh), mp.mpf(th))
        d = dcoherence(n, mp.mpf(bj), mp.mpf(bh), mp.mpf(th))
        rows.append(f"    {{{n}, {float(bj)!r}, {float(bh)!r}, {float(th)!r}, {float(v.real)!r}, "
                    f"{float(v.imag)!r}, {float(d.real)!r}, {float(d.imag)!r}}}")
    print("struct CoherenceCase { unsigned n; double beta_j; double beta_h; double theta;"
          " double re, im, d_re, d_im; };")
    print("inline constexpr CoherenceCase kCoherence[] = {\n" + ",\n".join(rows) + "};")

    # |dL/dtheta| at the zeros, N = 9.
    for label, bj in [("bj40_9", mp.mpf(40) / 9), ("bj8_15", mp.mpf(8) / 15)]:
        angles, _ = zeros_n(9, bj)
        emit_array(f"kSlope_n9_{label}", [abs(dcoherence(9, bj, 0, mp.mpf(a))) for a in angles])

    # Saddle point for N beta J / 4 = 2 and 1.25.
    for label, nbj in [("nbj8", 8), ("nbj5", 5)]:
        x, phi = saddle(mp.mpf(nbj))
        print(f"inline constexpr double kSaddleX_{label} = {x!r};")
        print(f"inline constexpr double kSaddlePhi_{label} = {phi!r};")

    # Yang-Lee edge of the N = 500 bath, bracketed around the expected angle.
    mp.mp.dps = 120
    rows = []
    for t, lo, hi in [(0.02, 0.00627, 0.00630), (0.1, 0.00636, 0.00639), (0.2, 0.0089, 0.0090),
                      (0.3, 0.1444, 0.1447), (0.4, 0.3970, 0.3995), (0.6, 0.79, 0.80)]:
        rows.append(f"    {{{t!r}, {first_zero_large(500, mp.mpf(t), lo, hi)!r}}}")
    print("struct EdgeCase { double t_over_nj; double theta1; };")
    print("inline constexpr EdgeCase kEdgeN500[] = {\n" + ",\n".join(rows) + "};")
    print("\n}  // namespace oracle")


if __name__ == "__main__":
    main()
