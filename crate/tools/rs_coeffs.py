#!/usr/bin/env python3
"""Emit Taylor coefficients (about p = 1/2) of the Riemann-Siegel remainder
terms C0..C4 as a Rust source file.

Usage: rs_coeffs.py > crates/core/src/zeta/rs_coeffs.rs
"""
import mpmath as mp

mp.mp.dps = 60
DEGREE = 90


def psi(p):
    return mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)


def derivative(series, k):
    out = []
    for j in range(len(series) - k):
        f = mp.mpf(1)
        for i in range(j + 1, j + k + 1):
            f *= i
        out.append(series[j + k] * f)
    return out


def combine(terms):
    n = max(len(s) for _, s in terms)
    out = [mp.mpf(0)] * n
    for c, s in terms:
        for j, v in enumerate(s):
            out[j] += c * v
    return out


def main():
    tay = mp.taylor(psi, mp.mpf(1) / 2, DEGREE)
    d = lambda k: derivative(tay, k)
    pi = mp.pi
    cs = [
        d(0),
        combine([(-1 / (96 * pi**2), d(3))]),
        combine([(1 / (64 * pi**2), d(2)), (1 / (18432 * pi**4), d(6))]),
        combine([
            (-1 / (64 * pi**2), d(1)),
            (-1 / (3840 * pi**4), d(5)),
            (-1 / (5308416 * pi**6), d(9)),
        ]),
        combine([
            (1 / (128 * pi**2), d(0)),
            (19 / (24576 * pi**4), d(4)),
            (11 / (5898240 * pi**6), d(8)),
            (1 / (2038431744 * pi**8), d(12)),
        ]),
    ]
    print("// Generated by tools/rs_coeffs.py. Do not edit.")
    print("//")
    print("// C_k(p) = sum_j COEFFS[k][j] * (p - 1/2)^j for the fractional part p.")
    print()
    tables = []
    for c in cs:
        last = max(j for j, v in enumerate(c) if abs(v) * mp.mpf(0.5) ** j > mp.mpf("1e-19"))
        tables.append(c[: last + 1])
    for k, c in enumerate(tables):
        print("const C{}: [f64; {}] = [".format(k, len(c)))
        for v in c:
            print("    {},".format(mp.nstr(v, 17, min_fixed=0, max_fixed=0)
                                    if v != 0 else "0.0"))
        print("];")
        print()
    print("pub(crate) const COEFFS: [&[f64]; 5] = [&C0, &C1, &C2, &C3, &C4];")


if __name__ == "__main__":
    main()
