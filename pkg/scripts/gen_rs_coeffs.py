#!/usr/bin/env python3
"""Regenerate the Riemann-Siegel correction-term tables in zetafactor/_rs_coeffs.py.

The remainder of the Riemann-Siegel main sum has the classical asymptotic shape

    Z(t) - mainsum(t) = (-1)^(N-1) * tau^(-1/2) * sum_j C_j(p) * tau^(-j),

with tau = sqrt(t / 2pi), N = floor(tau), p = tau - N.  The correction
functions C_0..C_4 are recovered here numerically: for a fixed fractional
part p the scaled remainder is evaluated in high precision (mpmath) along a
ladder of integer parts N, and the C_j(p) fall out of the resulting
Vandermonde system in 1/tau.  Each C_j is then fit by a Chebyshev series on
p in [0, 1] and the float64 coefficients are written out as Python source.

The leading function has the closed form

    C_0(p) = cos(2pi (p^2 - p - 1/16)) / cos(2pi p),

which this script uses as a cross-check on the extraction; it aborts if the
extracted C_0 disagrees beyond float64 noise.

Run from the repository root:

    python3 scripts/gen_rs_coeffs.py

Takes a couple of minutes (roughly a thousand high-precision Z evaluations).
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import numpy as np
import mpmath as mp

mp.mp.dps = 50

# Ladder of integer parts for the 1/tau fit.  Wide geometric spread keeps the
# Vandermonde solve well determined; the smallest N bounds the truncation
# error of the degree-11 model at ~6^-12.
N_LADDER = [6, 8, 11, 15, 21, 29, 41, 57, 80, 112, 157, 220]
N_KEEP = 5          # C_0..C_4
CHEB_SAMPLES = 96   # Chebyshev-Gauss sample count on p in (0, 1)
CHEB_DEGREE = 52
TRIM_BELOW = 1e-16  # drop trailing coefficients below float64 noise

OUT_PATH = Path(__file__).resolve().parent.parent / "src" / "zetafactor" / "_rs_coeffs.py"


def scaled_remainder(p: mp.mpf, n: int) -> mp.mpf:
    """(Z(t) - mainsum(t)) * (-1)^(N-1) * sqrt(tau) at tau = n + p."""
    tau = mp.mpf(n) + p
    t = 2 * mp.pi * tau ** 2
    theta = mp.siegeltheta(t)
    main = mp.mpf(0)
    for m in range(1, n + 1):
        main += mp.cos(theta - t * mp.log(m)) / mp.sqrt(m)
    main *= 2
    return (mp.siegelz(t) - main) * (-1) ** (n - 1) * mp.sqrt(tau)


def extract_corrections(p: mp.mpf) -> list[float]:
    """Solve the Vandermonde system in 1/tau for C_0(p)..C_4(p)."""
    rows, rhs = [], []
    for n in N_LADDER:
        x = 1 / (mp.mpf(n) + p)
        rows.append([x ** j for j in range(len(N_LADDER))])
        rhs.append(scaled_remainder(p, n))
    sol = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))
    return [float(sol[j]) for j in range(N_KEEP)]


def leading_closed_form(p: mp.mpf) -> float:
    return float(mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p))


def main() -> int:
    t0 = time.time()
    nodes = np.cos((2 * np.arange(CHEB_SAMPLES) + 1) * np.pi / (2 * CHEB_SAMPLES))
    p_grid = 0.5 * (nodes + 1.0)

    samples = np.empty((CHEB_SAMPLES, N_KEEP))
    worst_c0 = 0.0
    for i, p in enumerate(p_grid):
        pm = mp.mpf(float(p))
        samples[i] = extract_corrections(pm)
        worst_c0 = max(worst_c0, abs(samples[i][0] - leading_closed_form(pm)))
        if (i + 1) % 16 == 0:
            print(f"  {i + 1}/{CHEB_SAMPLES} sampled ({time.time() - t0:.0f}s)")

    print(f"closed-form cross-check on C_0: max deviation {worst_c0:.3e}")
    if worst_c0 > 1e-12:
        print("extraction disagrees with the closed form; aborting", file=sys.stderr)
        return 1

    tables = []
    for j in range(N_KEEP):
        coef = np.polynomial.chebyshev.chebfit(nodes, samples[:, j], CHEB_DEGREE)
        keep = len(coef)
        while keep > 8 and abs(coef[keep - 1]) < TRIM_BELOW:
            keep -= 1
        coef = coef[:keep]
        resid = np.max(np.abs(np.polynomial.chebyshev.chebval(nodes, coef) - samples[:, j]))
        print(f"C_{j}: degree {keep - 1}, max fit residual {resid:.2e}")
        tables.append(coef)

    lines = [
        '"""Chebyshev tables for the Riemann-Siegel correction terms C_0..C_4.',
        "",
        "Generated by scripts/gen_rs_coeffs.py; do not edit by hand.  Each table",
        "holds Chebyshev coefficients of C_j over the fractional part p of",
        "sqrt(t / 2pi), on the mapped variable x = 2p - 1 in [-1, 1].",
        '"""',
        "",
        "import numpy as np",
        "",
    ]
    for j, coef in enumerate(tables):
        lines.append(f"CHEB_C{j} = np.array([")
        for v in coef:
            lines.append(f"    {v!r},")
        lines.append("])")
        lines.append("")
    lines.append("TABLES = (CHEB_C0, CHEB_C1, CHEB_C2, CHEB_C3, CHEB_C4)")
    lines.append("")
    OUT_PATH.write_text("\n".join(lines))
    print(f"wrote {OUT_PATH} ({time.time() - t0:.0f}s total)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
