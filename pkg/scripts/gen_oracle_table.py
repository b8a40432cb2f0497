#!/usr/bin/env python3
"""Regenerate the high-precision oracle table for Hardy Z accuracy tests.

Writes tests/fixtures/hardy_z_oracle.csv with rows ``t,z_oracle`` at 17
significant digits, computed with mpmath at 30 decimal digits.  Sample
heights are pseudo-random (fixed seed), log-uniform within each band, and
filtered to |Z| >= 1e-2 so that relative-error comparisons stay well
conditioned; a few pinned heights used directly by tests are appended
unfiltered.

Bands (matching the accuracy gates of the evaluator):
    series          (0, 199]        40 points, gate 1e-10 relative
    rs-low          [50, 2000)      60 points, gate 1e-3 relative
    rs-high         [2000, 30000]  200 points, gate 1e-6 relative
    rs-extended     (30000, 1e5]    12 points, gate 1e-6 relative

Run from the repository root:

    python3 scripts/gen_oracle_table.py
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import numpy as np
import mpmath as mp

mp.mp.dps = 30

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "hardy_z_oracle.csv"
MIN_ABS_Z = 1e-2
BANDS = [
    (0.05, 199.0, 40),
    (50.0, 1999.0, 60),
    (2000.0, 30000.0, 200),
    (30001.0, 100000.0, 12),
]
PINNED = [0.0, 100.0, 1000.0, 5000.0, 14.1347251417]


def main() -> int:
    rng = np.random.default_rng(20240811)
    rows: list[tuple[float, str]] = []
    t0 = time.time()
    for lo, hi, count in BANDS:
        kept = 0
        while kept < count:
            t = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
            z = mp.siegelz(t)
            if abs(z) < MIN_ABS_Z:
                continue
            rows.append((t, mp.nstr(z, 17)))
            kept += 1
        print(f"band [{lo}, {hi}]: {count} points ({time.time() - t0:.0f}s)")
    for t in PINNED:
        rows.append((t, mp.nstr(mp.siegelz(t), 17)))
    rows.sort(key=lambda r: r[0])
    lines = ["t,z_oracle"]
    lines += [f"{t!r},{z}" for t, z in rows]
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {OUT} with {len(rows)} rows ({time.time() - t0:.0f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
