#!/usr/bin/env python3
"""Generate the bundled table of the first 10^4 critical-line zero ordinates.

A vectorized first-order Riemann-Siegel scan locates sign changes of Z(t);
every bracket is then refined with Brent's method on mpmath.fp.siegelz
(accurate at all desk heights, unlike the first-order formula near t = 14).
Completeness is checked block-wise against the smooth counting formula and
the result is spot-checked against mpmath.zetazero.  Output: one ordinate
per line, six decimals.

Usage: python scripts/make_zero_table.py [--count 10000] [--out PATH]
"""

from __future__ import annotations

import argparse
import math

import mpmath
import numpy as np
from scipy.optimize import brentq

TWO_PI = 2.0 * math.pi
Z = mpmath.fp.siegelz


def rs_theta(t):
    t = np.asarray(t, dtype=np.float64)
    return (
        0.5 * t * np.log(t / TWO_PI)
        - 0.5 * t
        - math.pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t**3)
    )


def _z_coarse(t: np.ndarray, nu: int) -> np.ndarray:
    """First-order Riemann-Siegel Z for floor(sqrt(t/2pi)) = nu (locator only)."""
    th = rs_theta(t)
    total = np.zeros_like(t)
    for n in range(1, nu + 1):
        total += np.cos(th - t * math.log(n)) / math.sqrt(n)
    total *= 2.0
    p = np.sqrt(t / TWO_PI) - nu
    c0 = np.cos(TWO_PI * (p * p - p - 1.0 / 16.0)) / np.cos(TWO_PI * p)
    total += (-1.0) ** (nu - 1) * (t / TWO_PI) ** (-0.25) * c0
    return total


def smooth_count(t: float) -> float:
    """Main term of the zero-counting function N(t)."""
    return float(rs_theta(np.array([t]))[0]) / math.pi + 1.0


def _brackets(t_lo: float, t_hi: float, step: float) -> list[tuple[float, float]]:
    out: list[tuple[float, float]] = []
    if t_lo < 60.0:
        # first-order RS is unreliable this low; scan with siegelz directly
        hi = min(t_hi, 60.0)
        grid = np.arange(t_lo, hi + step, step)
        vals = np.array([Z(float(t)) for t in grid])
        for i in np.nonzero(np.signbit(vals[:-1]) != np.signbit(vals[1:]))[0]:
            out.append((float(grid[i]), float(grid[i + 1])))
        t_lo = hi
    nu_lo = int(math.isqrt(int(t_lo / TWO_PI)))
    nu_hi = int(math.isqrt(int(t_hi / TWO_PI))) + 1
    for nu in range(max(1, nu_lo), nu_hi + 1):
        a = max(t_lo, TWO_PI * nu * nu)
        b = min(t_hi, TWO_PI * (nu + 1) * (nu + 1))
        if a >= b:
            continue
        n = int(math.ceil((b - a) / step)) + 1
        grid = np.linspace(a, b, n)
        vals = _z_coarse(grid, nu)
        for i in np.nonzero(np.signbit(vals[:-1]) != np.signbit(vals[1:]))[0]:
            out.append((float(grid[i]), float(grid[i + 1])))
    return out


def _refine(a: float, b: float, step: float) -> float | None:
    """Brent root of siegelz on the bracket, widening if the coarse locator
    and the accurate Z disagree about the sign change."""
    fa, fb = Z(a), Z(b)
    tries = 0
    while fa * fb > 0 and tries < 4:
        a -= step
        b += step
        fa, fb = Z(a), Z(b)
        tries += 1
    if fa * fb > 0:
        return None
    return float(brentq(Z, a, b, xtol=1e-9))


def scan_zeros(t_lo: float, t_hi: float, step: float) -> list[float]:
    roots = []
    for a, b in _brackets(t_lo, t_hi, step):
        r = _refine(a, b, step)
        if r is not None and t_lo <= r <= t_hi:
            roots.append(r)
    return sorted(set(round(r, 9) for r in roots))


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=10_000)
    ap.add_argument("--out", default="src/delange/data/zeta_zeros_10k.txt")
    ap.add_argument("--step", type=float, default=0.004)
    args = ap.parse_args()

    if args.count > 10_000:
        raise SystemExit("--count beyond 10000 needs a taller scan window")
    t_hi = 9950.0  # the 10^4-th zero sits near 9877.78
    zeros = scan_zeros(14.0, t_hi, args.step)

    # block-wise completeness against the smooth count; rescan finer on deficit
    final: list[float] = []
    edges = np.arange(14.0, t_hi + 50.0, 50.0)
    for a, b in zip(edges[:-1], edges[1:]):
        hi = min(b, t_hi)
        blk = [z for z in zeros if a <= z < hi]
        if a > 14.0:
            expected = round(smooth_count(hi) - smooth_count(a))
            if len(blk) < expected:
                blk = [z for z in scan_zeros(a, hi, args.step / 8.0) if a <= z < hi]
        final.extend(blk)
    zeros = sorted(set(final))

    if len(zeros) < args.count:
        raise SystemExit(f"found only {len(zeros)} zeros below {t_hi}")
    zeros = zeros[: args.count]

    n_formula = smooth_count(zeros[-1] + 1e-3)
    if abs(n_formula - args.count) > 1.5:
        raise SystemExit(f"count check failed: formula gives {n_formula:.2f} at #{args.count}")

    for idx in (1, 2, 3, 100, 1000, args.count):
        ref = float(mpmath.im(mpmath.zetazero(idx)))
        got = zeros[idx - 1]
        if abs(ref - got) > 5e-6:
            raise SystemExit(f"spot check failed at #{idx}: {got} vs {ref}")
        print(f"  zero #{idx}: {got:.6f} (mpmath {ref:.6f})")

    with open(args.out, "w", encoding="utf-8") as fh:
        for z in zeros:
            fh.write(f"{z:.6f}\n")
    print(f"wrote {len(zeros)} ordinates to {args.out} (top {zeros[-1]:.3f})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
