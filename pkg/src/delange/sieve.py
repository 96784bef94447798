"""Exact window sums of multiplicative functions by segmented sieving.

The engine factors every integer in (x, x+y] by striking primes up to
sqrt(x+y) over fixed chunks of 2^20 integers; whatever remains above 1 after
division is a prime cofactor.  Chunks are independent (safe to farm out to
threads) and the final reduction is an ordered fold, so results are bitwise
reproducible for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import WindowTooLarge

CHUNK = 1 << 20
MAX_WINDOW = 100_000_000


def primes_up_to(n: int) -> np.ndarray:
    """Ascending primes <= n (int64)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


@dataclass(frozen=True)
class Window:
    """Summation range (x, x+y].

    The asymptotic machinery wants x >= y >= 2; the sieve itself is happy
    with any y >= 1, and degenerate windows like (1, 2] are useful in tests,
    so only y <= x is enforced here (expansion-range checks live with
    predict).
    """

    x: int
    y: int

    def __post_init__(self):
        if not (1 <= self.y <= self.x):
            raise ValueError(f"window needs 1 <= y <= x, got x={self.x}, y={self.y}")
        if self.x + self.y > 2**63 - 1:
            raise ValueError("x + y exceeds the 64-bit range")


@dataclass(frozen=True)
class FactoredWindow:
    """Complete factorizations for n in (x, x+y], in ascending order of n."""

    x: int
    factors: tuple[tuple[tuple[int, int], ...], ...]

    def factorization(self, n: int) -> tuple[tuple[int, int], ...]:
        return self.factors[n - self.x - 1]


def _chunk_bounds(lo: int, hi: int):
    # half-open [a, b) sub-ranges of length <= CHUNK
    a = lo
    while a < hi:
        b = min(a + CHUNK, hi)
        yield a, b
        a = b


def _strike(lo: int, hi: int, primes: np.ndarray):
    """Per-chunk prime-power events over [lo, hi).

    Returns (residual cofactors, list of (p, offsets ndarray, exponents ndarray)).
    """
    n = hi - lo
    residual = np.arange(lo, hi, dtype=np.int64)
    events = []
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        start = ((lo + p - 1) // p) * p
        if start >= hi:
            continue
        idx = np.arange(start - lo, n, p, dtype=np.int64)
        exps = np.zeros(idx.size, dtype=np.int64)
        live = np.arange(idx.size)
        while live.size:
            sel = idx[live]
            residual[sel] //= p
            exps[live] += 1
            live = live[residual[sel] % p == 0]
        events.append((p, idx, exps))
    return residual, events


def factor_window(win: Window) -> FactoredWindow:
    """Factor every integer in the window; reconstruction is exact."""
    if win.y > MAX_WINDOW:
        raise WindowTooLarge(f"y={win.y} exceeds the budget {MAX_WINDOW}")
    lo, hi = win.x + 1, win.x + win.y + 1
    primes = primes_up_to(math.isqrt(hi - 1))
    out: list[list[tuple[int, int]]] = []
    for a, b in _chunk_bounds(lo, hi):
        residual, events = _strike(a, b, primes)
        lists: list[list[tuple[int, int]]] = [[] for _ in range(b - a)]
        for p, idx, exps in events:
            for i, e in zip(idx.tolist(), exps.tolist()):
                lists[i].append((p, e))
        for i, r in enumerate(residual.tolist()):
            if r > 1:
                lists[i].append((int(r), 1))
        out.extend(lists)
    return FactoredWindow(x=win.x, factors=tuple(tuple(fs) for fs in out))


def _chunk_sum(a: int, b: int, primes: np.ndarray, local_factor, prime_value) -> complex:
    """Sum of f(n) over [a, b) with f multiplicative given by local_factor(p, e).

    prime_value, when not None, is the p-independent value of local_factor(p, 1)
    and lets the prime-cofactor pass stay fully vectorized.
    """
    n = b - a
    residual, events = _strike(a, b, primes)
    fv = np.ones(n, dtype=np.complex128)
    for p, idx, exps in events:
        for e in np.unique(exps):
            sel = idx[exps == e]
            fv[sel] *= complex(local_factor(int(p), int(e)))
    big = np.nonzero(residual > 1)[0]
    if big.size:
        if prime_value is not None:
            fv[big] *= complex(prime_value)
        else:
            uniq, inv = np.unique(residual[big], return_inverse=True)
            table = np.array([complex(local_factor(int(q), 1)) for q in uniq])
            fv[big] *= table[inv]
    return complex(fv.sum())  # numpy pairwise summation, ascending order


def exact_sum(family, win: Window, workers: int = 1) -> complex:
    """Exact sum of family.local_factor-built f(n) over (x, x+y].

    Chunk results are reduced in ascending order whatever the worker count,
    so the output is bitwise deterministic.
    """
    if win.y > MAX_WINDOW:
        raise WindowTooLarge(f"y={win.y} exceeds the budget {MAX_WINDOW}")
    lo, hi = win.x + 1, win.x + win.y + 1
    primes = primes_up_to(math.isqrt(hi - 1))
    bounds = list(_chunk_bounds(lo, hi))
    lf = family.local_factor
    pv = getattr(family, "prime_local_value", None)
    if workers <= 1 or len(bounds) == 1:
        parts = [_chunk_sum(a, b, primes, lf, pv) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ab: _chunk_sum(ab[0], ab[1], primes, lf, pv), bounds))
    total = 0j
    for part in parts:  # ordered fold
        total += part
    return total


def factor_range(lo_exclusive: int, hi_inclusive: int):
    """Factorizations for n in (lo, hi] without the Window x >= y constraint.

    Yields (n, ((p, e), ...)) in ascending order; intended for scans such as
    growth checks over [1, 10^6].
    """
    lo, hi = lo_exclusive + 1, hi_inclusive + 1
    if hi - lo > MAX_WINDOW:
        raise WindowTooLarge(f"range length {hi - lo} exceeds the budget {MAX_WINDOW}")
    primes = primes_up_to(math.isqrt(hi - 1))
    for a, b in _chunk_bounds(lo, hi):
        residual, events = _strike(a, b, primes)
        lists: list[list[tuple[int, int]]] = [[] for _ in range(b - a)]
        for p, idx, exps in events:
            for i, e in zip(idx.tolist(), exps.tolist()):
                lists[i].append((p, e))
        for i, r in enumerate(residual.tolist()):
            if r > 1:
                lists[i].append((int(r), 1))
        for i, fs in enumerate(lists):
            yield a + i, tuple(fs)
