"""Hooley-Huxley contour construction over tabulated or synthetic zero sets.

The upper-half contour consists of a loop around s = 1 (realized with
axis-parallel pieces: two horizontal legs at heights +-r/2, r = 1/log x, and
a closing vertical at 1 + r), a low slab at abscissa 1/2 + eta, and then,
for each dyadic range [U, 2U], a staircase of vertical pieces at the
elevated levels beta_j* with corner-displaced horizontal connectors.  The
full path is the upper half concatenated with its mirror image.

Desk-scale adaptations (T around 2^16 instead of "sufficiently large"):
the slab owns |t| <= 2^5 and blocks start at U = 2^5, so the H0'-sized
V0 piece only materializes when H0' outgrows 2^5; non-power-of-two T is
floored to the covered dyadic top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BetaOutOfRange,
    DegenerateBlock,
    NoAdmissibleCl,
    ZeroTableParseError,
)

GOOD = "good"
EXCEPTIONAL = "exceptional"

BLOCK_MIN_L = 5  # slab owns |t| <= 2^5; dyadic blocks start there
SLAB_TOP = float(2**BLOCK_MIN_L)


def bundled_zero_table() -> str:
    """Path of the bundled table of the first 10^4 critical-line ordinates."""
    from importlib.resources import files

    return str(files("delange").joinpath("data/zeta_zeros_10k.txt"))


# --- zero sets -------------------------------------------------------------

@dataclass(frozen=True)
class ZeroSet:
    """Zeros beta + i*gamma with gamma ascending, truncated at height T."""

    beta: np.ndarray
    gamma: np.ndarray
    source: str  # "table" | "synthetic"
    T: float

    def __post_init__(self):
        object.__setattr__(self, "beta", np.asarray(self.beta, dtype=np.float64))
        object.__setattr__(self, "gamma", np.asarray(self.gamma, dtype=np.float64))
        if self.beta.shape != self.gamma.shape:
            raise ValueError("beta and gamma must have equal length")
        if self.source not in ("table", "synthetic"):
            raise ValueError("source must be 'table' or 'synthetic'")

    def __len__(self) -> int:
        return int(self.beta.size)


def zeroset_from_pairs(pairs: Sequence[tuple[float, float]], T: float, source: str = "synthetic") -> ZeroSet:
    """Build a validated ZeroSet from (beta, gamma) pairs, sorting and truncating."""
    if len(pairs) == 0:
        return ZeroSet(np.zeros(0), np.zeros(0), source, float(T))
    arr = np.asarray(pairs, dtype=np.float64).reshape(-1, 2)
    beta, gamma = arr[:, 0], arr[:, 1]
    bad = (beta < 0.5) | (beta >= 1.0)
    if bad.any():
        raise BetaOutOfRange(f"beta values outside [1/2, 1): {beta[bad][:5]}")
    if (gamma <= 0).any():
        raise ValueError("ordinates must be positive")
    keep = gamma <= T
    order = np.argsort(gamma[keep], kind="stable")
    return ZeroSet(beta[keep][order], gamma[keep][order], source, float(T))


def load_zeros(path, T: float) -> ZeroSet:
    """Read a zero table.

    One number per line: ordinates of critical-line zeros (beta = 1/2).
    Two numbers per line: explicit "beta gamma" pairs (synthetic set).
    """
    pairs: list[tuple[float, float]] = []
    ncols: Optional[int] = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if ncols is None:
                if len(parts) not in (1, 2):
                    raise ZeroTableParseError(lineno, f"expected 1 or 2 columns, got {len(parts)}")
                ncols = len(parts)
            elif len(parts) != ncols:
                raise ZeroTableParseError(lineno, f"expected {ncols} columns, got {len(parts)}")
            try:
                nums = [float(p) for p in parts]
            except ValueError:
                raise ZeroTableParseError(lineno, f"not a number: {line!r}") from None
            if ncols == 1:
                pairs.append((0.5, nums[0]))
            else:
                pairs.append((nums[0], nums[1]))
    source = "table" if (ncols in (None, 1)) else "synthetic"
    return zeroset_from_pairs(pairs, T, source=source)


def classify(zero: tuple[float, float], c_star: float) -> str:
    """'good' iff beta < 1 - C*/log log(|gamma| + 2), strict; else 'exceptional'."""
    beta, gamma = float(zero[0]), float(zero[1])
    threshold = 1.0 - c_star / math.log(math.log(abs(gamma) + 2.0))
    return GOOD if beta < threshold else EXCEPTIONAL


# --- dyadic blocks ----------------------------------------------------------

@dataclass(frozen=True)
class DyadicBlock:
    l: int
    U: int
    m: int               # number of intervals, U/(2H)
    H: Fraction          # exact half-length U/(2m)
    c_l: float           # H / log log U, in [1/2, 1]
    margin: float        # C*/log log(2(U+12))
    beta_j_star: np.ndarray
    has_zero: np.ndarray

    def interval_center(self, j: int) -> Fraction:
        """U_j = U + (2j-1) H, exact."""
        return self.U + (2 * j - 1) * self.H

    def intervals(self) -> list[tuple[Fraction, Fraction]]:
        return [
            (self.U + (2 * j - 2) * self.H, self.U + 2 * j * self.H)
            for j in range(1, self.m + 1)
        ]


def _choose_block_split(U: int) -> tuple[int, Fraction, float]:
    """m with c_l = U/(2m log log U) in [1/2, 1]; scan around the 3/4 point."""
    lnln = math.log(math.log(U))
    if lnln <= 0:
        raise NoAdmissibleCl(f"log log U <= 0 at U={U}")
    center = round(U / (2.0 * 0.75 * lnln))
    for dm in range(0, 50):
        for m in (center + dm, center - dm) if dm else (center,):
            if m < 1:
                continue
            c = U / (2.0 * m * lnln)
            if 0.5 <= c <= 1.0:
                return int(m), Fraction(U, 2 * int(m)), c
    raise NoAdmissibleCl(f"no admissible interval count at U={U}")


def build_blocks(zeroset: ZeroSet, T: float, alpha: float, c_star: float) -> list[DyadicBlock]:
    """Dyadic blocks covering [2^BLOCK_MIN_L, 2^floor(log2 T)] with levels beta_j*."""
    if T < 2**10:
        raise ValueError("T must be at least 2^10")
    if not (0.5 < alpha < 1.0):
        raise ValueError("alpha must lie in (1/2, 1)")
    l_top = int(math.floor(math.log2(T)))
    blocks = []
    for l in range(BLOCK_MIN_L, l_top):
        U = 2**l
        m, H, c_l = _choose_block_split(U)
        h = float(H)
        margin = c_star / math.log(math.log(2.0 * (U + 12)))
        beta_raw = np.full(m + 2, -np.inf)  # 1-based worklist with slack ends
        if len(zeroset):
            sel = (zeroset.beta >= alpha) & (zeroset.gamma >= U - 2 * h) & (
                zeroset.gamma <= 2 * U + 2 * h
            )
            for b, g in zip(zeroset.beta[sel], zeroset.gamma[sel]):
                # affected j: U_j in [gamma - 2H, gamma + 2H]
                lo = math.ceil((g - U) / (2 * h) - 0.5)
                hi = math.floor((g - U) / (2 * h) + 1.5)
                lo = max(1, lo)
                hi = min(m, hi)
                if lo <= hi:
                    idx = np.arange(lo, hi + 1)
                    beta_raw[idx] = np.maximum(beta_raw[idx], b)
        has_zero = np.isfinite(beta_raw[1 : m + 1])
        star = np.where(has_zero, beta_raw[1 : m + 1] + margin, alpha)
        if np.any(star >= 1.0):
            j_bad = int(np.argmax(star)) + 1
            raise DegenerateBlock(
                f"block l={l}: beta*_{j_bad} = {star[j_bad - 1]:.4f} >= 1"
                " (reduce C* or the zero heights)"
            )
        blocks.append(
            DyadicBlock(
                l=l, U=U, m=m, H=H, c_l=c_l, margin=margin,
                beta_j_star=star, has_zero=has_zero,
            )
        )
    return blocks


# --- contour assembly ---------------------------------------------------------

PIECE_V_STAR = "V_star"
PIECE_V0 = "V0"
PIECE_VJ = "Vj"
PIECE_HJ = "hj"
PIECE_H0L = "h0l"
PIECE_GAMMA = "Gamma_loop"
PIECE_MIRROR = "mirror"


@dataclass(frozen=True)
class ContourParams:
    alpha: float
    eta: float
    c_star: float
    corner_eps: float
    T: float
    logx: float


@dataclass(frozen=True)
class ContourPath:
    vertices: tuple[complex, ...]
    piece_labels: tuple[str, ...]
    params: ContourParams
    case_tally: dict
    covered_top: float  # 2^floor(log2 T): height actually covered by blocks


def _tally_cases(blocks: list[DyadicBlock], slab_level: float) -> dict:
    """Count the four vertical / horizontal junction shapes over all j."""
    tally = {f"v_case{k}": 0 for k in (1, 2, 3, 4)}
    tally.update({f"h_case{k}": 0 for k in (1, 2, 3, 4)})
    tally["ties"] = 0
    levels = [slab_level]
    for blk in blocks:
        levels.extend(blk.beta_j_star.tolist())
    arr = np.array(levels)
    cur = arr[1:]
    prev = arr[:-1]
    nxt = np.append(arr[2:], arr[-1])  # top terminates flat
    lt_min = (cur < prev) & (cur < nxt)
    gt_max = (cur > prev) & (cur > nxt)
    up = (prev < cur) & (cur < nxt)
    down = (nxt < cur) & (cur < prev)
    tally["v_case1"] = int(lt_min.sum())
    tally["v_case2"] = int(gt_max.sum())
    tally["v_case3"] = int(up.sum())
    tally["v_case4"] = int(down.sum())
    for k in (1, 2, 3, 4):
        tally[f"h_case{k}"] = tally[f"v_case{k}"]
    tally["ties"] = int(((cur == prev) | (cur == nxt)).sum())
    return tally


def assemble_contour(
    blocks: list[DyadicBlock],
    zeroset: ZeroSet,
    alpha: float,
    eta: Optional[float] = None,
    c_star: float = 1.0,
    corner_eps: Optional[float] = None,
    logx: float = math.log(1e6),
) -> ContourPath:
    """Build the closed axis-parallel path from dyadic blocks.

    eta defaults to alpha - 1/2 so the slab sits at abscissa alpha, matching
    the flat empty-set contour; pass eta explicitly to lower the slab.
    """
    if not blocks:
        raise ValueError("need at least one block")
    if eta is None:
        eta = alpha - 0.5
    if not (0.0 < eta <= alpha - 0.5 + 1e-12):
        raise ValueError("eta must lie in (0, alpha - 1/2]")
    min_h = min(float(b.H) for b in blocks)
    if corner_eps is None:
        corner_eps = min_h / 100.0
    if not (0.0 < corner_eps < min_h / 4.0):
        raise ValueError(f"corner_eps must lie in (0, H/4) = (0, {min_h / 4.0:.4g})")

    slab_level = 0.5 + eta
    r = 1.0 / logx
    T_eff = float(2 ** (blocks[-1].l + 1))

    # levels with spans, bottom to top of the upper half
    spans: list[tuple[float, float, float, str]] = []  # (level, t_lo, t_hi, label)
    spans.append((slab_level, r / 2.0, SLAB_TOP, PIECE_V_STAR))
    for blk in blocks:
        h = float(blk.H)
        for j in range(1, blk.m + 1):
            lo = blk.U + (2 * j - 2) * h
            hi = blk.U + 2 * j * h
            spans.append((float(blk.beta_j_star[j - 1]), lo, hi, PIECE_VJ))

    eps = corner_eps
    verts: list[complex] = [complex(1.0 + r, 0.0), complex(1.0 + r, r / 2.0)]
    labels: list[str] = [PIECE_GAMMA]
    # top leg of the loop, then climb
    verts.append(complex(slab_level, r / 2.0))
    labels.append(PIECE_GAMMA)
    cur_level, _, _, cur_label = spans[0]
    for level, lo, hi, label in spans[1:]:
        if level == cur_level:
            continue
        # junction at height lo, displaced into the lower-level side
        t_h = lo - eps if level > cur_level else lo + eps
        verts.append(complex(cur_level, t_h))
        labels.append(cur_label)
        verts.append(complex(level, t_h))
        labels.append(PIECE_H0L if _is_block_boundary(lo) else PIECE_HJ)
        cur_level, cur_label = level, label
    verts.append(complex(cur_level, T_eff))
    labels.append(cur_label)

    # mirror: conjugate, reversed, dropping the shared starting vertex
    lower_verts = [v.conjugate() for v in reversed(verts[1:])]
    lower_labels = [PIECE_MIRROR] * (len(lower_verts))
    vertices = tuple(lower_verts + verts)
    piece_labels = tuple(lower_labels + labels)

    params = ContourParams(
        alpha=alpha, eta=eta, c_star=c_star, corner_eps=corner_eps,
        T=float(zeroset.T if len(zeroset) else T_eff), logx=logx,
    )
    tally = _tally_cases(blocks, slab_level)
    return ContourPath(
        vertices=vertices, piece_labels=piece_labels, params=params,
        case_tally=tally, covered_top=T_eff,
    )


def _is_block_boundary(t: float) -> bool:
    l = round(math.log2(t)) if t > 0 else -1
    return l >= 0 and abs(t - 2.0**l) < 1e-9


# --- validation -----------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    mirror_ok: bool
    connectivity_ok: bool
    clearance_ok: bool
    clearance_failures: tuple
    case_tally: dict

    @property
    def all_ok(self) -> bool:
        return self.mirror_ok and self.connectivity_ok and self.clearance_ok


def _vertical_segments(path: ContourPath) -> list[tuple[float, float, float]]:
    """(sigma, t_lo, t_hi) for every vertical piece, upper half only."""
    segs = []
    vs = path.vertices
    for a, b in zip(vs[:-1], vs[1:]):
        if a.real == b.real and a.imag != b.imag:
            lo, hi = sorted((a.imag, b.imag))
            if hi > 0:
                segs.append((a.real, max(lo, 0.0), hi))
    return segs


def _segment_arrays(path: ContourPath):
    segs = sorted(_vertical_segments(path), key=lambda s: s[1])
    sigma = np.array([s[0] for s in segs])
    lo = np.array([s[1] for s in segs])
    hi = np.array([s[2] for s in segs])
    return sigma, lo, hi


def _abscissa_at(heights: np.ndarray, sigma, lo, hi) -> np.ndarray:
    """Largest covering-piece abscissa per height; corner zones touch at most
    two consecutive pieces, so checking the insertion neighbor suffices."""
    t = np.abs(np.asarray(heights, dtype=np.float64))
    out = np.full(t.shape, -np.inf)
    idx = np.searchsorted(lo, t + 1e-12, side="right") - 1
    for off in (0, 1):
        j = np.clip(idx + off, 0, sigma.size - 1)
        covered = (lo[j] - 1e-12 <= t) & (t <= hi[j] + 1e-12)
        out = np.where(covered, np.maximum(out, sigma[j]), out)
    return out


def contour_abscissa(path: ContourPath, height: float) -> float:
    """Largest sigma of a vertical piece covering |height| (corner zones may
    touch two pieces; the larger one is the effective clearance)."""
    sigma, lo, hi = _segment_arrays(path)
    return float(_abscissa_at(np.array([height]), sigma, lo, hi)[0])


def validate_contour(path: ContourPath, zeroset: ZeroSet, alpha: float) -> ValidationReport:
    """Mirror symmetry, connectivity/axis-parallel chaining, zero clearance."""
    vs = path.vertices
    n = len(vs)
    mirror_ok = all(
        abs(vs[i] - vs[n - 1 - i].conjugate()) < 1e-12 for i in range(n)
    )
    connectivity_ok = True
    for a, b in zip(vs[:-1], vs[1:]):
        same_re = a.real == b.real
        same_im = a.imag == b.imag
        if same_re == same_im:  # both (zero-length) or neither (diagonal)
            connectivity_ok = False
            break

    failures = []
    relevant = (zeroset.beta >= alpha) & (zeroset.gamma <= path.covered_top) if len(zeroset) else None
    if relevant is not None and relevant.any():
        eps = path.params.corner_eps
        c_star = path.params.c_star
        betas = zeroset.beta[relevant]
        gammas = zeroset.gamma[relevant]
        levels = np.maximum(np.floor(np.log2(gammas)).astype(np.int64), BLOCK_MIN_L)
        margins = c_star / np.log(np.log(2.0 * (2.0**levels + 12)))
        required = betas + margins - eps
        got = _abscissa_at(gammas, *_segment_arrays(path))
        for i in np.nonzero(got < required - 1e-12)[0]:
            failures.append(
                (float(betas[i]), float(gammas[i]), float(got[i]), float(required[i]))
            )
    return ValidationReport(
        mirror_ok=mirror_ok,
        connectivity_ok=connectivity_ok,
        clearance_ok=not failures,
        clearance_failures=tuple(failures),
        case_tally=dict(path.case_tally),
    )


# --- zero-density accounting ------------------------------------------------------

HUXLEY_EXPONENT = 12.0 / 5.0
HUXLEY_LOG_POWER = 44


@dataclass(frozen=True)
class DensityReport:
    sigma: float
    T: float
    count: int
    envelope: float      # T^{(12/5)(1-sigma)} (log T)^44
    ratio: float
    exceptional_sigma: Optional[float] = None
    exceptional_count: Optional[int] = None
    exceptional_envelope: Optional[float] = None  # T^eps


def zero_density_count(
    zeroset: ZeroSet,
    sigma: float,
    T: float,
    c_star: Optional[float] = None,
    eps: float = 0.01,
) -> DensityReport:
    """N(sigma, T) with the unconditional envelope ratio; optionally also the
    exceptional count at sigma = 1 - C*/log log T against T^eps."""
    if not (0.5 <= sigma <= 1.0):
        raise ValueError("sigma must lie in [1/2, 1]")
    sel = (zeroset.beta >= sigma) & (zeroset.gamma > 0) & (zeroset.gamma <= T)
    count = int(np.count_nonzero(sel))
    envelope = T ** (HUXLEY_EXPONENT * (1.0 - sigma)) * math.log(T) ** HUXLEY_LOG_POWER
    report = dict(sigma=sigma, T=T, count=count, envelope=envelope, ratio=count / envelope)
    if c_star is not None:
        sigma0 = c_star / math.log(math.log(T))
        esel = (zeroset.beta >= 1.0 - sigma0) & (zeroset.gamma > 0) & (zeroset.gamma <= T)
        report.update(
            exceptional_sigma=1.0 - sigma0,
            exceptional_count=int(np.count_nonzero(esel)),
            exceptional_envelope=T**eps,
        )
    return DensityReport(**report)


# --- |zeta| diagnostic along the contour -------------------------------------------

def log_zeta_diagnostic(path: ContourPath, a5: float = 1.0, samples: int = 128) -> dict:
    """Empirical max of |log zeta| at sampled contour points vs a5 log T/log log T.

    Meaningful for table-sourced sets (the real zeta); heights are capped at
    the validated box.
    """
    from .special import DEFAULT_PRECISION, zeta_batch

    pts = []
    for sigma, lo, hi in _vertical_segments(path):
        mid = 0.5 * (lo + hi)
        if mid <= 1.0e5 and abs(complex(sigma, mid) - 1.0) > 0.1:
            pts.append(complex(sigma, mid))
    if not pts:
        return {"max_abs_log_zeta": 0.0, "cap": math.inf, "ratio": 0.0, "samples": 0}
    pts = pts[: max(1, samples)]
    vals = zeta_batch(np.array(pts), DEFAULT_PRECISION)
    logs = np.abs(np.log(vals))
    T = path.covered_top
    cap = a5 * math.log(T) / math.log(math.log(T))
    mx = float(np.max(logs))
    return {"max_abs_log_zeta": mx, "cap": cap, "ratio": mx / cap, "samples": len(pts)}
