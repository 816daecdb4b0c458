"""Integral bichromatic 2-center on the grid [1..U] x [1..U].

Radii are always handled as squared integers ``k`` (radius ``sqrt(k)``),
so every comparison here is exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

BIG = 1 << 40


@dataclass(frozen=True)
class PrunedInstance:
    """Pairs reduced to row-extreme partners.

    ``points`` are the distinct pair points; ``Tprime_a`` maps each to its
    leftmost and rightmost partner on every row.
    """

    U: int
    pairs: tuple
    Tprime_a: dict = field(repr=False)
    points: np.ndarray = field(repr=False)
    partners: tuple = field(repr=False)

    @property
    def Tprime(self) -> tuple:
        return self.pairs


def _check_coords(T, U: int) -> np.ndarray:
    if U < 1:
        raise ValueError("U must be positive")
    arr = np.asarray(T, dtype=object).reshape(-1, 2, 2) if len(T) else np.empty((0, 2, 2), dtype=object)
    out = np.empty(arr.shape, dtype=np.int64)
    for idx, v in np.ndenumerate(arr):
        if isinstance(v, bool) or int(v) != v:
            raise ValueError(f"coordinate {v!r} is not an integer")
        if not 1 <= int(v) <= U:
            raise ValueError(f"coordinate {v} outside [1, {U}]")
        out[idx] = int(v)
    return out


def prune_extremes(T, U: int) -> PrunedInstance:
    """Keep, for every point a, only the leftmost and rightmost partner of a
    on each row; a pair survives if it is extreme for either end."""
    arr = _check_coords(T, U)
    partners: dict[tuple, set] = {}
    for (a, b) in arr.tolist():
        a, b = tuple(a), tuple(b)
        partners.setdefault(a, set()).add(b)
        partners.setdefault(b, set()).add(a)
    ext: dict[tuple, list] = {}
    for a, bs in partners.items():
        rows: dict[int, list] = {}
        for b in bs:
            lo_hi = rows.setdefault(b[1], [b[0], b[0]])
            lo_hi[0] = min(lo_hi[0], b[0])
            lo_hi[1] = max(lo_hi[1], b[0])
        ext[a] = sorted({(x, y) for y, xs in rows.items() for x in xs}, key=lambda p: (p[1], p[0]))
    kept = set()
    for a, bs in ext.items():
        for b in bs:
            kept.add((min(a, b), max(a, b)))
    pts = sorted(ext, key=lambda p: (p[1], p[0]))
    index = {p: n for n, p in enumerate(pts)}
    return PrunedInstance(
        U=U,
        pairs=tuple(sorted(kept)),
        Tprime_a={a: list(bs) for a, bs in ext.items()},
        points=np.array(pts, dtype=np.int64).reshape(-1, 2),
        partners=tuple(tuple(index[b] for b in ext[a]) for a in pts),
    )


def isqrt_floor(v: np.ndarray) -> np.ndarray:
    """Exact elementwise floor(sqrt(v)) for nonnegative int64 arrays."""
    s = np.floor(np.sqrt(v.astype(np.float64))).astype(np.int64)
    s -= (s * s > v).astype(np.int64)
    s += ((s + 1) * (s + 1) <= v).astype(np.int64)
    return s


def chords(points: np.ndarray, k: int, U: int) -> tuple[np.ndarray, np.ndarray]:
    """(lo, hi) of D_sqrt(k)(a) on every row, shape (len(points), U).

    Rows the disk misses get lo = BIG, hi = -BIG.  Not clipped to the grid.
    """
    j = np.arange(1, U + 1, dtype=np.int64)
    rem = k - (j[None, :] - points[:, 1:2]) ** 2
    ok = rem >= 0
    s = isqrt_floor(np.where(ok, rem, 0))
    lo = np.where(ok, points[:, 0:1] - s, BIG)
    hi = np.where(ok, points[:, 0:1] + s, -BIG)
    return lo, hi


@dataclass
class CandidateCenters:
    """Grid points in the pair region; ``mask[j-1, x-1]`` for point (x, j)."""

    mask: np.ndarray

    @property
    def rows(self) -> list[list[int]]:
        return [list(np.flatnonzero(r) + 1) for r in self.mask]

    def prefix_counts(self) -> np.ndarray:
        """``cnt[j-1, x]`` = number of candidates (x', j) with x' <= x."""
        c = np.zeros((self.mask.shape[0], self.mask.shape[1] + 1), dtype=np.int64)
        np.cumsum(self.mask, axis=1, out=c[:, 1:])
        return c


@dataclass
class RowSweepState:
    """Interval endpoints of one row and the depth they produce."""

    row: int
    events: list
    depth: np.ndarray


def _region_intervals(P: PrunedInstance, lo: np.ndarray, hi: np.ndarray):
    """Per point a and row: the D_r(a) chord and the chord of I_r(T'_a)."""
    flat = np.fromiter((b for bs in P.partners for b in bs), dtype=np.int64)
    starts = np.cumsum([0] + [len(bs) for bs in P.partners[:-1]])
    tlo = np.maximum.reduceat(lo[flat], starts, axis=0)
    thi = np.minimum.reduceat(hi[flat], starts, axis=0)
    return tlo, thi


def _clip(lo, hi, U):
    lo = np.clip(lo, 1, U + 1)
    hi = np.clip(hi, 0, U)
    return lo, hi


def row_sweep(P: PrunedInstance, k: int, j: int) -> RowSweepState:
    """Depth of every grid point on row j: how many I_a contain it."""
    U = P.U
    lo, hi = chords(P.points, k, U)
    tlo, thi = _region_intervals(P, lo, hi)
    dlo, dhi = _clip(lo[:, j - 1], hi[:, j - 1], U)
    ilo, ihi = _clip(tlo[:, j - 1], thi[:, j - 1], U)
    events = []
    for a in range(len(P.points)):
        pieces = [(dlo[a], dhi[a]), (ilo[a], ihi[a])]
        pieces = sorted((s, e) for s, e in pieces if s <= e)
        merged = []
        for s, e in pieces:
            if merged and s <= merged[-1][1] + 1:
                merged[-1] = (merged[-1][0], max(merged[-1][1], e))
            else:
                merged.append((s, e))
        for s, e in merged:
            events.append((int(s), +1))
            events.append((int(e) + 1, -1))
    assert len(events) <= 4 * len(P.points)
    diff = np.zeros(U + 2, dtype=np.int64)
    for x, d in events:
        diff[x] += d
    return RowSweepState(j, events, np.cumsum(diff)[1:U + 1])


def candidate_centers(P: PrunedInstance, k: int, lo=None, hi=None) -> CandidateCenters:
    """All grid points c with, for every a, c in D_r(a) or c in I_r(T'_a)."""
    U, N = P.U, len(P.points)
    if lo is None:
        lo, hi = chords(P.points, k, U)
    tlo, thi = _region_intervals(P, lo, hi)
    dlo, dhi = _clip(lo, hi, U)
    ilo, ihi = _clip(tlo, thi, U)
    # union count = D + I - (D and I)
    blo, bhi = np.maximum(dlo, ilo), np.minimum(dhi, ihi)
    rows = np.broadcast_to(np.arange(U)[None, :], dlo.shape)
    diff = np.zeros((U, U + 2), dtype=np.int64)
    for s, e, sign in ((dlo, dhi, 1), (ilo, ihi, 1), (blo, bhi, -1)):
        ok = s <= e
        np.add.at(diff, (rows[ok], s[ok]), sign)
        np.add.at(diff, (rows[ok], e[ok] + 1), -sign)
    depth = np.cumsum(diff, axis=1)[:, 1:U + 1]
    return CandidateCenters(depth == N)


@dataclass
class PrefixDecomposition:
    """Row-j bookkeeping for centers p_i = (i, j).

    ``xi[a]``: first i with a in P'(p_i); ``eta[a]``: last i with a in
    P''(p_i).  ``lo1/hi1[i-1, j'-1]`` bound I'_{i,j'}, ``lo2/hi2`` bound I''.
    """

    row: int
    xi: np.ndarray
    eta: np.ndarray
    lo1: np.ndarray
    hi1: np.ndarray
    lo2: np.ndarray
    hi2: np.ndarray

    def Q(self, i: int) -> list[int]:
        return [int(a) for a in np.flatnonzero(self.xi == i)]

    def P1(self, i: int) -> set:
        return {int(a) for a in np.flatnonzero(self.xi <= i)}

    def P2(self, i: int) -> set:
        return {int(a) for a in np.flatnonzero(self.eta >= i)}

    def interval(self, i: int, jp: int) -> tuple[int, int]:
        return (int(max(self.lo1[i - 1, jp - 1], self.lo2[i - 1, jp - 1])),
                int(min(self.hi1[i - 1, jp - 1], self.hi2[i - 1, jp - 1])))


def prefix_decomposition(P: PrunedInstance, k: int, j: int, lo=None, hi=None) -> PrefixDecomposition:
    U = P.U
    if lo is None:
        lo, hi = chords(P.points, k, U)
    ax = P.points[:, 0]
    s_row = hi[:, j - 1] - ax
    outside = lo[:, j - 1] == BIG
    xi = np.where(outside, ax, ax + s_row + 1)
    eta = np.where(outside, ax, ax - s_row - 1)

    def accumulate(keys, valid, order):
        lo_acc = np.full((U + 2, U), -BIG, dtype=np.int64)
        hi_acc = np.full((U + 2, U), BIG, dtype=np.int64)
        np.maximum.at(lo_acc, keys[valid], lo[valid])
        np.minimum.at(hi_acc, keys[valid], hi[valid])
        lo_acc, hi_acc = lo_acc[1:U + 1], hi_acc[1:U + 1]
        if order > 0:
            return np.maximum.accumulate(lo_acc, axis=0), np.minimum.accumulate(hi_acc, axis=0)
        return (np.maximum.accumulate(lo_acc[::-1], axis=0)[::-1],
                np.minimum.accumulate(hi_acc[::-1], axis=0)[::-1])

    lo1, hi1 = accumulate(xi, (xi >= 1) & (xi <= U), +1)
    lo2, hi2 = accumulate(eta, (eta >= 1) & (eta <= U), -1)
    return PrefixDecomposition(j, xi, eta, lo1, hi1, lo2, hi2)


def _first_in(C: CandidateCenters, jp: int, L: int, H: int) -> tuple[int, int]:
    row = C.mask[jp - 1, L - 1:H]
    return int(L + np.argmax(row)), jp


def _query_rows(C: CandidateCenters, cnt: np.ndarray, L: np.ndarray, H: np.ndarray):
    """First row j' whose candidates meet [L[j'], H[j']], or None."""
    U = C.mask.shape[0]
    L = np.clip(L, 1, U + 1)
    H = np.clip(H, 0, U)
    ok = L <= H
    rows = np.arange(U)
    hit = ok & (cnt[rows, np.where(ok, H, 0)] - cnt[rows, np.where(ok, L - 1, 0)] > 0)
    if not hit.any():
        return None
    jp = int(np.argmax(hit))
    return _first_in(C, jp + 1, int(L[jp]), int(H[jp]))


def _step2_prefix(P: PrunedInstance, k: int, C: CandidateCenters, lo, hi):
    U = P.U
    cnt = C.prefix_counts()
    rows = np.arange(U)
    for j in range(1, U + 1):
        if not C.mask[j - 1].any():
            continue
        D = prefix_decomposition(P, k, j, lo, hi)
        L = np.clip(np.maximum(D.lo1, D.lo2), 1, U + 1)
        H = np.clip(np.minimum(D.hi1, D.hi2), 0, U)
        ok = L <= H
        hit = ok & (cnt[rows[None, :], np.where(ok, H, 0)] - cnt[rows[None, :], np.where(ok, L - 1, 0)] > 0)
        hit &= C.mask[j - 1][:, None]
        if hit.any():
            i, jp = np.unravel_index(int(np.argmax(hit)), hit.shape)
            return (int(i) + 1, j), _first_in(C, int(jp) + 1, int(L[i, jp]), int(H[i, jp]))
    return None


def _step2_pieces(P: PrunedInstance, k: int, C: CandidateCenters, lo, hi):
    """Along a row the far set P(p) only changes where p crosses a circle,
    and the whole grid has few distinct far sets; query each once."""
    U = P.U
    cnt = C.prefix_counts()
    dlo, dhi = _clip(lo, hi, U)
    ends = np.concatenate([np.ones((1, U), dtype=np.int64), dlo, np.where(dlo <= dhi, dhi + 1, U + 1)])
    starts = np.sort(np.clip(ends, 1, U + 1), axis=0).T
    stops = np.concatenate([starts[:, 1:], np.full((U, 1), U + 1)], axis=1) - 1
    rows = np.arange(U)[:, None]
    valid = (starts <= stops) & (starts <= U)
    s_safe = np.where(valid, starts, 1)
    e_safe = np.where(valid, stops, 0)
    valid &= cnt[rows, e_safe] - cnt[rows, s_safe - 1] > 0
    if not valid.any():
        return None
    jj, qq = np.nonzero(valid)
    xs = starts[jj, qq]
    far = ~((dlo[:, jj] <= xs) & (xs <= dhi[:, jj])).T
    keys, first = np.unique(np.packbits(far, axis=1), axis=0, return_index=True)
    for f in np.sort(first):
        X = np.flatnonzero(far[f])
        j = int(jj[f]) + 1
        p = _first_in(C, j, int(xs[f]), int(stops[j - 1, qq[f]]))
        if len(X) == 0:
            return p, p
        got = _query_rows(C, cnt, lo[X].max(axis=0), hi[X].min(axis=0))
        if got is not None:
            return p, got
    return None


def ib2c_decision_sq(P: PrunedInstance, k: int, method: str = "auto"):
    """Integral centers (c1, c2) with radius sqrt(k) covering T', or None."""
    if k < 0:
        return None
    if len(P.points) == 0:
        return (1, 1), (1, 1)
    lo, hi = chords(P.points, k, P.U)
    C = candidate_centers(P, k, lo, hi)
    if not C.mask.any():
        return None
    if method == "auto":
        method = "pieces" if 4 * len(P.points) < P.U else "prefix"
    if method == "prefix":
        return _step2_prefix(P, k, C, lo, hi)
    if method == "pieces":
        return _step2_pieces(P, k, C, lo, hi)
    raise ValueError(f"unknown method {method!r}")


def radius_to_sq(r: float) -> int:
    """Largest integer k with sqrt(k) <= r, forgiving float noise in r."""
    if r < 0:
        return -1
    v = r * r
    k = round(v)
    if abs(v - k) <= 1e-9 * max(1.0, v):
        return int(k)
    return int(math.floor(v))


def ib2c_decision(P: PrunedInstance, r: float, method: str = "auto"):
    return ib2c_decision_sq(P, radius_to_sq(r), method)


def ib2c_solve_sq(T, U: int, method: str = "auto", k_lo: int = 0, k_hi: Optional[int] = None):
    """(k, c1, c2) for the smallest feasible k in [k_lo, k_hi].

    ``k_hi`` must be feasible; the default 2(U-1)^2 always is.
    """
    P = T if isinstance(T, PrunedInstance) else prune_extremes(T, U)
    if len(P.points) == 0:
        return 0, (1, 1), (1, 1)
    hi = 2 * (P.U - 1) ** 2 if k_hi is None else k_hi
    best = ib2c_decision_sq(P, hi, method)
    if best is None:
        raise ValueError(f"k_hi={hi} is not feasible")
    lo = max(0, k_lo)
    while lo < hi:
        mid = (lo + hi) // 2
        res = ib2c_decision_sq(P, mid, method)
        if res is None:
            lo = mid + 1
        else:
            hi, best = mid, res
    return hi, best[0], best[1]


def ib2c_solve(T, U: int, method: str = "auto"):
    """(r, c1, c2) with r the optimal radius sqrt(k) and integral centers."""
    k, c1, c2 = ib2c_solve_sq(T, U, method)
    return math.sqrt(k), c1, c2


def load_ib2c(text: str):
    """Parse ``{"U": int, "pairs": [[[x, y], [x, y]], ...]}``."""
    data = json.loads(text)
    U = data["U"]
    if not isinstance(U, int):
        raise ValueError("U must be an integer")
    pairs = [tuple(tuple(p) for p in pair) for pair in data["pairs"]]
    _check_coords(pairs, U)
    return U, pairs


def dump_ib2c(U: int, pairs) -> str:
    return json.dumps({"U": int(U), "pairs": [[list(map(int, a)), list(map(int, b))] for a, b in pairs]})
