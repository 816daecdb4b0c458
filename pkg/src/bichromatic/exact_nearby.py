"""Solver for configurations whose optimal disks overlap.

If the two optimal disks share a point ``o``, sorting the points by angle
around ``o`` and cutting each half-plane's list once gives a split of the
points into a left and a right group (RB2C).  Each split is a cell of a
matrix whose optimum values are monotone enough for a staircase walk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    Disk,
    Instance,
    Point,
    Solution,
    Tolerance,
    candidate_radii,
    dedupe_sorted,
    extra_radii,
    make_solution,
    sed_tuple,
)
from .regions import meet_point, meet_point_general

DEFAULT_SPACING = 1.0 / (3.0 * math.sqrt(2.0))
HALF_SIDE = math.sqrt(3.0)


@dataclass(frozen=True)
class AngularPartition:
    o: Point
    axis: str
    Pplus: list
    Pminus: list
    plus_idx: tuple = field(repr=False, default=())
    minus_idx: tuple = field(repr=False, default=())

    @property
    def n1(self) -> int:
        return len(self.Pplus)

    @property
    def n2(self) -> int:
        return len(self.Pminus)


@dataclass(frozen=True)
class MatrixCellEval:
    """Optimum of one cell; ``left_tight`` says the left group alone needs
    less than ``r_star_ij``."""

    i: int
    j: int
    r_star_ij: float
    left_tight: bool


class RaysNote:
    """The two rays bounding the split only appear in the correctness
    argument; nothing at runtime represents them."""


def candidate_centers_o(points: Sequence, spacing: float = DEFAULT_SPACING,
                        half_side: float = HALF_SIDE) -> list[Point]:
    """Grid around the enclosing-disk center, fine enough that some grid
    point lies in both optimal disks whenever they overlap substantially.

    ``spacing`` and ``half_side`` are in units of the enclosing radius.
    """
    cx, cy, rt = sed_tuple(points)
    if rt == 0.0:
        return [Point(cx, cy)]
    step = spacing * rt
    k = int(math.floor(half_side / spacing + 1e-9))
    offs = np.arange(-k, k + 1) * step
    # center first so the best guess prunes the rest early
    out = [Point(cx, cy)]
    out += [Point(cx + a, cy + b) for a in offs for b in offs if a != 0.0 or b != 0.0]
    return out


def angular_partition(o, axis: str, points: Sequence) -> AngularPartition:
    """Points above (or on) the horizontal through ``o`` and those below,
    each sorted counterclockwise; ``axis="y"`` does the same with x and y
    swapped."""
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', not {axis!r}")
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    o = np.asarray(o, dtype=float)
    q, oo = (pts, o) if axis == "x" else (pts[:, ::-1], o[::-1])
    dx, dy = q[:, 0] - oo[0], q[:, 1] - oo[1]
    theta = np.mod(np.arctan2(dy, dx), 2.0 * math.pi)
    dist = np.hypot(dx, dy)
    plus = dy >= 0
    theta = np.where(plus & (theta >= 2.0 * math.pi - 1e-15), 0.0, theta)
    order = np.lexsort((dist, theta))
    plus_idx = tuple(int(k) for k in order if plus[k])
    minus_idx = tuple(int(k) for k in order if not plus[k])
    return AngularPartition(
        Point(float(o[0]), float(o[1])), axis,
        [Point(float(pts[k, 0]), float(pts[k, 1])) for k in plus_idx],
        [Point(float(pts[k, 0]), float(pts[k, 1])) for k in minus_idx],
        plus_idx, minus_idx,
    )


class _Cell:
    """Everything the one-sided tests of cell (i, j) need."""

    def __init__(self, pts: np.ndarray, part: AngularPartition, i: int, j: int, tol: Tolerance):
        if not (0 <= i <= part.n1 and 0 <= j <= part.n2):
            raise IndexError(f"cell ({i}, {j}) outside [0..{part.n1}]x[0..{part.n2}]")
        self.tol = tol
        inL = np.zeros(len(pts), dtype=bool)
        inL[list(part.plus_idx[i:])] = True
        inL[list(part.minus_idx[:j])] = True
        o = np.asarray(part.o, dtype=float).reshape(1, 2)
        self.AL = np.concatenate([pts[inL], o])
        self.AR = np.concatenate([pts[~inL], o])
        byPair = inL.reshape(-1, 2)
        pairs = pts.reshape(-1, 2, 2)
        self.S1 = pairs[byPair.all(axis=1)]
        self.S2 = pairs[(~byPair).all(axis=1)]
        x1, y1, self.r1 = sed_tuple(self.AL)
        x2, y2, self.r2 = sed_tuple(self.AR)
        self.c1 = np.array([x1, y1])
        self.c2 = np.array([x2, y2])

    def below(self, r: float, bound: float) -> bool:
        return r < bound * (1.0 - self.tol.rel)

    def left(self, r: float):
        """Center for the left disk at radius r (r >= r2 unless S2 is empty)."""
        if len(self.S2) and self.below(r, self.r2):
            return meet_point_general(self.AL, self.S2, r, self.tol)
        return meet_point(self.AL, self.S2, self.c2, r, self.tol)

    def right(self, r: float):
        if len(self.S1) and self.below(r, self.r1):
            return meet_point_general(self.AR, self.S1, r, self.tol)
        return meet_point(self.AR, self.S1, self.c1, r, self.tol)

    def both(self, r: float):
        if self.below(r, max(self.r1, self.r2)):
            return None
        w1 = self.left(r)
        if w1 is None:
            return None
        w2 = self.right(r)
        if w2 is None:
            return None
        return w1, w2

    def tight_below(self, cands: np.ndarray, k: int) -> bool:
        """Whether the left group alone fits below ``cands[k]``, the cell optimum."""
        if k == 0:
            return False
        prev = cands[k - 1]
        if self.below(prev, self.r1):
            return False
        if self.below(prev, self.r2):
            # the right group already needs cands[k], so pruning southwest is safe
            return True
        return self.left(prev) is not None


def _lower_index(cands: np.ndarray, r: float, tol: Tolerance) -> int:
    return int(np.searchsorted(cands, r * (1.0 - tol.rel), side="left"))


def _bisect(cell: _Cell, cands: np.ndarray, lo: int, hi: int):
    """Smallest index in [lo, hi] passing both tests, given ``hi`` passes."""
    best = cell.both(cands[hi])
    if best is None:
        return None
    while lo < hi:
        mid = (lo + hi) // 2
        res = cell.both(cands[mid])
        if res is None:
            lo = mid + 1
        else:
            hi, best = mid, res
    return hi, best


def rb2c_decision(instance: Instance, part: AngularPartition, i: int, j: int, r: float,
                  tol: Tolerance = DEFAULT_TOL) -> Optional[tuple[Disk, Disk]]:
    """Disks of radius r, the first covering L_ij and o, the second R_ij and o,
    together covering every pair; None when impossible."""
    if r < 0:
        return None
    cell = _Cell(np.asarray(instance.points, dtype=float), part, i, j, tol)
    res = cell.both(r)
    if res is None:
        return None
    w1, w2 = res
    return Disk(Point(*w1), r), Disk(Point(*w2), r)


def rb2c_optimize(instance: Instance, part: AngularPartition, i: int, j: int,
                  candidates: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> MatrixCellEval:
    """Smallest candidate radius at which cell (i, j) is feasible."""
    cands = np.asarray(candidates, dtype=float)
    cell = _Cell(np.asarray(instance.points, dtype=float), part, i, j, tol)
    lo = _lower_index(cands, max(cell.r1, cell.r2), tol)
    found = _bisect(cell, cands, lo, len(cands) - 1) if lo < len(cands) else None
    if found is None:
        return MatrixCellEval(i, j, math.inf, False)
    k, _ = found
    return MatrixCellEval(i, j, float(cands[k]), cell.tight_below(cands, k))


def one_sided_optima(instance: Instance, part: AngularPartition, i: int, j: int,
                     candidates: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> tuple[float, float]:
    """(l_ij, r_ij): smallest candidates passing the left and right tests alone."""
    cands = np.asarray(candidates, dtype=float)
    cell = _Cell(np.asarray(instance.points, dtype=float), part, i, j, tol)
    out = []
    for test, bound in ((cell.left, cell.r1), (cell.right, cell.r2)):
        lo, hi = _lower_index(cands, bound, tol), len(cands) - 1
        if lo > hi or test(cands[hi]) is None:
            out.append(math.inf)
            continue
        while lo < hi:
            mid = (lo + hi) // 2
            if test(cands[mid]) is None:
                lo = mid + 1
            else:
                hi = mid
        out.append(float(cands[hi]))
    return out[0], out[1]


def matrix_search(part: AngularPartition, evaluator: Callable[[int, int], MatrixCellEval],
                  trace: Optional[list] = None):
    """Staircase walk from (0, 0); returns (min value, argmin cell).

    A left-tight cell rules out everything south-west of it (larger i, smaller
    j), otherwise everything north-east; each step drops a row or a column.
    """
    i = j = 0
    best, arg = math.inf, (0, 0)
    while i <= part.n1 and j <= part.n2:
        ev = evaluator(i, j)
        if trace is not None:
            trace.append(ev)
        if ev.r_star_ij < best:
            best, arg = ev.r_star_ij, (i, j)
        if ev.left_tight:
            j += 1
        else:
            i += 1
    return best, arg


class _ThresholdEvaluator:
    """Evaluator that only works out a cell's optimum when it beats the best
    value found so far; other cells get just enough work to pick a
    direction."""

    def __init__(self, pts, part, cands, tol, threshold):
        self.pts, self.part, self.cands, self.tol = pts, part, cands, tol
        self.t = threshold
        self.found = None

    def __call__(self, i: int, j: int) -> MatrixCellEval:
        cell = _Cell(self.pts, self.part, i, j, self.tol)
        limit = self.t * (1.0 - self.tol.rel)
        # an infeasible side at t rules out the whole pruned block as well
        if cell.r1 >= limit:
            return MatrixCellEval(i, j, math.inf, False)
        if cell.r2 >= limit:
            return MatrixCellEval(i, j, math.inf, True)
        top = int(np.searchsorted(self.cands, limit, side="left")) - 1
        if top < 0:
            return MatrixCellEval(i, j, math.inf, False)
        p = self.cands[top]
        if cell.below(p, max(cell.r1, cell.r2)):
            return MatrixCellEval(i, j, math.inf, cell.r1 <= cell.r2)
        if cell.left(p) is None:
            return MatrixCellEval(i, j, math.inf, False)
        if cell.right(p) is None:
            return MatrixCellEval(i, j, math.inf, True)
        lo = _lower_index(self.cands, max(cell.r1, cell.r2), self.tol)
        k, _ = _bisect(cell, self.cands, min(lo, top), top)
        r = float(self.cands[k])
        self.t = r
        self.found = (r, i, j)
        return MatrixCellEval(i, j, r, cell.tight_below(self.cands, k))


def _candidates_with(base: np.ndarray, pts: np.ndarray, o, tol: Tolerance) -> np.ndarray:
    merged = np.concatenate([base, extra_radii(pts, o)])
    merged.sort()
    return dedupe_sorted(merged, tol)


def nearby_solve(instance: Instance, upper: Optional[float] = None, cands: Optional[np.ndarray] = None,
                 spacing: float = DEFAULT_SPACING, tol: Tolerance = DEFAULT_TOL) -> Optional[Solution]:
    """Best RB2C solution over all grid points o and both axes.

    With ``upper`` only solutions strictly better than it are sought, and
    None means there is none.
    """
    pts = np.asarray(instance.points, dtype=float)
    cx, cy, rt = sed_tuple(pts)
    if rt == 0.0:
        return make_solution(instance, (cx, cy), (cx, cy), 0.0, tol)
    if cands is None:
        cands = candidate_radii(pts, tol)
    t = math.inf if upper is None else float(upper)
    best = None
    for o in candidate_centers_o(pts, spacing):
        # every point lies in a disk through o
        if np.hypot(pts[:, 0] - o.x, pts[:, 1] - o.y).max() / 2.0 >= t * (1.0 - tol.rel):
            continue
        cands_o = _candidates_with(cands, pts, o, tol)
        for axis in ("x", "y"):
            part = angular_partition(o, axis, pts)
            ev = _ThresholdEvaluator(pts, part, cands_o, tol, t)
            matrix_search(part, ev)
            if ev.found is not None:
                t = ev.found[0]
                best = (part, ev.found)
    if best is None:
        return None
    part, (r, i, j) = best
    d1, d2 = rb2c_decision(instance, part, i, j, r, tol)
    return make_solution(instance, d1.center, d2.center, r, tol)
