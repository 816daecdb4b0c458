"""Brute-force solvers and solution checks.

Nothing here depends on the solver modules; only :mod:`geometry` is shared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    Disk,
    Instance,
    Point,
    Solution,
    Tolerance,
    _scale_of,
    sed_tuple,
)


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_pairs_exact: int = 15
    max_U: int = 14

    def __post_init__(self):
        if self.max_pairs_exact < 1 or self.max_U < 1:
            raise ValueError("budgets must be positive")


DEFAULT_BUDGET = OracleBudget()


def brute_exact(instance: Instance, budget: OracleBudget = DEFAULT_BUDGET) -> Solution:
    """Optimal solution by trying every coloring.

    The first pair is pinned (color symmetry), so ``2**(n-1)`` colorings are
    tried, each costing two smallest-enclosing-disk computations.
    """
    n = len(instance)
    if n > budget.max_pairs_exact:
        raise BudgetExceeded(f"{n} pairs exceeds the exact oracle budget of {budget.max_pairs_exact}")
    pairs = instance.pairs
    best = None
    for bits in product((0, 1), repeat=n - 1):
        coloring = (0,) + bits
        red = [p[c] for p, c in zip(pairs, coloring)]
        blue = [p[1 - c] for p, c in zip(pairs, coloring)]
        d1 = sed_tuple(red)
        if best is not None and d1[2] >= best[0]:
            continue
        d2 = sed_tuple(blue)
        r = max(d1[2], d2[2])
        if best is None or r < best[0]:
            best = (r, d1, d2, coloring)
    r, d1, d2, coloring = best
    return Solution(Disk(Point(d1[0], d1[1]), r), Disk(Point(d2[0], d2[1]), r), coloring, r)


def _pair_array(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2, 2)
    return arr


def brute_ib2c_sq(pairs, U: int, budget: OracleBudget = DEFAULT_BUDGET):
    """Exact IB2C optimum as ``(k, c1, c2)`` with radius ``sqrt(k)``.

    Every ordered pair of centers in ``[1..U]^2`` is tried; all arithmetic is
    on squared integer distances.
    """
    if U > budget.max_U:
        raise BudgetExceeded(f"U={U} exceeds the IB2C oracle budget of {budget.max_U}")
    arr = _pair_array(pairs)
    if arr.shape[0] == 0:
        return 0, (1, 1), (1, 1)
    xs, ys = np.meshgrid(np.arange(1, U + 1), np.arange(1, U + 1), indexing="ij")
    centers = np.stack([xs.ravel(), ys.ravel()], axis=1)
    # d[c, k, s]: squared distance from center c to point s of pair k
    diff = centers[:, None, None, :] - arr[None, :, :, :]
    d = (diff**2).sum(axis=-1)
    a1 = d[:, None, :, 0]
    b1 = d[:, None, :, 1]
    a2 = d[None, :, :, 0]
    b2 = d[None, :, :, 1]
    cost = np.minimum(np.maximum(a1, b2), np.maximum(b1, a2)).max(axis=2)
    flat = int(np.argmin(cost))
    i, j = divmod(flat, len(centers))
    return int(cost[i, j]), tuple(int(v) for v in centers[i]), tuple(int(v) for v in centers[j])


def brute_ib2c(pairs, U: int, budget: OracleBudget = DEFAULT_BUDGET):
    k, c1, c2 = brute_ib2c_sq(pairs, U, budget)
    return math.sqrt(k), c1, c2


def covers_integral(pairs, c1, c2, k: int) -> bool:
    """Whether D_sqrt(k)(c1), D_sqrt(k)(c2) bichromatically cover the integral pairs."""
    arr = _pair_array(pairs)
    if arr.shape[0] == 0:
        return True
    d1 = ((arr - np.asarray(c1)) ** 2).sum(axis=-1) <= k
    d2 = ((arr - np.asarray(c2)) ** 2).sum(axis=-1) <= k
    return bool(np.all((d1[:, 0] & d2[:, 1]) | (d1[:, 1] & d2[:, 0])))


def covers_real(pairs, c1, c2, r: float) -> bool:
    """Exact-arithmetic-free cover check for real disks (no tolerance)."""
    arr = np.asarray(pairs, dtype=float).reshape(-1, 2, 2)
    d1 = np.hypot(*(arr - np.asarray(c1, dtype=float)).transpose(2, 0, 1)) <= r
    d2 = np.hypot(*(arr - np.asarray(c2, dtype=float)).transpose(2, 0, 1)) <= r
    return bool(np.all((d1[:, 0] & d2[:, 1]) | (d1[:, 1] & d2[:, 0])))


def verify_solution(instance: Instance, sol: Solution, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the two disks bichromatically cover the instance and the
    stored coloring is one such assignment."""
    if sol is None or len(sol.coloring) != len(instance):
        return False
    if not (sol.disk1.radius == sol.disk2.radius == sol.radius):
        return False
    c1, c2 = sol.disk1.center, sol.disk2.center
    arr = instance.array()
    lim = tol.inflate(sol.radius, max(instance.scale, _scale_of((c1, c2))))
    in1 = np.hypot(arr[..., 0] - c1.x, arr[..., 1] - c1.y) <= lim
    in2 = np.hypot(arr[..., 0] - c2.x, arr[..., 1] - c2.y) <= lim
    for k, color in enumerate(sol.coloring):
        if color not in (0, 1):
            return False
        red, blue = color, 1 - color
        if not (in1[k, red] and in2[k, blue]):
            return False
    return True
