"""(1+eps)-approximation: an exact branch for well-separated disks and a
grid branch that rounds the points and solves the integral problem."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import DEFAULT_TOL, Instance, Point, Solution, Tolerance, make_solution, sed_tuple
from .ib2c import ib2c_decision_sq, ib2c_solve_sq, prune_extremes

DELTA_FACTOR = 100.0
FAR_OFFSETS = (0.0, 0.5, -0.5)


@dataclass(frozen=True)
class GridTransform:
    origin: Point
    delta: float
    U: int

    def __post_init__(self):
        if not self.delta > 0 or self.U < 1:
            raise ValueError("need delta > 0 and U >= 1")

    def to_grid(self, p) -> tuple[int, int]:
        """Lower-left corner of the cell holding p, 1-based."""
        return (int(math.floor((p[0] - self.origin.x) / self.delta)) + 1,
                int(math.floor((p[1] - self.origin.y) / self.delta)) + 1)

    def to_world(self, g) -> Point:
        return Point(self.origin.x + self.delta * (g[0] - 1), self.origin.y + self.delta * (g[1] - 1))


@dataclass(frozen=True)
class IB2CInstance:
    U: int
    pairs: tuple
    transform: GridTransform


def _split(s: np.ndarray, eps: float):
    """Per pair, which point goes left of the line, or None if some pair
    has both points strictly on one side."""
    a, b = s[:, 0], s[:, 1]
    if np.any((a > eps) & (b > eps)) or np.any((a < -eps) & (b < -eps)):
        return None
    # point 0 goes left unless it is strictly right or its partner is strictly left
    return np.where((a < -eps) | ((np.abs(a) <= eps) & (b > eps)), 1, 0)


def far_case_solve(instance: Instance, tol: Tolerance = DEFAULT_TOL) -> Optional[Solution]:
    """Best split along a candidate line that every pair straddles."""
    arr = instance.array()
    pts = arr.reshape(-1, 2)
    cx, cy, rt = sed_tuple(pts)
    eps = 1e-12 * max(instance.scale, 1.0)
    best = None
    for k in range(4):
        theta = k * math.pi / 4
        normal = np.array([-math.sin(theta), math.cos(theta)])
        for f in FAR_OFFSETS:
            base = np.array([cx, cy]) + f * rt * normal
            left = _split((arr - base) @ normal, eps)
            if left is None:
                continue
            rows = np.arange(len(arr))
            red, blue = arr[rows, left], arr[rows, 1 - left]
            d1, d2 = sed_tuple(red), sed_tuple(blue)
            r = max(d1[2], d2[2])
            if best is None or r < best.radius:
                sol = make_solution(instance, d1[:2], d2[:2], r, tol)
                if sol is not None:
                    best = sol
    return best


def grid_snap(instance: Instance, eps: float) -> IB2CInstance:
    """Snap every point to the lower-left corner of its delta-cell."""
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    pts = np.asarray(instance.points, dtype=float)
    rt = sed_tuple(pts)[2]
    if rt == 0.0:
        raise ValueError("all points coincide; nothing to snap")
    delta = eps * rt / DELTA_FACTOR
    origin = Point(float(pts[:, 0].min()), float(pts[:, 1].min()))
    g = np.floor((pts - np.array(origin)) / delta).astype(np.int64) + 1
    U = int(g.max())
    tf = GridTransform(origin, delta, U)
    seen = set()
    for a, b in g.reshape(-1, 2, 2).tolist():
        a, b = tuple(a), tuple(b)
        seen.add((min(a, b), max(a, b)))
    return IB2CInstance(U, tuple(sorted(seen)), tf)


def _tight_radius(instance: Instance, c1, c2) -> float:
    arr = instance.array()
    d1 = np.hypot(arr[..., 0] - c1[0], arr[..., 1] - c1[1])
    d2 = np.hypot(arr[..., 0] - c2[0], arr[..., 1] - c2[1])
    per_pair = np.minimum(np.maximum(d1[:, 0], d2[:, 1]), np.maximum(d1[:, 1], d2[:, 0]))
    return float(per_pair.max())


def grid_branch(instance: Instance, eps: float, tol: Tolerance = DEFAULT_TOL) -> Solution:
    inst = grid_snap(instance, eps)
    tf = inst.transform
    P = prune_extremes(inst.pairs, inst.U)
    # a disk around the snapped enclosing center holds every snapped point
    rt = sed_tuple(instance.points)[2]
    k_hi = int(math.ceil((rt / tf.delta + 3.0) ** 2))
    if k_hi >= 2 * (inst.U - 1) ** 2 or ib2c_decision_sq(P, k_hi) is None:
        k_hi = None
    k, g1, g2 = ib2c_solve_sq(P, inst.U, k_hi=k_hi)
    c1, c2 = tf.to_world(g1), tf.to_world(g2)
    r = (1.0 + eps / 3.0) * math.sqrt(k) * tf.delta
    sol = make_solution(instance, c1, c2, r, tol)
    if sol is None:
        # too coarse a grid for the inflation to absorb the rounding
        sol = make_solution(instance, c1, c2, _tight_radius(instance, c1, c2), tol)
    return sol


def approx_solve(instance: Instance, eps: float, tol: Tolerance = DEFAULT_TOL) -> Solution:
    """Feasible solution within a factor 1+eps of optimal."""
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    cx, cy, rt = sed_tuple(instance.points)
    if rt == 0.0:
        return make_solution(instance, (cx, cy), (cx, cy), 0.0, tol)
    found = [far_case_solve(instance, tol), grid_branch(instance, eps, tol)]
    return min((s for s in found if s is not None), key=lambda s: s.radius)
