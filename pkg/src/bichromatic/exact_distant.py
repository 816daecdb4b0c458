"""Solver for configurations whose optimal disk centers are far apart.

A line through the smallest enclosing disk of all points splits off a point
set ``P1`` that one disk must cover with a point of ``P1`` on its boundary.
That disk's center then lies on the boundary of the common intersection of
the r-disks around ``P1``, and only finitely many boundary positions need to
be tried.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    Instance,
    Point,
    Solution,
    Tolerance,
    _scale_of,
    candidate_radii,
    make_solution,
    sed_tuple,
)
from .regions import boundary_arcs, circle_meets, meet_point


@dataclass(frozen=True)
class SideSpec:
    """One closed side of a candidate line and the points on it.

    ``mask`` selects P1 from ``Instance.points`` order.
    """

    line_point: Point
    direction: Point
    side: str
    mask: tuple[bool, ...]

    def P1(self, points: Sequence) -> list:
        return [p for p, m in zip(points, self.mask) if m]


def candidate_lines(points: Sequence, orientations: int = 4,
                    offsets: Sequence[float] = (0.0,)) -> list[SideSpec]:
    """Both closed sides of lines through the smallest-enclosing-disk center.

    Line directions are ``k*pi/orientations``; ``offsets`` shift each line
    along its normal in units of the enclosing radius.  Points on a line
    belong to both of its sides.  Empty and repeated sides are dropped.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    cx, cy, rt = sed_tuple(pts)
    eps = 1e-12 * max(_scale_of(pts), 1.0)
    specs, seen = [], set()
    for k in range(orientations):
        theta = k * math.pi / orientations
        d = np.array([math.cos(theta), math.sin(theta)])
        normal = np.array([-d[1], d[0]])
        for f in offsets:
            base = np.array([cx, cy]) + f * rt * normal
            s = (pts - base) @ normal
            for side, mask in (("left", s >= -eps), ("right", s <= eps)):
                key = mask.tobytes()
                if not mask.any() or key in seen:
                    continue
                seen.add(key)
                specs.append(SideSpec(Point(*base), Point(*d), side, tuple(bool(m) for m in mask)))
    return specs


def _events(P1: np.ndarray, others: np.ndarray, r: float, tol: Tolerance):
    arcs = boundary_arcs(P1, r, tol)
    if arcs is None:
        return None
    idx, start, _ = arcs
    verts = P1[idx] + r * np.stack([np.cos(start), np.sin(start)], axis=1)
    defining = P1[np.unique(idx)]
    if len(others) == 0:
        return verts
    cross = circle_meets(defining, others, r, tol)
    if len(cross):
        lim = tol.inflate(r, max(_scale_of(P1), _scale_of(others)))
        d = np.hypot(cross[:, None, 0] - defining[None, :, 0], cross[:, None, 1] - defining[None, :, 1])
        cross = cross[d.max(axis=1) <= lim]
    return np.concatenate([verts, cross])


def distant_decision(instance: Instance, side: SideSpec, r: float,
                     tol: Tolerance = DEFAULT_TOL) -> Optional[Solution]:
    """Two radius-r disks covering the instance, the first holding all of P1
    with a P1 point on its boundary; None if no such pair exists."""
    pts = np.asarray(instance.points, dtype=float)
    mask = np.asarray(side.mask, dtype=bool)
    if not mask.any() or r < 0:
        return None
    events = _events(pts[mask], pts[~mask], r, tol)
    if events is None or len(events) == 0:
        return None
    lim = tol.inflate(r, max(_scale_of(pts), _scale_of(events)))
    cov = np.hypot(events[:, None, 0] - pts[None, :, 0], events[:, None, 1] - pts[None, :, 1]) <= lim
    ok = (cov[:, 0::2] | cov[:, 1::2]).all(axis=1)
    if not ok.any():
        return None
    events, cov = events[ok], cov[ok]
    # events with the same coverage pose the same question
    _, first = np.unique(cov, axis=0, return_index=True)
    pairs = pts.reshape(-1, 2, 2)
    for k in np.sort(first):
        e, c = events[k], cov[k]
        both = c[0::2] & c[1::2]
        rest = pts[~c]
        if len(rest) == 0:
            w = e
        else:
            w = meet_point(rest, pairs[both], e, r, tol)
        if w is None:
            continue
        sol = make_solution(instance, e, w, r, tol)
        if sol is not None:
            return sol
    return None


def _search(decide, cands: np.ndarray, lo: int, hi: int):
    """Smallest index in [lo, hi] where ``decide`` succeeds, given it
    succeeds at ``hi``; returns (index, result)."""
    best = decide(cands[hi])
    if best is None:
        return None
    while lo < hi:
        mid = (lo + hi) // 2
        res = decide(cands[mid])
        if res is None:
            lo = mid + 1
        else:
            hi, best = mid, res
    return hi, best


def distant_solve(instance: Instance, orientations: int = 4, offsets: Sequence[float] = (0.0,),
                  cands: Optional[np.ndarray] = None, upper: Optional[float] = None,
                  tol: Tolerance = DEFAULT_TOL) -> Optional[Solution]:
    """Best solution over all candidate sides, by binary search on the
    candidate radii; only radii below ``upper`` are considered."""
    points = instance.points
    pts = np.asarray(points, dtype=float)
    cx, cy, rt = sed_tuple(pts)
    if rt == 0.0:
        return make_solution(instance, (cx, cy), (cx, cy), 0.0, tol)
    if cands is None:
        cands = candidate_radii(pts, tol)
    hi_idx = len(cands)
    if upper is not None:
        hi_idx = int(np.searchsorted(cands, upper * (1.0 - tol.rel), side="left"))
    best = None
    for spec in candidate_lines(pts, orientations, offsets):
        if hi_idx == 0:
            break
        mask = np.asarray(spec.mask)
        r1 = sed_tuple(pts[mask])[2]
        lo = int(np.searchsorted(cands, r1 * (1.0 - tol.rel), side="left"))
        if lo >= hi_idx:
            continue
        found = _search(lambda r: distant_decision(instance, spec, r, tol), cands, lo, hi_idx - 1)
        if found is None:
            continue
        hi_idx, best = found
    return best
