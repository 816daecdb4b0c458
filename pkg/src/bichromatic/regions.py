"""Disk-intersection and pair-union regions of a common radius.

``CommonIntersection`` is the convex region covered by every disk D_r(a) for
a in a site set.  ``UnionChain`` is the region within r of at least one point
of every pair, which is star-shaped around any anchor whose r-disk covers all
pair points.  Boundaries are stored as circular arcs keyed by the defining
site plus an angle range.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional

import numpy as np

from .geometry import DEFAULT_TOL, GeometryError, Point, Tolerance, _scale_of

TWO_PI = 2.0 * math.pi
# arcs shorter than this (radians, negative) still count as touching
ANGLE_SLACK = 1e-7
# open-mode tests shrink the radius by this many tolerance units
OPEN_MARGIN = 100.0


class Arc(NamedTuple):
    site: int
    start: float
    end: float

    @property
    def length(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class Interval1D:
    low: float
    high: float
    line_y: float
    empty: bool = False

    def __contains__(self, x: float) -> bool:
        return not self.empty and self.low <= x <= self.high

    @classmethod
    def nothing(cls, y: float) -> "Interval1D":
        return cls(math.inf, -math.inf, y, True)


def _wrap(a: np.ndarray) -> np.ndarray:
    """Map angles into (-pi, pi]."""
    return np.pi - np.mod(np.pi - a, TWO_PI)


def _limit(r: float, scale: float, tol: Tolerance) -> float:
    return tol.inflate(r, scale)


def boundary_arcs(sites: np.ndarray, r: float, tol: Tolerance = DEFAULT_TOL):
    """Arcs of the boundary of the common intersection of D_r(a), a in sites.

    Returns ``(idx, start, end)`` arrays over sites that contribute an arc
    (duplicates contribute once), or ``None`` when the intersection is empty.
    """
    scale = _scale_of(sites)
    lim = _limit(r, scale, tol)
    _, first = np.unique(sites, axis=0, return_index=True)
    first = np.sort(first)
    u = sites[first]
    m = len(u)
    if m == 1:
        return first, np.array([0.0]), np.array([TWO_PI])
    dx = u[None, :, 0] - u[:, None, 0]
    dy = u[None, :, 1] - u[:, None, 1]
    d = np.hypot(dx, dy)
    if d.max() > 2.0 * lim:
        return None
    if r <= 0.0:
        # every site would have to coincide; within tolerance they do
        return first[:1], np.array([0.0]), np.array([0.0])
    ang = np.arctan2(dy, dx)
    w = np.arccos(np.clip(d / (2.0 * r), -1.0, 1.0))
    np.fill_diagonal(w, np.inf)
    ref = np.argmin(w, axis=1)
    rows = np.arange(m)
    ref_ang = ang[rows, ref]
    off = _wrap(ang - ref_ang[:, None])
    lo = off - w
    hi = off + w
    np.fill_diagonal(lo, -np.inf)
    np.fill_diagonal(hi, np.inf)
    L = lo.max(axis=1)
    H = hi.min(axis=1)
    ok = H - L >= -ANGLE_SLACK
    if not ok.any():
        return None
    mid = (L + H) / 2.0
    L = np.where(H < L, mid, L)
    H = np.maximum(H, L)
    start = np.mod(ref_ang + L, TWO_PI)
    end = start + (H - L)
    sel = np.nonzero(ok)[0]
    order = np.argsort(start[sel], kind="stable")
    sel = sel[order]
    return first[sel], start[sel], end[sel]


class CommonIntersection:
    """The convex region of points within r of every site."""

    def __init__(self, sites, r: float, tol: Tolerance = DEFAULT_TOL):
        self.sites = np.asarray(sites, dtype=float).reshape(-1, 2)
        if len(self.sites) == 0:
            raise GeometryError("common intersection of an empty site set")
        if r < 0:
            raise GeometryError("radius must be nonnegative")
        self.radius = float(r)
        self.tol = tol
        self.scale = _scale_of(self.sites)
        res = boundary_arcs(self.sites, self.radius, tol)
        if res is None:
            self.empty = True
            self.arcs: list[Arc] = []
            self.defining = np.empty((0, 2))
        else:
            idx, start, end = res
            self.empty = False
            self.arcs = [Arc(int(i), float(s), float(e)) for i, s, e in zip(idx, start, end)]
            self.defining = self.sites[np.unique(idx)]

    def __repr__(self) -> str:
        state = "empty" if self.empty else f"{len(self.arcs)} arcs"
        return f"CommonIntersection(r={self.radius}, sites={len(self.sites)}, {state})"

    def _point(self, site: int, theta: float) -> np.ndarray:
        s = self.sites[site]
        return np.array([s[0] + self.radius * math.cos(theta), s[1] + self.radius * math.sin(theta)])

    @cached_property
    def vertices(self) -> np.ndarray:
        """Arc start points; a single full-circle arc contributes one point."""
        if self.empty:
            return np.empty((0, 2))
        return np.array([self._point(a.site, a.start) for a in self.arcs])

    def some_point(self) -> Optional[np.ndarray]:
        if self.empty:
            return None
        if len(self.arcs) == 1 and self.arcs[0].length >= TWO_PI - 1e-12:
            return self.sites[self.arcs[0].site].copy()
        return self.vertices.mean(axis=0)

    def contains(self, q) -> bool:
        if self.empty:
            return False
        lim = _limit(self.radius, max(self.scale, _scale_of(q)), self.tol)
        d = np.hypot(self.defining[:, 0] - q[0], self.defining[:, 1] - q[1])
        return bool(d.max() <= lim)

    def contains_many(self, qs) -> np.ndarray:
        qs = np.asarray(qs, dtype=float).reshape(-1, 2)
        if self.empty:
            return np.zeros(len(qs), dtype=bool)
        lim = _limit(self.radius, max(self.scale, _scale_of(qs)), self.tol)
        d = np.hypot(qs[:, None, 0] - self.defining[None, :, 0], qs[:, None, 1] - self.defining[None, :, 1])
        return d.max(axis=1) <= lim

    @cached_property
    def _chains(self):
        """Arc pieces split into the right chain (normal angle in [-pi/2, pi/2])
        and the left chain (normal angle in [pi/2, 3pi/2])."""
        half = math.pi / 2.0
        right, left = [], []
        for a in self.arcs:
            for k in range(3):
                shift = TWO_PI * k
                lo, hi = max(a.start, -half + shift), min(a.end, half + shift)
                if lo <= hi:
                    right.append((lo - shift, hi - shift, a.site))
                lo, hi = max(a.start, half + shift), min(a.end, 3 * half + shift)
                if lo <= hi:
                    left.append((lo - shift, hi - shift, a.site))
        right.sort()
        left.sort()
        return right, left

    def hli(self, y: float) -> Interval1D:
        """Intersection with the horizontal line at height ``y``.

        Each chain is monotone in y, so the arc hit by the line is located by
        binary search over the chain's breakpoints.
        """
        if self.empty:
            return Interval1D.nothing(y)
        r = self.radius
        right, left = self._chains
        if not right or not left:
            return Interval1D.nothing(y)
        sy = self.sites[:, 1]
        ys_right = [sy[s] + r * math.sin(lo) for lo, _, s in right]
        y_bottom = ys_right[0]
        y_top = sy[right[-1][2]] + r * math.sin(right[-1][1])
        slack = self.tol.rel * max(r, 1e-300) + self.tol.abs_factor * max(self.scale, 1.0)
        if y < y_bottom - slack or y > y_top + slack:
            return Interval1D.nothing(y)
        k = max(bisect_right(ys_right, y) - 1, 0)
        s = right[k][2]
        hi = self.sites[s, 0] + math.sqrt(max(r * r - (y - sy[s]) ** 2, 0.0))
        # left chain runs top to bottom, so y decreases along it
        ys_left = [-(sy[s] + r * math.sin(lo)) for lo, _, s in left]
        k = max(bisect_right(ys_left, -y) - 1, 0)
        s = left[k][2]
        lo = self.sites[s, 0] - math.sqrt(max(r * r - (y - sy[s]) ** 2, 0.0))
        if lo > hi:
            mid = (lo + hi) / 2.0
            lo = hi = mid
        return Interval1D(lo, hi, y)


def common_intersection(A, r: float, tol: Tolerance = DEFAULT_TOL) -> CommonIntersection:
    return CommonIntersection(A, r, tol)


def hli(region: CommonIntersection, y: float) -> Interval1D:
    return region.hli(y)


def _exit_distance(points: np.ndarray, anchor: np.ndarray, r: float, u: np.ndarray) -> np.ndarray:
    """Distance from the anchor along unit directions ``u`` (K,2) to the
    boundary of D_r(p) for each point p (N,2); shape (K, N)."""
    rel = points - anchor
    proj = u @ rel.T
    rad = r * r - (rel**2).sum(axis=1)[None, :] + proj**2
    return proj + np.sqrt(np.maximum(rad, 0.0))


class UnionChain:
    """Points within r of at least one point of every pair."""

    def __init__(self, pairs, anchor, r: float, tol: Tolerance = DEFAULT_TOL, check: bool = True):
        self.pairs = np.asarray(pairs, dtype=float).reshape(-1, 2, 2)
        if len(self.pairs) == 0:
            raise GeometryError("union chain of an empty pair set")
        self.anchor = np.asarray(anchor, dtype=float).reshape(2)
        self.radius = float(r)
        self.tol = tol
        self.points = self.pairs.reshape(-1, 2)
        self.scale = max(_scale_of(self.points), _scale_of(self.anchor))
        if check:
            lim = _limit(self.radius, self.scale, tol)
            if np.hypot(*(self.points - self.anchor).T).max() > lim:
                raise GeometryError("anchor disk does not cover every pair point")

    def __repr__(self) -> str:
        return f"UnionChain(r={self.radius}, pairs={len(self.pairs)})"

    def contains_naive(self, q) -> bool:
        return bool(self.contains_many(q)[0])

    def contains_many(self, qs) -> np.ndarray:
        qs = np.asarray(qs, dtype=float).reshape(-1, 2)
        lim = _limit(self.radius, max(self.scale, _scale_of(qs)), self.tol)
        d = np.hypot(qs[:, None, None, 0] - self.pairs[None, :, :, 0],
                     qs[:, None, None, 1] - self.pairs[None, :, :, 1])
        return (d.min(axis=2) <= lim).all(axis=1)

    def radial_extent(self, phis) -> np.ndarray:
        """Distance from the anchor to the boundary along each angle."""
        phis = np.atleast_1d(np.asarray(phis, dtype=float))
        u = np.stack([np.cos(phis), np.sin(phis)], axis=1)
        t = _exit_distance(self.points, self.anchor, self.radius, u).reshape(len(phis), -1, 2)
        return t.max(axis=2).min(axis=1)

    @cached_property
    def arcs(self) -> list[Arc]:
        """Boundary arcs in angular order around the anchor.

        ``start``/``end`` are angles about the anchor; ``site`` indexes
        ``self.points`` (the circle the arc lies on).
        """
        pts = np.unique(self.points, axis=0)
        r = self.radius
        breaks = [np.array([0.0])]
        if len(pts) > 1:
            meets = circle_meets(pts, pts, r, self.tol, distinct=True)
            if len(meets):
                breaks.append(np.mod(np.arctan2(*(meets - self.anchor)[:, ::-1].T), TWO_PI))
        th = np.unique(np.concatenate(breaks + [np.array([TWO_PI])]))
        mids = (th[:-1] + th[1:]) / 2.0
        u = np.stack([np.cos(mids), np.sin(mids)], axis=1)
        t = _exit_distance(self.points, self.anchor, r, u).reshape(len(mids), -1, 2)
        inner = t.argmax(axis=2)
        outer = t.max(axis=2).argmin(axis=1)
        site = 2 * outer + inner[np.arange(len(mids)), outer]
        # identify sites by coordinates so duplicate points merge
        key = [tuple(self.points[s]) for s in site]
        arcs: list[Arc] = []
        for k in range(len(mids)):
            if arcs and tuple(self.points[arcs[-1].site]) == key[k]:
                arcs[-1] = Arc(arcs[-1].site, arcs[-1].start, float(th[k + 1]))
            else:
                arcs.append(Arc(int(site[k]), float(th[k]), float(th[k + 1])))
        if len(arcs) > 1 and tuple(self.points[arcs[0].site]) == tuple(self.points[arcs[-1].site]):
            last = arcs.pop()
            arcs[0] = Arc(arcs[0].site, last.start - TWO_PI, arcs[0].end)
        return arcs

    def contains(self, q) -> bool:
        """Membership through the boundary arcs (radial test about the anchor)."""
        q = np.asarray(q, dtype=float)
        rel = q - self.anchor
        dist = math.hypot(rel[0], rel[1])
        lim_extra = self.tol.rel * self.radius + self.tol.abs_factor * max(self.scale, 1.0)
        if dist <= lim_extra:
            return True
        phi = math.atan2(rel[1], rel[0]) % TWO_PI
        arcs = self.arcs
        if phi >= arcs[-1].end:
            # wrapped part of the first arc
            site = arcs[0].site
        else:
            k = bisect_right([a.start for a in arcs], phi) - 1
            site = arcs[max(k, 0)].site
        p = self.points[site]
        u = rel / dist
        t = _exit_distance(p[None, :], self.anchor, self.radius, u[None, :])[0, 0]
        return bool(dist <= t + 2 * lim_extra)


def union_chain(pairs, anchor, r: float, tol: Tolerance = DEFAULT_TOL) -> UnionChain:
    return UnionChain(pairs, anchor, r, tol)


def circle_meets(c1: np.ndarray, c2: np.ndarray, r: float, tol: Tolerance = DEFAULT_TOL,
                 distinct: bool = False) -> np.ndarray:
    """All intersection points of circles of radius r about c1[i] and c2[j].

    Near-tangent circles (within tolerance) meet in their midpoint.  Pairs of
    coincident circles are skipped.
    """
    c1 = np.asarray(c1, dtype=float).reshape(-1, 2)
    c2 = np.asarray(c2, dtype=float).reshape(-1, 2)
    if len(c1) == 0 or len(c2) == 0:
        return np.empty((0, 2))
    if distinct:
        i, j = np.triu_indices(len(c1), 1)
        a, b = c1[i], c2[j]
    else:
        a = np.repeat(c1, len(c2), axis=0)
        b = np.tile(c2, (len(c1), 1))
    delta = b - a
    d = np.hypot(delta[:, 0], delta[:, 1])
    lim = _limit(r, max(_scale_of(c1), _scale_of(c2)), tol)
    ok = (d > 0) & (d <= 2.0 * lim)
    a, delta, d = a[ok], delta[ok], d[ok]
    h = np.sqrt(np.maximum(r * r - (d / 2.0) ** 2, 0.0))
    mid = a + delta / 2.0
    perp = np.stack([-delta[:, 1], delta[:, 0]], axis=1) / d[:, None]
    return np.concatenate([mid + perp * h[:, None], mid - perp * h[:, None]])


def meet_point(sites: np.ndarray, pairs: np.ndarray, anchor: np.ndarray, r: float,
               tol: Tolerance = DEFAULT_TOL, arcs=None) -> Optional[np.ndarray]:
    """A point within r of every site and of one point of every pair, or None.

    ``anchor`` must be within r of every pair point, which makes the pair
    region star-shaped around it.  If the two regions meet, one of these lies
    in both: the anchor, a vertex of the site region, or a crossing of the
    site region's boundary with a pair-point circle.
    """
    if arcs is None:
        arcs = boundary_arcs(sites, r, tol)
    if arcs is None:
        return None
    idx, start, end = arcs
    defining = sites[np.unique(idx)]
    scale = max(_scale_of(sites), _scale_of(pairs), _scale_of(anchor))
    lim = _limit(r, scale, tol)

    def in_sites(q):
        d = np.hypot(q[:, None, 0] - defining[None, :, 0], q[:, None, 1] - defining[None, :, 1])
        return d.max(axis=1) <= lim

    if len(pairs) == 0:
        if len(idx) == 1 and end[0] - start[0] >= TWO_PI - 1e-12:
            return sites[idx[0]].copy()
        verts = sites[idx] + r * np.stack([np.cos(start), np.sin(start)], axis=1)
        return verts.mean(axis=0)

    def in_pairs(q):
        d0 = np.hypot(q[:, None, 0] - pairs[None, :, 0, 0], q[:, None, 1] - pairs[None, :, 0, 1])
        d1 = np.hypot(q[:, None, 0] - pairs[None, :, 1, 0], q[:, None, 1] - pairs[None, :, 1, 1])
        return (np.minimum(d0, d1) <= lim).all(axis=1)

    a = anchor.reshape(1, 2)
    if in_sites(a)[0]:
        return anchor.copy()
    verts = sites[idx] + r * np.stack([np.cos(start), np.sin(start)], axis=1)
    hit = in_pairs(verts)
    if hit.any():
        return verts[np.argmax(hit)]
    cross = circle_meets(defining, pairs.reshape(-1, 2), r, tol)
    if len(cross):
        hit = in_sites(cross)
        cross = cross[hit]
        if len(cross):
            hit = in_pairs(cross)
            if hit.any():
                return cross[np.argmax(hit)]
    return None


def meet_point_general(sites: np.ndarray, pairs: np.ndarray, r: float,
                       tol: Tolerance = DEFAULT_TOL) -> Optional[np.ndarray]:
    """Like :func:`meet_point` but without an anchor.

    Any nonempty intersection has a boundary vertex where two circles cross,
    or contains the center of a circle whose whole boundary it keeps, so
    those points are tried.  Cubic in the input size.
    """
    sites = np.asarray(sites, dtype=float).reshape(-1, 2)
    pairs = np.asarray(pairs, dtype=float).reshape(-1, 2, 2)
    allc = np.unique(np.concatenate([sites, pairs.reshape(-1, 2)]), axis=0)
    if len(allc) == 0:
        return np.zeros(2)
    cand = np.concatenate([allc, circle_meets(allc, allc, r, tol, distinct=True)])
    lim = _limit(r, max(_scale_of(allc), _scale_of(cand)), tol)
    ok = np.ones(len(cand), dtype=bool)
    if len(sites):
        d = np.hypot(cand[:, None, 0] - sites[None, :, 0], cand[:, None, 1] - sites[None, :, 1])
        ok &= d.max(axis=1) <= lim
    if len(pairs):
        d0 = np.hypot(cand[:, None, 0] - pairs[None, :, 0, 0], cand[:, None, 1] - pairs[None, :, 0, 1])
        d1 = np.hypot(cand[:, None, 0] - pairs[None, :, 1, 0], cand[:, None, 1] - pairs[None, :, 1, 1])
        ok &= (np.minimum(d0, d1) <= lim).all(axis=1)
    return cand[np.argmax(ok)] if ok.any() else None


def regions_intersect(U: Optional[UnionChain], I: CommonIntersection, mode: str = "closed",
                      tol: Optional[Tolerance] = None) -> Optional[Point]:
    """A witness point in U and I, or None.

    ``mode="closed"`` treats grazing contact (within tolerance) as meeting;
    ``mode="open"`` asks for overlap of the interiors, tested by shrinking
    the radius by ``OPEN_MARGIN`` tolerance units first.  ``U=None`` stands
    for the whole plane.
    """
    if mode not in ("closed", "open"):
        raise ValueError(f"unknown mode {mode!r}")
    tol = tol or I.tol
    if I.empty:
        return None
    r = I.radius
    if U is not None and not tol.same(U.radius, r):
        raise GeometryError("regions must share a radius")
    sites = I.sites
    pairs = np.empty((0, 2, 2)) if U is None else U.pairs
    anchor = sites[0] if U is None else U.anchor
    if mode == "open":
        r = r * (1.0 - OPEN_MARGIN * tol.rel)
        arcs = None
    else:
        arcs = (np.array([a.site for a in I.arcs]), np.array([a.start for a in I.arcs]),
                np.array([a.end for a in I.arcs]))
    w = meet_point(sites, pairs, anchor, r, tol, arcs=arcs)
    return None if w is None else Point(float(w[0]), float(w[1]))
