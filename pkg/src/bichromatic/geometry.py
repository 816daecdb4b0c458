"""Points, disks, instances and the basic disk computations.

Points are ``(x, y)`` named tuples so they interoperate with plain tuples and
numpy arrays.  Every containment test goes through :class:`Tolerance`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class GeometryError(ValueError):
    """Raised when an operation receives input outside its domain."""


class DegenerateError(GeometryError):
    """Raised for collinear triples and other configurations with no answer."""


class Point(NamedTuple):
    x: float
    y: float


class PointPair(NamedTuple):
    first: Point
    second: Point


class Disk(NamedTuple):
    center: Point
    radius: float

    def contains(self, p, tol: "Tolerance | None" = None) -> bool:
        tol = tol or DEFAULT_TOL
        d = math.hypot(p[0] - self.center[0], p[1] - self.center[1])
        return d <= tol.inflate(self.radius, _scale_of((p, self.center)))


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance for containment and radius comparisons.

    A point is inside a disk of radius r when its distance to the center is at
    most ``r * (1 + rel) + abs_factor * scale`` where ``scale`` is the
    coordinate magnitude of the data involved.
    """

    rel: float = 1e-9
    abs_factor: float = 1e-12

    def __post_init__(self):
        if not self.rel > 0:
            raise GeometryError("tolerance must be positive")

    def inflate(self, r: float, scale: float = 1.0) -> float:
        return r * (1.0 + self.rel) + self.abs_factor * max(scale, 1.0)

    def same(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.rel * max(abs(a), abs(b), 1e-300) + self.abs_factor


DEFAULT_TOL = Tolerance()


def _scale_of(points) -> float:
    arr = np.asarray(points, dtype=float).reshape(-1, 2)
    if arr.size == 0:
        return 1.0
    return float(np.abs(arr).max())


def as_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise GeometryError(f"non-finite coordinate in {p!r}")
    return Point(x, y)


@dataclass(frozen=True)
class Instance:
    """An ordered, nonempty list of point pairs."""

    pairs: tuple[PointPair, ...]

    def __post_init__(self):
        if not self.pairs:
            raise GeometryError("an instance needs at least one pair")
        fixed = tuple(PointPair(as_point(a), as_point(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", fixed)

    @classmethod
    def from_coords(cls, pairs: Iterable) -> "Instance":
        return cls(tuple(PointPair(as_point(a), as_point(b)) for a, b in pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def points(self) -> list[Point]:
        """P(S): both points of every pair, pair by pair."""
        out = []
        for a, b in self.pairs:
            out.append(a)
            out.append(b)
        return out

    def array(self) -> np.ndarray:
        """Pairs as an ``(n, 2, 2)`` float array."""
        return np.array([[list(a), list(b)] for a, b in self.pairs], dtype=float)

    @property
    def scale(self) -> float:
        return _scale_of(self.points)


@dataclass(frozen=True)
class Solution:
    """Two congruent disks and a coloring certificate.

    ``coloring[k] == 0`` means the first point of pair ``k`` is red (in
    ``disk1``) and the second is blue (in ``disk2``); ``1`` means the reverse.
    """

    disk1: Disk
    disk2: Disk
    coloring: tuple[int, ...]
    radius: float = field(default=-1.0)

    def __post_init__(self):
        r = self.radius if self.radius >= 0 else max(self.disk1.radius, self.disk2.radius)
        object.__setattr__(self, "radius", float(r))
        object.__setattr__(self, "disk1", Disk(as_point(self.disk1.center), float(r)))
        object.__setattr__(self, "disk2", Disk(as_point(self.disk2.center), float(r)))
        object.__setattr__(self, "coloring", tuple(int(c) for c in self.coloring))

    @property
    def center_distance(self) -> float:
        c1, c2 = self.disk1.center, self.disk2.center
        return math.hypot(c1.x - c2.x, c1.y - c2.y)


def coloring_for(instance: Instance, c1, c2, r: float, tol: Tolerance = DEFAULT_TOL):
    """Coloring realizing a bichromatic cover by D_r(c1), D_r(c2), or None."""
    arr = instance.array()
    lim = tol.inflate(r, max(instance.scale, _scale_of((c1, c2))))
    d1 = np.hypot(arr[..., 0] - c1[0], arr[..., 1] - c1[1]) <= lim
    d2 = np.hypot(arr[..., 0] - c2[0], arr[..., 1] - c2[1]) <= lim
    straight = d1[:, 0] & d2[:, 1]
    swapped = d1[:, 1] & d2[:, 0]
    if not np.all(straight | swapped):
        return None
    return tuple(0 if s else 1 for s in straight)


def make_solution(instance: Instance, c1, c2, r: float, tol: Tolerance = DEFAULT_TOL):
    coloring = coloring_for(instance, c1, c2, r, tol)
    if coloring is None:
        return None
    return Solution(Disk(as_point(c1), r), Disk(as_point(c2), r), coloring, r)


# -- smallest enclosing disk -------------------------------------------------


def _diameter(a, b):
    cx, cy = (a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0
    return (cx, cy, max(math.hypot(cx - a[0], cy - a[1]), math.hypot(cx - b[0], cy - b[1])))


def _circum(a, b, c):
    # translate to reduce cancellation
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2.0
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2.0
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    x = ox + (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    y = oy + (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    r = max(math.hypot(x - a[0], y - a[1]), math.hypot(x - b[0], y - b[1]),
            math.hypot(x - c[0], y - c[1]))
    return (x, y, r)


_SED_EPS = 1e-14


def _inside(c, p) -> bool:
    return math.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] * (1 + _SED_EPS) + _SED_EPS


def _sed_two(points, p, q):
    circ = _diameter(p, q)
    left = right = None
    px, py = p
    qx, qy = q
    for r in points:
        if _inside(circ, r):
            continue
        cross = (qx - px) * (r[1] - py) - (qy - py) * (r[0] - px)
        c = _circum(p, q, r)
        if c is None:
            continue
        side = (qx - px) * (c[1] - py) - (qy - py) * (c[0] - px)
        if cross > 0.0 and (left is None or side > (qx - px) * (left[1] - py) - (qy - py) * (left[0] - px)):
            left = c
        elif cross < 0.0 and (right is None or side < (qx - px) * (right[1] - py) - (qy - py) * (right[0] - px)):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _sed_one(points, p):
    c = (p[0], p[1], 0.0)
    for i, q in enumerate(points):
        if not _inside(c, q):
            c = _diameter(p, q) if c[2] == 0.0 else _sed_two(points[: i + 1], p, q)
    return c


def sed_tuple(points: Sequence, seed: int = 0) -> tuple[float, float, float]:
    """Fast path of :func:`smallest_enclosing_disk` returning ``(x, y, r)``."""
    pts = [(float(p[0]), float(p[1])) for p in points]
    if not pts:
        raise GeometryError("smallest enclosing disk of no points")
    random.Random(seed).shuffle(pts)
    c = None
    for i, p in enumerate(pts):
        if c is None or not _inside(c, p):
            c = _sed_one(pts[: i + 1], p)
    return c


def smallest_enclosing_disk(points: Sequence, seed: int = 0) -> Disk:
    """Smallest disk covering ``points``.

    Randomized incremental construction, expected linear time.  The shuffle
    uses a private RNG seeded with ``seed`` so results are reproducible.
    """
    x, y, r = sed_tuple(points, seed)
    return Disk(Point(x, y), r)


def circumcircle(points: Sequence) -> Disk:
    """Disk with all 2 or 3 given points on its boundary."""
    pts = [as_point(p) for p in points]
    if len(pts) == 2:
        x, y, r = _diameter(pts[0], pts[1])
        return Disk(Point(x, y), r)
    if len(pts) == 3:
        c = _circum(*pts)
        if c is None:
            raise DegenerateError("collinear points have no circumcircle")
        return Disk(Point(c[0], c[1]), c[2])
    raise GeometryError("circumcircle takes 2 or 3 points")


def dedupe_sorted(values: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Sort and drop values within ``tol.rel`` (relative) of their predecessor."""
    values = np.sort(np.asarray(values, dtype=float))
    if values.size == 0:
        return values
    keep = np.empty(values.size, dtype=bool)
    keep[0] = True
    keep[1:] = np.diff(values) > tol.rel * np.maximum(values[1:], 1e-300)
    return values[keep]


def pair_radii(pts: np.ndarray) -> np.ndarray:
    i, j = np.triu_indices(len(pts), 1)
    return np.hypot(*(pts[i] - pts[j]).T) / 2.0


def triple_radii(pts: np.ndarray, chunk: int = 200_000) -> np.ndarray:
    """Circumradii of all non-collinear triples (collinear ones are skipped)."""
    n = len(pts)
    if n < 3:
        return np.empty(0)
    out = []
    it = combinations(range(n), 3)
    while True:
        idx = np.fromiter((k for t in _take(it, chunk) for k in t), dtype=np.int64)
        if idx.size == 0:
            break
        idx = idx.reshape(-1, 3)
        out.append(_circumradius(pts[idx[:, 0]], pts[idx[:, 1]], pts[idx[:, 2]]))
    return np.concatenate(out) if out else np.empty(0)


def _take(it, k):
    for _, v in zip(range(k), it):
        yield v


def _circumradius(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    ab = np.hypot(*(a - b).T)
    bc = np.hypot(*(b - c).T)
    ca = np.hypot(*(c - a).T)
    cross = np.abs((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))
    longest = np.maximum(np.maximum(ab, bc), ca)
    # relative collinearity test; these triples have no circumcircle
    ok = cross > 1e-12 * longest * longest
    with np.errstate(divide="ignore", invalid="ignore"):
        r = ab * bc * ca / (2.0 * cross)
    return r[ok]


def candidate_radii(points: Sequence, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Sorted, deduplicated circumradii of all pairs and non-collinear triples, plus 0."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) < 2:
        raise GeometryError("candidate radii need at least two points")
    vals = np.concatenate([[0.0], pair_radii(pts), triple_radii(pts)])
    return dedupe_sorted(vals, tol)


def extra_radii(points: np.ndarray, extra) -> np.ndarray:
    """Circumradii of pairs and triples that include the point ``extra``."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    o = np.asarray(extra, dtype=float).reshape(1, 2)
    vals = [np.hypot(*(pts - o).T) / 2.0]
    if len(pts) >= 2:
        i, j = np.triu_indices(len(pts), 1)
        vals.append(_circumradius(np.repeat(o, len(i), 0), pts[i], pts[j]))
    return np.concatenate(vals)
