"""Seeded random instances for tests and benchmarks."""

from __future__ import annotations

import numpy as np

from .geometry import Instance

KINDS = ("uniform", "two-cluster", "nearby-lens")


def _disk_points(rng, n: int, center, radius: float) -> np.ndarray:
    ang = rng.uniform(0.0, 2.0 * np.pi, n)
    rad = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    return np.asarray(center) + np.stack([rad * np.cos(ang), rad * np.sin(ang)], axis=1)


def uniform(n: int, seed: int = 0, side: float = 100.0) -> Instance:
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, side, size=(n, 2, 2))
    return Instance.from_coords(pts.tolist())


def two_cluster(n: int, seed: int = 0, gap: float = 100.0) -> Instance:
    """Every pair has one point in each of two unit disks ``gap`` apart."""
    rng = np.random.default_rng(seed)
    a = _disk_points(rng, n, (0.0, 0.0), 1.0)
    b = _disk_points(rng, n, (gap, 0.0), 1.0)
    flip = rng.random(n) < 0.5
    first = np.where(flip[:, None], b, a)
    second = np.where(flip[:, None], a, b)
    return Instance.from_coords(list(zip(first.tolist(), second.tolist())))


def nearby_lens(n: int, seed: int = 0, shift: float = 1.0) -> Instance:
    """Pairs drawn from two unit disks whose centers are ``shift`` apart."""
    rng = np.random.default_rng(seed)
    a = _disk_points(rng, n, (0.0, 0.0), 1.0)
    b = _disk_points(rng, n, (shift, 0.0), 1.0)
    return Instance.from_coords(list(zip(a.tolist(), b.tolist())))


def generate(kind: str, n: int, seed: int = 0) -> Instance:
    if n < 1:
        raise ValueError("n must be positive")
    if kind == "uniform":
        return uniform(n, seed)
    if kind == "two-cluster":
        return two_cluster(n, seed)
    if kind == "nearby-lens":
        return nearby_lens(n, seed)
    raise ValueError(f"unknown kind {kind!r}")


def ib2c_grid(U: int, m: int, seed: int = 0) -> list:
    if U < 1 or m < 1:
        raise ValueError("U and m must be positive")
    rng = np.random.default_rng(seed)
    g = rng.integers(1, U + 1, size=(m, 2, 2))
    return [tuple(tuple(int(v) for v in p) for p in pair) for pair in g]
