"""Exact solver: the better of the distant-case and nearby-case answers."""

from __future__ import annotations

from .exact_distant import distant_solve
from .exact_nearby import nearby_solve
from .geometry import DEFAULT_TOL, Instance, Solution, Tolerance, candidate_radii, make_solution, sed_tuple


def solve_exact(instance: Instance, tol: Tolerance = DEFAULT_TOL) -> Solution:
    pts = instance.points
    cx, cy, rt = sed_tuple(pts)
    # one disk over everything is always feasible
    best = make_solution(instance, (cx, cy), (cx, cy), rt, tol)
    if rt == 0.0:
        return best
    cands = candidate_radii(pts, tol)
    for solver in (distant_solve, nearby_solve):
        sol = solver(instance, cands=cands, upper=best.radius, tol=tol)
        if sol is not None and sol.radius < best.radius:
            best = sol
    return best
