"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line; the lines are printed together
at the end of the pytest run.
"""

import csv
import math
import time
from pathlib import Path

import numpy as np

from bichromatic import generators
from bichromatic.approx import approx_solve
from bichromatic.cli import BENCH_FIELDS, bench_rows
from bichromatic.exact_distant import candidate_lines, distant_decision, distant_solve
from bichromatic.exact_nearby import (
    angular_partition,
    candidate_centers_o,
    matrix_search,
    nearby_solve,
    rb2c_decision,
    rb2c_optimize,
)
from bichromatic.formats import write_instance
from bichromatic.geometry import candidate_radii, sed_tuple
from bichromatic.ib2c import dump_ib2c, ib2c_decision_sq, ib2c_solve, prune_extremes
from bichromatic.oracle import brute_exact, brute_ib2c_sq, covers_real, verify_solution
from bichromatic.regions import common_intersection, hli, regions_intersect, union_chain

from conftest import ACCEPTANCE_LINES, random_instance, random_pairs

TAU = 1e-9
KINDS = ("uniform", "two-cluster", "nearby-lens")
ROOT = Path(__file__).resolve().parent.parent


def record(name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_a1_exact_matches_oracle():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    bad, worst, count = [], 0.0, 0
    for k in range(300):
        S = random_instance(rng, int(rng.integers(2, 13)), KINDS[k % 3])
        found = [s for s in (distant_solve(S), nearby_solve(S)) if s is not None]
        best = min(found, key=lambda s: s.radius)
        opt = brute_exact(S).radius
        err = abs(best.radius - opt) / max(opt, 1e-300)
        worst = max(worst, err if opt > 0 else best.radius)
        if not all(verify_solution(S, s) for s in found) or (err > TAU and abs(best.radius - opt) > 1e-12):
            bad.append(k)
        count += 1
    elapsed = time.perf_counter() - t0
    record("A1 exact == oracle", not bad and elapsed < 600,
           f"{count} instances, {len(bad)} mismatches, worst rel err {worst:.2e}, {elapsed:.0f}s (limit 600s)")


def test_a2_ib2c_matches_oracle():
    rng = np.random.default_rng(202)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(200):
        U = int(rng.integers(2, 13))
        T = random_pairs(rng, U, int(rng.integers(1, 41)))
        r, c1, c2 = ib2c_solve(T, U)
        k = round(r * r)
        in_set = math.sqrt(k) == r and 0 <= k <= 2 * (U - 1) ** 2
        if not in_set or k != brute_ib2c_sq(T, U)[0]:
            bad += 1
    elapsed = time.perf_counter() - t0
    record("A2 ib2c == oracle", bad == 0 and elapsed < 300,
           f"200 instances, {bad} mismatches, {elapsed:.0f}s (limit 300s)")


def test_a3_approximation_bound():
    rng = np.random.default_rng(303)
    t0 = time.perf_counter()
    bad, worst = 0, 0.0
    for k in range(200):
        eps = (0.5, 0.25, 0.1)[k % 3]
        S = random_instance(rng, int(rng.integers(2, 13)), KINDS[(k // 3) % 3])
        opt = brute_exact(S).radius
        sol = approx_solve(S, eps)
        ok = verify_solution(S, sol) and opt * (1 - TAU) <= sol.radius <= (1 + eps) * opt + 1e-9
        if opt > 0:
            worst = max(worst, (sol.radius / opt - 1) / eps)
        bad += not ok
    elapsed = time.perf_counter() - t0
    record("A3 approx within (1+eps)", bad == 0 and elapsed < 600,
           f"200 instances, {bad} violations, worst excess {worst:.3f} eps, {elapsed:.0f}s (limit 600s)")


def test_a4_pruning_preserves_cover():
    rng = np.random.default_rng(404)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(100):
        U = int(rng.integers(2, 13))
        T = random_pairs(rng, U, int(rng.integers(1, 41)))
        Tp = prune_extremes(T, U).pairs
        for _ in range(200):
            c1, c2 = rng.uniform(0, U + 1, 2), rng.uniform(0, U + 1, 2)
            r = rng.uniform(0, U)
            bad += covers_real(T, c1, c2, r) != covers_real(Tp, c1, c2, r)
    elapsed = time.perf_counter() - t0
    record("A4 cover(T) == cover(T')", bad == 0 and elapsed < 120,
           f"100 instances x 200 disk pairs, {bad} disagreements, {elapsed:.0f}s (limit 120s)")


def test_a5_staircase_search():
    rng = np.random.default_rng(505)
    t0 = time.perf_counter()
    wrong_min = quadrant = too_many = 0
    for k in range(100):
        S = random_instance(rng, int(rng.integers(2, 9)), "nearby-lens" if k % 2 else "uniform")
        grid = candidate_centers_o(S.points)
        o = grid[0] if k % 3 == 0 else grid[int(rng.integers(len(grid)))]
        part = angular_partition(o, "xy"[k % 2], S.points)
        cands = candidate_radii(list(S.points) + [tuple(o)])
        full = {(i, j): rb2c_optimize(S, part, i, j, cands)
                for i in range(part.n1 + 1) for j in range(part.n2 + 1)}
        trace = []
        best, _ = matrix_search(part, lambda i, j: full[(i, j)], trace)
        wrong_min += best != min(e.r_star_ij for e in full.values())
        too_many += len(trace) > part.n1 + part.n2 + 2
        for ev in trace:
            for (i, j), other in full.items():
                pruned = (i >= ev.i and j <= ev.j) if ev.left_tight else (i <= ev.i and j >= ev.j)
                if pruned and other.r_star_ij < ev.r_star_ij * (1 - TAU):
                    quadrant += 1
    elapsed = time.perf_counter() - t0
    ok = not (wrong_min or quadrant or too_many) and elapsed < 300
    record("A5 staircase == full matrix", ok,
           f"100 partitions, {wrong_min} wrong minima, {quadrant} quadrant violations, "
           f"{too_many} over-budget walks, {elapsed:.0f}s (limit 300s)")


def _naive_I(sites, r, qs):
    d = np.hypot(qs[:, None, 0] - sites[None, :, 0], qs[:, None, 1] - sites[None, :, 1])
    return d.max(axis=1) - r


def _naive_U(pairs, r, qs):
    d = np.hypot(qs[:, None, None, 0] - pairs[None, :, :, 0], qs[:, None, None, 1] - pairs[None, :, :, 1])
    return d.min(axis=2).max(axis=1) - r


def test_a6_region_primitives():
    rng = np.random.default_rng(606)
    t0 = time.perf_counter()
    queries = disagree = 0
    margin = 1e-7
    for _ in range(50):
        r = float(rng.uniform(0.5, 1.5))
        anchor = rng.uniform(-1, 1, 2)
        sites = anchor + rng.uniform(-r, r, (int(rng.integers(1, 15)), 2))
        m = int(rng.integers(1, 15))
        ang = rng.uniform(0, 2 * math.pi, (m, 2))
        rad = r * np.sqrt(rng.uniform(0, 1, (m, 2)))
        pairs = np.stack([anchor[0] + rad * np.cos(ang), anchor[1] + rad * np.sin(ang)], axis=-1)
        I = common_intersection(sites, r)
        U = union_chain(pairs, anchor, r)
        qs = anchor + rng.uniform(-2.5 * r, 2.5 * r, (1000, 2))
        gap = _naive_I(sites, r, qs)
        clear = np.abs(gap) > margin
        disagree += int(np.sum((I.contains_many(qs) != (gap <= 0)) & clear))
        gap = _naive_U(pairs, r, qs)
        clear = np.abs(gap) > margin
        mine = np.array([U.contains(q) for q in qs])
        disagree += int(np.sum((mine != (gap <= 0)) & clear))
        queries += 2000
        for y in np.linspace(anchor[1] - 2 * r, anchor[1] + 2 * r, 10):
            iv = hli(I, y)
            xs = np.linspace(anchor[0] - 2.5 * r, anchor[0] + 2.5 * r, 100)
            pts = np.stack([xs, np.full_like(xs, y)], axis=1)
            gap = _naive_I(sites, r, pts)
            clear = np.abs(gap) > margin
            mine = np.array([x in iv for x in xs])
            disagree += int(np.sum((mine != (gap <= 0)) & clear))
            queries += 100
        w = regions_intersect(U, I, "closed")
        samples = anchor + rng.uniform(-2.5 * r, 2.5 * r, (4000, 2))
        both = np.maximum(_naive_I(sites, r, samples), _naive_U(pairs, r, samples))
        if w is None:
            disagree += int(np.any(both < -margin))
        else:
            q = np.array([w])
            disagree += int(max(_naive_I(sites, r, q)[0], _naive_U(pairs, r, q)[0]) > margin)
        queries += 1
    elapsed = time.perf_counter() - t0
    ok = disagree == 0 and queries >= 100_000 and elapsed < 180
    record("A6 region primitives vs naive", ok,
           f"{queries} queries over 50 configurations, {disagree} disagreements, {elapsed:.0f}s (limit 180s)")


def _monotone(flags):
    return all(flags[flags.index(True):]) if True in flags else True


def test_a7_decision_monotonicity():
    rng = np.random.default_rng(707)
    t0 = time.perf_counter()
    bad = {"distant": 0, "rb2c": 0, "ib2c": 0}
    for _ in range(100):
        S = random_instance(rng, int(rng.integers(2, 8)), KINDS[int(rng.integers(3))])
        cands = candidate_radii(S.points)
        sample = np.sort(rng.choice(cands, size=min(10, len(cands)), replace=False))
        specs = candidate_lines(S.points)
        side = specs[int(rng.integers(len(specs)))]
        bad["distant"] += not _monotone([distant_decision(S, side, r) is not None for r in sample])
        o = sed_tuple(S.points)[:2]
        part = angular_partition(o, "xy"[int(rng.integers(2))], S.points)
        i, j = int(rng.integers(part.n1 + 1)), int(rng.integers(part.n2 + 1))
        cands_o = candidate_radii(list(S.points) + [o])
        sample = np.sort(rng.choice(cands_o, size=min(10, len(cands_o)), replace=False))
        bad["rb2c"] += not _monotone([rb2c_decision(S, part, i, j, r) is not None for r in sample])
        U = int(rng.integers(2, 13))
        P = prune_extremes(random_pairs(rng, U, int(rng.integers(1, 30))), U)
        ks = np.sort(rng.choice(2 * (U - 1) ** 2 + 1, size=min(10, 2 * (U - 1) ** 2 + 1), replace=False))
        bad["ib2c"] += not _monotone([ib2c_decision_sq(P, int(k)) is not None for k in ks])
    elapsed = time.perf_counter() - t0
    record("A7 decision monotonicity", not any(bad.values()),
           f"100 instances per procedure, non-monotone: {bad}, {elapsed:.0f}s")


def _slope(xs, ts):
    return float(np.polyfit(np.log(xs), np.log(ts), 1)[0])


def test_a8_scaling_informational(tmp_path):
    exact_dir, grid_dir = tmp_path / "exact", tmp_path / "grid"
    exact_dir.mkdir()
    grid_dir.mkdir()
    sizes = (16, 32, 64, 128)
    for n in sizes:
        write_instance(exact_dir / f"uniform_{n:03d}.json", generators.uniform(n, seed=n))
        (grid_dir / f"grid_{n:03d}.json").write_text(dump_ib2c(n, generators.ib2c_grid(n, n, seed=n)))
    rows = list(bench_rows(sorted(exact_dir.glob("*.json")), ["exact"], 1, 0.25))
    rows += list(bench_rows(sorted(grid_dir.glob("*.json")), ["ib2c"], 1, 0.25))
    out = ROOT / "bench" / "scaling.csv"
    out.parent.mkdir(exist_ok=True)
    with out.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCH_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow({**row, "instance": Path(row["instance"]).name})
    exact_t = [r["time"] for r in rows if r["solver"] == "exact"]
    grid_t = [r["time"] for r in rows if r["solver"] == "ib2c"]
    e1, e2 = _slope(sizes, exact_t), _slope(sizes, grid_t)
    detail = (f"exact exponent {e1:.2f} (target <= 2.6), ib2c exponent {e2:.2f} (target <= 3.6); "
              f"times {[round(t, 2) for t in exact_t]} / {[round(t, 3) for t in grid_t]}; "
              f"CSV at bench/scaling.csv; informational")
    line = f"[INFO] A8 empirical scaling: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
