"""Command-line front end.

  bichromatic solve inst.json --mode exact
  bichromatic solve inst.json --mode approx --eps 0.1 --svg out.svg
  bichromatic gen uniform -n 10 --seed 1 --out inst.json
  bichromatic bench instances/ --solvers exact,oracle --reps 3
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from . import generators
from .approx import approx_solve
from .exact import solve_exact
from .formats import ParseError, instance_to_json, read_instance, solution_dict
from .geometry import Instance
from .ib2c import dump_ib2c, ib2c_solve_sq, load_ib2c
from .oracle import BudgetExceeded, OracleBudget, brute_exact, covers_integral, verify_solution
from .svg import render

EXIT_OK, EXIT_PARSE, EXIT_BUDGET = 0, 2, 3


@dataclass
class RunRecord:
    instance: str
    solver: str
    radius: float
    time: float
    verified: bool
    params: dict = field(default_factory=dict)
    centers: list = field(default_factory=list)
    coloring: list = field(default_factory=list)


class Unverified(RuntimeError):
    pass


def run_solver(instance: Instance, mode: str, eps: Optional[float] = None,
               budget: Optional[OracleBudget] = None):
    if mode == "exact":
        return solve_exact(instance)
    if mode == "approx":
        if eps is None:
            raise ValueError("approx mode needs --eps")
        return approx_solve(instance, eps)
    if mode == "oracle":
        return brute_exact(instance, budget or OracleBudget())
    raise ValueError(f"unknown mode {mode!r}")


def _ib2c_record(path: str, args) -> RunRecord:
    U, pairs = load_ib2c(Path(path).read_text(encoding="utf-8"))
    t0 = time.perf_counter()
    k, c1, c2 = ib2c_solve_sq(pairs, U)
    elapsed = time.perf_counter() - t0
    if not covers_integral(pairs, c1, c2, k):
        raise Unverified("ib2c witness does not cover the instance")
    # first point red when it lies in the first disk
    coloring = [0 if (a[0] - c1[0]) ** 2 + (a[1] - c1[1]) ** 2 <= k
                and (b[0] - c2[0]) ** 2 + (b[1] - c2[1]) ** 2 <= k else 1 for a, b in pairs]
    return RunRecord(path, "ib2c", math.sqrt(k), elapsed, True, {"U": U},
                     [list(c1), list(c2)], coloring)


def solve_record(path: str, args) -> tuple[RunRecord, Instance, object]:
    if args.mode == "ib2c":
        return _ib2c_record(path, args), None, None
    instance = read_instance(path)
    budget = OracleBudget(max_pairs_exact=args.budget) if args.budget else None
    t0 = time.perf_counter()
    sol = run_solver(instance, args.mode, args.eps, budget)
    elapsed = time.perf_counter() - t0
    if not verify_solution(instance, sol):
        raise Unverified(f"{args.mode} produced a solution that does not verify")
    d = solution_dict(sol, True)
    rec = RunRecord(path, args.mode, d["radius"], elapsed, True,
                    {"eps": args.eps, "seed": args.seed}, d["centers"], d["coloring"])
    return rec, instance, sol


def cmd_solve(args) -> int:
    try:
        rec, instance, sol = solve_record(args.input, args)
    except (ParseError, json.JSONDecodeError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = json.dumps(asdict(rec))
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    if args.svg and instance is not None:
        Path(args.svg).write_text(render(instance, sol), encoding="utf-8")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "ib2c-grid":
        if args.U is None:
            print("error: ib2c-grid needs -U", file=sys.stderr)
            return EXIT_PARSE
        text = dump_ib2c(args.U, generators.ib2c_grid(args.U, args.n, args.seed))
    else:
        text = instance_to_json(generators.generate(args.kind, args.n, args.seed))
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


BENCH_FIELDS = ["instance", "solver", "rep", "n", "U", "eps", "radius", "time", "oracle_delta"]


def bench_rows(paths, solvers, reps: int, eps: float, oracle_max: int = 12):
    """Yield one CSV row dict per (instance, solver, rep)."""
    for path in paths:
        text = Path(path).read_text(encoding="utf-8")
        is_grid = '"U"' in text
        oracle_r = None
        if not is_grid:
            instance = read_instance(path)
            if len(instance) <= oracle_max:
                oracle_r = brute_exact(instance, OracleBudget(max_pairs_exact=oracle_max)).radius
        for solver in solvers:
            if is_grid != (solver == "ib2c"):
                continue
            for rep in range(reps):
                if is_grid:
                    U, pairs = load_ib2c(text)
                    t0 = time.perf_counter()
                    k, _, _ = ib2c_solve_sq(pairs, U)
                    row = {"n": len(pairs), "U": U, "eps": "", "radius": math.sqrt(k)}
                else:
                    t0 = time.perf_counter()
                    sol = run_solver(instance, solver, eps if solver == "approx" else None,
                                     OracleBudget(max_pairs_exact=max(len(instance), 1)))
                    row = {"n": len(instance), "U": "", "eps": eps if solver == "approx" else "",
                           "radius": sol.radius}
                row["time"] = time.perf_counter() - t0
                row.update(instance=str(path), solver=solver, rep=rep)
                row["oracle_delta"] = "" if oracle_r is None or is_grid else row["radius"] - oracle_r
                yield row


def cmd_bench(args) -> int:
    paths = sorted(Path(args.dir).glob("*.json"))
    solvers = [s for s in args.solvers.split(",") if s]
    writer = csv.DictWriter(sys.stdout, fieldnames=BENCH_FIELDS)
    writer.writeheader()
    try:
        for row in bench_rows(paths, solvers, args.reps, args.eps):
            writer.writerow(row)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bichromatic", description="Bichromatic 2-center solvers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance file")
    p.add_argument("input")
    p.add_argument("--mode", choices=["exact", "approx", "oracle", "ib2c"], default="exact")
    p.add_argument("--eps", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--svg", help="write a picture of the solution here")
    p.add_argument("--out", help="write the JSON record here instead of stdout")
    p.add_argument("--budget", type=int, help="max pairs for the oracle")
    p.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="generate a random instance")
    g.add_argument("kind", choices=list(generators.KINDS) + ["ib2c-grid"])
    g.add_argument("-n", type=int, required=True, help="number of pairs")
    g.add_argument("-U", type=int, help="grid size for ib2c-grid")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time solvers over a directory of instances, CSV to stdout")
    b.add_argument("dir")
    b.add_argument("--solvers", default="exact")
    b.add_argument("--reps", type=int, default=1)
    b.add_argument("--eps", type=float, default=0.25)
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
