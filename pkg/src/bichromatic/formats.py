"""Instance files and solution records as JSON."""

from __future__ import annotations

import json
from pathlib import Path

from .geometry import GeometryError, Instance, Solution


class ParseError(ValueError):
    pass


def instance_to_json(instance: Instance) -> str:
    pairs = [[[a.x, a.y], [b.x, b.y]] for a, b in instance.pairs]
    return json.dumps({"pairs": pairs})


def instance_from_json(text: str) -> Instance:
    try:
        data = json.loads(text)
        pairs = data["pairs"]
        return Instance.from_coords([(tuple(a), tuple(b)) for a, b in pairs])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, GeometryError) as exc:
        raise ParseError(f"bad instance: {exc}") from exc


def read_instance(path) -> Instance:
    return instance_from_json(Path(path).read_text(encoding="utf-8"))


def write_instance(path, instance: Instance) -> None:
    Path(path).write_text(instance_to_json(instance), encoding="utf-8")


def solution_dict(sol: Solution, verified: bool) -> dict:
    return {
        "radius": sol.radius,
        "centers": [list(sol.disk1.center), list(sol.disk2.center)],
        "coloring": list(sol.coloring),
        "verified": verified,
    }
