"""Minimal SVG rendering of an instance and a solution."""

from __future__ import annotations

from typing import Optional

from .geometry import Instance, Solution

RED, BLUE = "#d62728", "#1f77b4"


def render(instance: Instance, sol: Optional[Solution] = None, size: int = 600) -> str:
    xs = [p.x for p in instance.points]
    ys = [p.y for p in instance.points]
    if sol is not None:
        for d in (sol.disk1, sol.disk2):
            xs += [d.center.x - d.radius, d.center.x + d.radius]
            ys += [d.center.y - d.radius, d.center.y + d.radius]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    pad = 0.05 * span
    x0, y0, w = min(xs) - pad, min(ys) - pad, span + 2 * pad
    dot = w / 150.0
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{x0} {y0} {w} {w}">',
        # flip y so the picture matches the usual math orientation
        f'<g transform="translate(0 {2 * y0 + w}) scale(1 -1)">',
    ]
    if sol is not None:
        for d, color in ((sol.disk1, RED), (sol.disk2, BLUE)):
            out.append(f'<circle cx="{d.center.x}" cy="{d.center.y}" r="{d.radius}" '
                       f'fill="{color}" fill-opacity="0.2" stroke="{color}" stroke-width="{dot / 3}"/>')
    for k, (a, b) in enumerate(instance.pairs):
        out.append(f'<line x1="{a.x}" y1="{a.y}" x2="{b.x}" y2="{b.y}" stroke="#888" stroke-width="{dot / 4}"/>')
        colors = ("#444", "#444")
        if sol is not None:
            colors = (RED, BLUE) if sol.coloring[k] == 0 else (BLUE, RED)
        for p, c in zip((a, b), colors):
            out.append(f'<circle cx="{p.x}" cy="{p.y}" r="{dot}" fill="{c}"/>')
    out.append("</g></svg>")
    return "\n".join(out) + "\n"
