"""Deterministic SVG drawings of planar hypergraphs and tilings."""

from __future__ import annotations

import colorsys
from pathlib import Path

from hypercolor.errors import InputError
from hypercolor.hypergraph import Coloring, Hypergraph
from hypercolor.tiling import PeriodicColoring, color_point

PX = 120.0  # pixels per unit length
PAD = 30.0


def _f(x: float) -> str:
    return f"{x:.3f}"


def _convex_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def palette(k: int) -> list[str]:
    out = []
    for i in range(k):
        r, g, b = colorsys.hsv_to_rgb(i / max(k, 1), 0.55 if i % 2 else 0.75, 0.95 if i % 3 else 0.8)
        out.append(f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}")
    return out


def hypergraph_svg(H: Hypergraph, phi: Coloring | None = None) -> str:
    """Dots for vertices, segments for 2-edges, translucent hulls for larger edges."""
    if H.embedding is None:
        raise InputError("rendering needs a vertex embedding")
    if H.dimension != 2:
        raise InputError(f"rendering needs d = 2, got d = {H.dimension}")
    xs = [p[0] for p in H.embedding]
    ys = [p[1] for p in H.embedding]
    x0, y1 = min(xs), max(ys)
    w = (max(xs) - x0) * PX + 2 * PAD
    h = (y1 - min(ys)) * PX + 2 * PAD

    def pos(p):
        return PAD + (p[0] - x0) * PX, PAD + (y1 - p[1]) * PX

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w)}" height="{_f(h)}" viewBox="0 0 {_f(w)} {_f(h)}">',
        f'<rect class="background" x="0" y="0" width="{_f(w)}" height="{_f(h)}" fill="white"/>',
    ]
    for e in H.edges:
        if len(e) >= 3:
            hull = _convex_hull([pos(H.embedding[v]) for v in e])
            pts = " ".join(f"{_f(a)},{_f(b)}" for a, b in hull)
            out.append(f'<polygon class="hyperedge" points="{pts}" fill="#4060c0" fill-opacity="0.08" stroke="#4060c0" stroke-opacity="0.3"/>')
    for e in H.edges:
        if len(e) == 2:
            (a, b), (c, d) = pos(H.embedding[e[0]]), pos(H.embedding[e[1]])
            out.append(f'<line class="edge" x1="{_f(a)}" y1="{_f(b)}" x2="{_f(c)}" y2="{_f(d)}" stroke="#333" stroke-width="1.5"/>')
    fills = palette(phi.m) if phi is not None else None
    for v, p in enumerate(H.embedding):
        a, b = pos(p)
        fill = fills[phi[v] - 1] if fills else "#000"
        out.append(f'<circle class="vertex" cx="{_f(a)}" cy="{_f(b)}" r="5" fill="{fill}" stroke="#000"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def tiling_svg(pc: PeriodicColoring) -> str:
    """One period of a planar tiling, cells filled by colour, plus a unit scale bar."""
    if pc.d != 2:
        raise InputError(f"only d = 2 tilings can be drawn, got d = {pc.d}")
    cell = pc.eps * PX
    side = pc.m * cell
    bar = pc.forbidden * PX
    w = max(side, bar) + 2 * PAD
    h = side + 3 * PAD
    fills = palette(pc.n_colors)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w)}" height="{_f(h)}" viewBox="0 0 {_f(w)} {_f(h)}">',
        f'<rect class="background" x="0" y="0" width="{_f(w)}" height="{_f(h)}" fill="white"/>',
    ]
    for i in range(pc.m):
        for j in range(pc.m):
            c = color_point(pc, ((i + 0.5) * pc.eps, (j + 0.5) * pc.eps))
            idx = c[0] + pc.m * c[1]
            x = PAD + i * cell
            y = PAD + side - (j + 1) * cell
            out.append(
                f'<rect class="cell" x="{_f(x)}" y="{_f(y)}" width="{_f(cell)}" height="{_f(cell)}" fill="{fills[idx]}" stroke="#222" stroke-width="0.5"/>'
            )
    y = PAD + side + 1.5 * PAD
    out.append(f'<rect class="scale-bar" x="{_f(PAD)}" y="{_f(y - 2)}" width="{_f(bar)}" height="4" fill="#000"/>')
    out.append(f'<text x="{_f(PAD)}" y="{_f(y - 6)}" font-size="11" font-family="sans-serif">{pc.forbidden:g} ({pc.norm.name})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path: str | Path, text: str) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text)
    return p
