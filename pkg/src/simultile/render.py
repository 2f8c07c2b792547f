"""Plain-text SVG drawings of supports and circle projections.

Purely presentational: coordinates are floats, and nothing drawn here
feeds back into a decision.
"""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .graph import CellGraph
from .sets import ElementarySet, project
from .stepfn import PiecewiseFn

__all__ = ["svg_construction", "svg_graph"]

_W, _H = 900, 420
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c")


def _header(title: str) -> list[str]:
    return [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
            f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
            f'<title>{escape(title)}</title>',
            '<rect width="100%" height="100%" fill="white"/>']


def _number_line(X: ElementarySet, y: float, label: str) -> list[str]:
    out = [f'<text x="20" y="{y - 18}">{escape(label)}</text>']
    if not X:
        return out + [f'<line x1="40" y1="{y}" x2="{_W - 40}" y2="{y}" stroke="#999"/>']
    lo, hi = (float(v) for v in X.bounds())
    span = (hi - lo) or 1.0
    scale = (_W - 80) / span

    def sx(v):
        return 40 + (float(v) - lo) * scale

    out.append(f'<line x1="40" y1="{y}" x2="{_W - 40}" y2="{y}" stroke="#999"/>')
    for iv in X.parts:
        out.append(f'<line x1="{sx(iv.lo):.2f}" y1="{y}" x2="{sx(iv.hi):.2f}" y2="{y}" '
                   f'stroke="{_PALETTE[0]}" stroke-width="6"/>')
    out.append(f'<text x="40" y="{y + 18}">{lo:.4f}</text>')
    out.append(f'<text x="{_W - 40}" y="{y + 18}" text-anchor="end">{hi:.4f}</text>')
    return out


def _arc_path(cx, cy, r, t0, t1) -> str:
    if t1 - t0 >= 2 * math.pi - 1e-9:
        return f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" STROKE/>'
    x0, y0 = cx + r * math.cos(t0), cy + r * math.sin(t0)
    x1, y1 = cx + r * math.cos(t1), cy + r * math.sin(t1)
    large = 1 if t1 - t0 > math.pi else 0
    return f'<path d="M {x0:.2f} {y0:.2f} A {r} {r} 0 {large} 1 {x1:.2f} {y1:.2f}" fill="none" STROKE/>'


def _circle(X: ElementarySet, cx: float, cy: float, r: float, color: str, width: int, label: str) -> list[str]:
    L = float(X.ambient)
    out = [f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="#ccc"/>',
           f'<text x="{cx}" y="{cy + r + 22}" text-anchor="middle">{escape(label)}</text>']
    for iv in X.parts:
        t0 = 2 * math.pi * float(iv.lo) / L - math.pi / 2
        t1 = 2 * math.pi * float(iv.hi) / L - math.pi / 2
        out.append(_arc_path(cx, cy, r, t0, t1).replace(
            "STROKE", f'stroke="{color}" stroke-width="{width}"'))
    return out


def svg_construction(f: PiecewiseFn, alpha, beta, covered_a: ElementarySet | None = None,
                     covered_b: ElementarySet | None = None, title: str = "construction") -> str:
    """``supp f`` on a number line above its images on ``T_alpha`` and ``T_beta``.

    Thick arcs are the projected support; thin outer arcs mark the domains
    on which the levels were certified.
    """
    supp = f.support()
    out = _header(title)
    out += _number_line(supp, 60, f"supp f  (measure {supp.measure().to_decimal(6)})")
    for k, (L, cov, name) in enumerate(((alpha, covered_a, "alpha"), (beta, covered_b, "beta"))):
        cx = _W / 4 + k * _W / 2
        out += _circle(project(supp, L), cx, 250, 90, _PALETTE[0], 8, f"T_{name}, length {L}")
        if cov is not None:
            out += _circle(cov, cx, 250, 104, _PALETTE[2], 3, "")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def svg_graph(G: CellGraph, title: str = "cell graph") -> str:
    """Vertex cells as arcs on the two circles, edge cells as chords between arc midpoints."""
    out = _header(title)
    centers = {"A": (_W / 4, 210), "B": (3 * _W / 4, 210)}
    r = 140

    def mid(cell, L, side):
        lo, hi = cell.arc.parts[0].lo, cell.arc.parts[-1].hi
        t = 2 * math.pi * (float(lo) + float(hi)) / 2 / float(L) - math.pi / 2
        cx, cy = centers[side]
        return cx + r * math.cos(t), cy + r * math.sin(t)

    for e in G.edge_cells:
        x0, y0 = mid(G.a_cells[e.a_index], G.alpha, "A")
        x1, y1 = mid(G.b_cells[e.b_index], G.beta, "B")
        out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" '
                   f'stroke="#888" stroke-width="1"/>')
    for side, cells, L, color in (("A", G.a_cells, G.alpha, _PALETTE[0]),
                                  ("B", G.b_cells, G.beta, _PALETTE[1])):
        cx, cy = centers[side]
        for c in cells:
            out += _circle(c.arc, cx, cy, r, color, 6, "")
        out.append(f'<text x="{cx}" y="{cy + r + 30}" text-anchor="middle">'
                   f'{side}: {len(cells)} cells on T of length {escape(str(L))}</text>')
    out.append(f'<text x="20" y="20">edges {len(G.edge_cells)}, eta {G.eta().to_decimal(6)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
