"""SVG and TikZ drawings of colored diagonals in a polygon.

Vertices are numbered clockwise starting at 12 o'clock.  Red and blue
diagonals carry an arrowhead at their end point, green ones are plain.
Output depends only on the input, so repeated renders are byte-identical.
"""
from __future__ import annotations

import math

from .diagonal_model import endpoints

COLORS = {"R": "#c0392b", "B": "#1f5fbf", "G": "#2e8b57"}
TIKZ = {"R": "red!75!black", "B": "blue!75!black", "G": "green!50!black"}


def vertex_xy(k: int, N: int, radius: float = 1.0) -> tuple[float, float]:
    """Position of vertex k (1-based) with y pointing up."""
    th = 2 * math.pi * (k - 1) / N
    return radius * math.sin(th), radius * math.cos(th)


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def svg(diagonals, N: int, title: str = "", size: int = 360) -> str:
    r = size * 0.4
    c = size / 2

    def pt(k):
        x, y = vertex_xy(k, N, r)
        return c + x, c - y

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    if title:
        out.append(f"  <title>{title}</title>")
    out.append("  <defs>")
    for col, hexc in COLORS.items():
        if col == "G":
            continue
        out.append(f'    <marker id="arr{col}" viewBox="0 0 10 10" refX="9" refY="5" '
                   f'markerWidth="7" markerHeight="7" orient="auto-start-reverse">'
                   f'<path d="M0,0 L10,5 L0,10 z" fill="{hexc}"/></marker>')
    out.append("  </defs>")
    poly = " ".join(f"{_f(x)},{_f(y)}" for x, y in (pt(k) for k in range(1, N + 1)))
    out.append(f'  <polygon points="{poly}" fill="none" stroke="#444" stroke-width="1.2"/>')
    for d in sorted(diagonals):
        a, b = endpoints(d, N)
        (x1, y1), (x2, y2) = pt(a), pt(b)
        col = d[0]
        mark = f' marker-end="url(#arr{col})"' if col in "RB" else ""
        out.append(f'  <line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
                   f'stroke="{COLORS[col]}" stroke-width="2"{mark}/>')
    for k in range(1, N + 1):
        x, y = vertex_xy(k, N, r + 14)
        out.append(f'  <text x="{_f(c + x)}" y="{_f(c - y + 4)}" font-size="11" '
                   f'text-anchor="middle" font-family="sans-serif">{k}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def tikz(diagonals, N: int) -> str:
    out = ["\\begin{tikzpicture}[scale=2.5]"]
    pts = [vertex_xy(k, N) for k in range(1, N + 1)]
    out.append("  \\draw[gray] " + " -- ".join(f"({_f(x)},{_f(y)})" for x, y in pts)
               + " -- cycle;")
    for k, (x, y) in enumerate(pts, 1):
        out.append(f"  \\node[font=\\scriptsize] at ({_f(1.12 * x)},{_f(1.12 * y)}) {{{k}}};")
    for d in sorted(diagonals):
        a, b = endpoints(d, N)
        (x1, y1), (x2, y2) = pts[a - 1], pts[b - 1]
        style = TIKZ[d[0]] + (", ->, thick" if d[0] in "RB" else ", thick")
        out.append(f"  \\draw[{style}] ({_f(x1)},{_f(y1)}) -- ({_f(x2)},{_f(y2)});")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"
