"""Deterministic SVG and ASCII drawings of designs, symmetry markers and nets.

Marker glyphs:

* hollow square  - quarter-turn without tau
* filled square  - quarter-turn with tau
* hollow lens    - half-turn without tau
* filled lens    - half-turn with tau

The G1 lattice unit is outlined solid and the units it escribes are dashed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .grid import Design, HalfPoint
from .lattice import rot90
from .symmetry import Rejection, SymmetrySurvey, classify, shortest_vector, survey as run_survey

DARK = "#333333"
PALE = "#f2f2f2"
INK = "#000000"


@dataclass(frozen=True)
class RenderSpec:
    cell_size: int = 20
    show_markers: bool = True
    show_lattice: bool = True

    def __post_init__(self):
        if self.cell_size <= 0:
            raise ValueError("cell size must be positive")


def _fmt(v) -> str:
    v = float(v)
    return str(int(v)) if v.is_integer() else f"{v:.3f}".rstrip("0")


def ascii_art(d: Design) -> str:
    """Rows from the top, '#' for dark (warp over) and '.' for pale."""
    T = d.torus_side
    return "\n".join("".join("#" if d.cells[x, y] else "." for x in range(T)) for y in range(T - 1, -1, -1)) + "\n"


def _translates(p: HalfPoint, basis, T: int) -> List[Tuple[int, int]]:
    """Doubled points equivalent to p under the lattice that lie in [0, 2T]^2."""
    (a, _), (x0, c) = basis
    out = []
    for j in range(-(T // c) - 2, T // c + 3):
        y = p.dy + 2 * j * c
        if not 0 <= y <= 2 * T:
            continue
        base = p.dx + 2 * j * x0
        for i in range((-base) // (2 * a) - 1, (2 * T - base) // (2 * a) + 2):
            x = base + 2 * i * a
            if 0 <= x <= 2 * T:
                out.append((x, y))
    return sorted(out)


class _Canvas:
    def __init__(self, T: int, cs: int):
        self.T, self.cs = T, cs
        self.parts: List[str] = []

    def pt(self, dx, dy) -> Tuple[str, str]:
        """Doubled plane coordinates to pixels (y up)."""
        return _fmt(Fraction(dx, 2) * self.cs), _fmt((self.T - Fraction(dy, 2)) * self.cs)

    def add(self, s: str):
        self.parts.append(s)


def _cells(c: _Canvas, d: Design):
    T, cs = d.torus_side, c.cs
    c.add(f'<rect x="0" y="0" width="{T * cs}" height="{T * cs}" fill="{PALE}"/>')
    for x in range(T):
        for y in range(T):
            if d.cells[x, y]:
                c.add(f'<rect x="{x * cs}" y="{(T - 1 - y) * cs}" width="{cs}" height="{cs}" fill="{DARK}"/>')
    for k in range(T + 1):
        c.add(f'<line x1="{k * cs}" y1="0" x2="{k * cs}" y2="{T * cs}" stroke="#999999" stroke-width="0.5"/>')
        c.add(f'<line x1="0" y1="{k * cs}" x2="{T * cs}" y2="{k * cs}" stroke="#999999" stroke-width="0.5"/>')


def _markers(c: _Canvas, s: SymmetrySurvey):
    r = max(2, c.cs // 4)
    for centre, tau in s.quarter_centers:
        for dx, dy in _translates(centre, s.translations, c.T):
            x, y = c.pt(dx, dy)
            fill = INK if tau else "white"
            c.add(f'<rect class="quarter{" tau" if tau else ""}" x="{_fmt(float(x) - r)}" y="{_fmt(float(y) - r)}" '
                  f'width="{2 * r}" height="{2 * r}" fill="{fill}" stroke="{INK}"/>')
    for centre, tau in s.half_centers:
        if any(q == centre for q, _ in s.quarter_centers):
            continue
        for dx, dy in _translates(centre, s.translations, c.T):
            x, y = c.pt(dx, dy)
            fill = INK if tau else "white"
            c.add(f'<ellipse class="half{" tau" if tau else ""}" cx="{x}" cy="{y}" rx="{_fmt(r * 1.2)}" ry="{_fmt(r * 0.6)}" '
                  f'fill="{fill}" stroke="{INK}"/>')


def _square(c: _Canvas, centre: Tuple[int, int], side: Tuple[int, int], dashed: bool):
    """Square with doubled centre and (undoubled) side vector."""
    w = rot90(side)
    pts = []
    for a, b in ((-1, -1), (1, -1), (1, 1), (-1, 1)):
        pts.append(c.pt(centre[0] + a * side[0] + b * w[0], centre[1] + a * side[1] + b * w[1]))
    dash = ' stroke-dasharray="4,3"' if dashed else ""
    c.add(f'<polygon class="{"sub-unit" if dashed else "unit"}" points="{" ".join(f"{x},{y}" for x, y in pts)}" '
          f'fill="none" stroke="#c00000" stroke-width="1.5"{dash}/>')


def _lattice(c: _Canvas, d: Design, s: SymmetrySurvey):
    try:
        rep = classify(d, s)
    except Rejection:
        return
    side = shortest_vector(s.g1_translations)
    centre = s.quarter_centers[0][0]
    # put the outline near the middle of the drawing
    T = d.torus_side
    cands = _translates(centre, s.translations, T)
    cx, cy = min(cands, key=lambda p: ((p[0] - T) ** 2 + (p[1] - T) ** 2))
    _square(c, (cx, cy), side, dashed=False)
    cur = side
    for _ in range(rep.level - 1):
        r = rot90(cur)
        cur = ((cur[0] - r[0]) // 2, (cur[1] - r[1]) // 2)
        _square(c, (cx, cy), cur, dashed=True)


def render_svg(d: Design, spec: RenderSpec = RenderSpec(), survey: Optional[SymmetrySurvey] = None) -> str:
    T, cs = d.torus_side, spec.cell_size
    c = _Canvas(T, cs)
    _cells(c, d)
    if spec.show_markers or spec.show_lattice:
        s = survey or run_survey(d)
        if spec.show_lattice:
            _lattice(c, d, s)
        if spec.show_markers:
            _markers(c, s)
    title = f"<title>{d.label}</title>" if d.label else ""
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{T * cs}" height="{T * cs}" '
            f'viewBox="0 0 {T * cs} {T * cs}">{title}')
    return "\n".join([head] + c.parts + ["</svg>"]) + "\n"


def render_net_svg(net, cell_size: int = 12) -> str:
    """The plane design under the six faces of a cube net, face edges dashed."""
    cs = cell_size
    xs = [p[0] for f in net.faces for p in f.corners]
    ys = [p[1] for f in net.faces for p in f.corners]
    x0, x1 = int(min(xs)) - 1, int(max(xs)) + 2
    y0, y1 = int(min(ys)) - 1, int(max(ys)) + 2
    W, H = (x1 - x0) * cs, (y1 - y0) * cs

    def px(p):
        return _fmt((p[0] - x0) * cs), _fmt((y1 - p[1]) * cs)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">']
    parts.append('<defs><clipPath id="net">')
    for f in net.faces:
        parts.append(f'<polygon points="{" ".join(",".join(px(p)) for p in f.corners)}"/>')
    parts.append("</clipPath></defs>")
    parts.append('<g clip-path="url(#net)">')
    d = net.design
    for x in range(x0, x1):
        for y in range(y0, y1):
            fill = DARK if d(x, y) else PALE
            parts.append(f'<rect x="{(x - x0) * cs}" y="{(y1 - y - 1) * cs}" width="{cs}" height="{cs}" fill="{fill}"/>')
    parts.append("</g>")
    for f in net.faces:
        parts.append(f'<polygon class="face" points="{" ".join(",".join(px(p)) for p in f.corners)}" '
                     f'fill="none" stroke="{INK}" stroke-width="1.5" stroke-dasharray="5,3"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
