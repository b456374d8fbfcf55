"""Deterministic SVG emission for polygon pairs and tropical curves.

Coordinates are kept as exact rationals until the final formatting step, so
the same input always produces byte-identical output.  The drawing rule is
fixed: 32 pixels per lattice unit, viewBox = bounding box of the drawn
geometry plus a one unit margin, y axis flipped to mathematical orientation.
"""

from __future__ import annotations

from fractions import Fraction

from .geom2d import LatticePolygon
from .tropical import TropicalCurve

PX_PER_UNIT = 32
MARGIN_UNITS = 1

_STYLE = (
    ".outline{fill:#dce9f5;fill-opacity:0.55;stroke:#27496d;stroke-width:2;"
    "stroke-linejoin:round}"
    ".normal{stroke:#c0392b;stroke-width:1.5}"
    ".vertex{fill:#27496d}"
    ".label{font:11px monospace;fill:#222}"
    ".curve0{stroke:#1f77b4;stroke-width:2;fill:none}"
    ".curve1{stroke:#d62728;stroke-width:2;fill:none}"
    ".node{fill:#222}"
    ".weight{font:10px monospace;fill:#555}"
)

_ARROW = (
    '<marker id="arrow" viewBox="0 0 8 8" refX="7" refY="4" markerWidth="6" '
    'markerHeight="6" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#c0392b"/>'
    "</marker>"
)


def _fmt(value: Fraction) -> str:
    """Exact round-half-even to three decimals; no float in the path."""
    milli = round(Fraction(value) * 1000)
    sign = "-" if milli < 0 else ""
    m = abs(milli)
    return f"{sign}{m // 1000}.{m % 1000:03d}"


class Canvas:
    """Collects primitives in math coordinates, then emits one SVG document."""

    def __init__(self):
        self._elems: list[tuple] = []
        self._xs: list[Fraction] = []
        self._ys: list[Fraction] = []

    def _track(self, *pts):
        for x, y in pts:
            self._xs.append(Fraction(x))
            self._ys.append(Fraction(y))

    def line(self, p, q, cls: str, marker: bool = False):
        self._track(p, q)
        self._elems.append(("line", p, q, cls, marker))

    def polygon(self, pts, cls: str):
        self._track(*pts)
        self._elems.append(("polygon", tuple(pts), cls))

    def dot(self, p, radius_px: int, cls: str):
        self._track(p)
        self._elems.append(("dot", p, radius_px, cls))

    def reserve(self, p):
        """Grow the bounding box without drawing anything."""
        self._track(p)

    def text(self, p, s: str, cls: str):
        self._track(p)
        self._elems.append(("text", p, s, cls))

    def emit(self) -> str:
        if not self._xs:
            self._track((0, 0))
        x0 = min(self._xs) - MARGIN_UNITS
        x1 = max(self._xs) + MARGIN_UNITS
        y0 = min(self._ys) - MARGIN_UNITS
        y1 = max(self._ys) + MARGIN_UNITS
        width = (x1 - x0) * PX_PER_UNIT
        height = (y1 - y0) * PX_PER_UNIT

        def sx(x) -> str:
            return _fmt((Fraction(x) - x0) * PX_PER_UNIT)

        def sy(y) -> str:
            return _fmt((y1 - Fraction(y)) * PX_PER_UNIT)

        parts = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
            f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
            f"<defs>{_ARROW}</defs>",
            f"<style>{_STYLE}</style>",
        ]
        for elem in self._elems:
            kind = elem[0]
            if kind == "line":
                _, p, q, cls, marker = elem
                tail = ' marker-end="url(#arrow)"' if marker else ""
                parts.append(
                    f'<line x1="{sx(p[0])}" y1="{sy(p[1])}" x2="{sx(q[0])}" '
                    f'y2="{sy(q[1])}" class="{cls}"{tail}/>')
            elif kind == "polygon":
                _, pts, cls = elem
                coords = " ".join(f"{sx(x)},{sy(y)}" for x, y in pts)
                parts.append(f'<polygon points="{coords}" class="{cls}"/>')
            elif kind == "dot":
                _, p, radius, cls = elem
                parts.append(
                    f'<circle cx="{sx(p[0])}" cy="{sy(p[1])}" r="{radius}" class="{cls}"/>')
            else:
                _, p, s, cls = elem
                parts.append(
                    f'<text x="{sx(p[0])}" y="{sy(p[1])}" class="{cls}">{s}</text>')
        parts.append("</svg>")
        return "\n".join(parts) + "\n"


def _draw_polygon(canvas: Canvas, poly: LatticePolygon, shift: tuple[Fraction, Fraction],
                  name: str):
    """Outline, vertex labels with original coordinates, and outer normal arrows."""
    sx, sy = shift
    placed = [(v[0] + sx, v[1] + sy) for v in poly.vertices]
    if poly.dim == 0:
        canvas.dot(placed[0], 4, "vertex")
    elif poly.dim == 1:
        canvas.line(placed[0], placed[1], "outline")
        for p in placed:
            canvas.dot(p, 3, "vertex")
    else:
        canvas.polygon(placed, "outline")
        for p in placed:
            canvas.dot(p, 3, "vertex")
        n = len(placed)
        # arrows sit at edge midpoints; normals rescaled to sup-norm one
        for i in range(n):
            a, b = placed[i], placed[(i + 1) % n]
            edge = (poly.vertices[(i + 1) % n][0] - poly.vertices[i][0],
                    poly.vertices[(i + 1) % n][1] - poly.vertices[i][1])
            normal = (edge[1], -edge[0])
            scale = Fraction(1, max(abs(normal[0]), abs(normal[1])))
            mid = (Fraction(a[0] + b[0], 2), Fraction(a[1] + b[1], 2))
            tip = (mid[0] + normal[0] * scale, mid[1] + normal[1] * scale)
            canvas.line(mid, tip, "normal", marker=True)
    for v, p in zip(poly.vertices, placed):
        canvas.text((p[0] + Fraction(1, 8), p[1] + Fraction(1, 8)), f"({v[0]},{v[1]})", "label")
    x0, y0, x1, _ = poly.bbox()
    canvas.text((sx + Fraction(x0 + x1, 2), sy + y0 - Fraction(5, 8)), name, "label")


def render_pair(P: LatticePolygon, Q: LatticePolygon, names: tuple[str, str] = ("P", "Q")) -> str:
    """Both polygons side by side; the second is shifted right for legibility."""
    canvas = Canvas()
    _draw_polygon(canvas, P, (Fraction(0), Fraction(0)), names[0])
    gap = P.bbox()[2] - Q.bbox()[0] + 2
    _draw_polygon(canvas, Q, (Fraction(gap), Fraction(0)), names[1])
    return canvas.emit()


def _clip_ray(base, direction, box):
    """Exit point of base + t*direction, t >= 0, from the box (base inside)."""
    x0, y0, x1, y1 = box
    best = None
    for coord, d, lo, hi in ((base[0], direction[0], x0, x1), (base[1], direction[1], y0, y1)):
        if d == 0:
            continue
        t = (hi - coord) / d if d > 0 else (lo - coord) / d
        if best is None or t < best:
            best = t
    return (base[0] + best * direction[0], base[1] + best * direction[1])


def render_curves(curves: list[TropicalCurve], clip_margin: int = 3) -> str:
    """Curves overlaid in one coordinate system; unbounded pieces stop at a clip box.

    The clip box is the bounding box of all finite curve features expanded by
    `clip_margin` lattice units on every side.
    """
    xs: list[Fraction] = []
    ys: list[Fraction] = []
    for curve in curves:
        for x, y in curve.vertices:
            xs.append(Fraction(x))
            ys.append(Fraction(y))
        for line in curve.lines:
            xs.append(Fraction(line.anchor[0]))
            ys.append(Fraction(line.anchor[1]))
    if not xs:
        xs = [Fraction(0)]
        ys = [Fraction(0)]
    box = (min(xs) - clip_margin, min(ys) - clip_margin,
           max(xs) + clip_margin, max(ys) + clip_margin)
    canvas = Canvas()
    canvas.reserve((box[0], box[1]))
    canvas.reserve((box[2], box[3]))
    for idx, curve in enumerate(curves):
        cls = f"curve{idx % 2}"
        for e in curve.edges:
            a = curve.vertices[e.ends[0]]
            b = curve.vertices[e.ends[1]]
            canvas.line(a, b, cls)
            if e.weight > 1:
                mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
                canvas.text(mid, str(e.weight), "weight")
        for r in curve.rays:
            base = curve.vertices[r.vertex]
            tip = _clip_ray(base, r.direction, box)
            canvas.line(base, tip, cls)
            if r.weight > 1:
                mid = ((base[0] + tip[0]) / 2, (base[1] + tip[1]) / 2)
                canvas.text(mid, str(r.weight), "weight")
        for line in curve.lines:
            head = _clip_ray(line.anchor, line.direction, box)
            tail = _clip_ray(line.anchor, (-line.direction[0], -line.direction[1]), box)
            canvas.line(tail, head, cls)
            if line.weight > 1:
                canvas.text(line.anchor, str(line.weight), "weight")
        for v in curve.vertices:
            canvas.dot(v, 3, "node")
    return canvas.emit()
