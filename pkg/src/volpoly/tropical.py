"""Tropical plane curves with exact rational arithmetic.

A min-plus polynomial min(c_{a,b} + a x + b y) induces a regular subdivision
of its Newton polygon (projected lower faces of the lifted support) and a
dual curve: one vertex per two-dimensional cell, one bounded edge per interior
subdivision edge, one ray per boundary subdivision edge.  A one-dimensional
Newton polygon yields a union of parallel weighted lines instead.  No floating
point is used anywhere in this module.
"""

from __future__ import annotations

import math
import os
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .construct import InvalidTripleError, realize
from .geom2d import (
    GeometryError,
    KernelError,
    LatticePolygon,
    Vec,
    convex_hull,
    cross,
    dot,
    lattice_points,
    normalized_volume,
    primitive,
    turn,
    vsub,
)

RatVec = tuple[Fraction, Fraction]

LIFT_DENOMINATOR = 1_000_003
LIFT_NUMERATOR_BOUND = 10**6
DEFAULT_RETRY_CAP = 64
RETRY_CAP_ENV = "VOLPOLY_RETRY_CAP"


class NotTransversal(Exception):
    """The two curves meet a vertex, overlap along an edge, or pile up at a point."""


class RetryLimitError(RuntimeError):
    """No transversal configuration found within the retry cap."""


def retry_cap() -> int:
    """Retry budget for re-drawing lifts/translations; VOLPOLY_RETRY_CAP overrides."""
    raw = os.environ.get(RETRY_CAP_ENV)
    if raw is None:
        return DEFAULT_RETRY_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{RETRY_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{RETRY_CAP_ENV} must be positive, got {cap}")
    return cap


def _as_lift(value) -> Fraction:
    if isinstance(value, float):
        raise GeometryError("lifts must be exact rationals, not floats")
    return Fraction(value)


@dataclass(frozen=True)
class TropicalPolynomial:
    """Min-plus polynomial: value at (x, y) is min over terms of lift + a x + b y."""

    terms: tuple[tuple[Vec, Fraction], ...]

    def __post_init__(self):
        if not self.terms:
            raise GeometryError("a tropical polynomial needs at least one term")
        canon = tuple(sorted(((p[0], p[1]), _as_lift(c)) for p, c in self.terms))
        pts = [p for p, _ in canon]
        if len(set(pts)) != len(pts):
            raise GeometryError("support points must be distinct")
        object.__setattr__(self, "terms", canon)

    def support(self) -> list[Vec]:
        return [p for p, _ in self.terms]

    def lifts(self) -> dict[Vec, Fraction]:
        return dict(self.terms)

    def newton_polygon(self) -> LatticePolygon:
        return convex_hull(self.support())


@dataclass(frozen=True)
class SubdivisionEdge:
    """Edge of a regular subdivision; endpoints stored least first."""

    a: Vec
    b: Vec
    interior: bool

    @property
    def length(self) -> int:
        d = vsub(self.b, self.a)
        return math.gcd(d[0], d[1])


@dataclass(frozen=True)
class RegularSubdivision:
    cells: tuple[LatticePolygon, ...]
    edges: tuple[SubdivisionEdge, ...]


@dataclass(frozen=True)
class CurveEdge:
    """Bounded edge between two curve vertices; direction points from ends[0] to ends[1]."""

    ends: tuple[int, int]
    direction: Vec
    weight: int


@dataclass(frozen=True)
class CurveRay:
    vertex: int
    direction: Vec
    weight: int


@dataclass(frozen=True)
class CurveLine:
    """Full line through `anchor`; occurs only for one-dimensional Newton polygons."""

    anchor: RatVec
    direction: Vec
    weight: int


@dataclass(frozen=True)
class TropicalCurve:
    vertices: tuple[RatVec, ...]
    edges: tuple[CurveEdge, ...]
    rays: tuple[CurveRay, ...]
    lines: tuple[CurveLine, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not (self.vertices or self.edges or self.rays or self.lines)


EMPTY_CURVE = TropicalCurve((), (), (), ())


def _lift_det(z: dict[Vec, int], p: Vec, q: Vec, r: Vec, s: Vec) -> int:
    """Orientation of the lifted point s against the plane through lifted p, q, r.

    With p, q, r counterclockwise in the plane, a negative value means s lies
    strictly below that plane.
    """
    ax, ay, az = q[0] - p[0], q[1] - p[1], z[q] - z[p]
    bx, by, bz = r[0] - p[0], r[1] - p[1], z[r] - z[p]
    cx, cy, cz = s[0] - p[0], s[1] - p[1], z[s] - z[p]
    return (ax * (by * cz - bz * cy)
            - ay * (bx * cz - bz * cx)
            + az * (bx * cy - by * cx))


def _integer_lifts(lift: dict[Vec, Fraction]) -> dict[Vec, int]:
    # a common positive scale does not change the lower hull
    scale = math.lcm(*(c.denominator for c in lift.values()))
    return {p: int(c * scale) for p, c in lift.items()}


def _lower_envelope(items):
    """Breakpoints of the lower envelope of (position, height) pairs, position-sorted."""
    hull = []
    for item in items:
        while len(hull) >= 2 and turn(hull[-2], hull[-1], item) <= 0:
            hull.pop()
        hull.append(item)
    return hull


def _line_param(base: Vec, step: Vec, p: Vec) -> int:
    # p = base + k * step for a primitive step; p collinear by assumption
    return (p[0] - base[0]) // step[0] if step[0] else (p[1] - base[1]) // step[1]


def _lower_cells(pts: list[Vec], lift: dict[Vec, int], newton: LatticePolygon) -> list[LatticePolygon]:
    """Two-dimensional cells of the regular subdivision, by advancing-front pivoting."""
    vs = newton.vertices
    n = len(vs)
    sides = [(vs[i], vsub(vs[(i + 1) % n], vs[i])) for i in range(n)]

    def on_boundary(a: Vec, b: Vec) -> bool:
        return any(cross(d, vsub(a, anchor)) == 0 and cross(d, vsub(b, anchor)) == 0
                   for anchor, d in sides)

    # seed with the first lower-envelope edge along the first side of the
    # Newton polygon; the interior lies to its left
    anchor, d = sides[0]
    step = primitive(d)
    span = _line_param(anchor, step, (anchor[0] + d[0], anchor[1] + d[1]))
    by_param = {}
    for p in pts:
        if cross(d, vsub(p, anchor)) == 0:
            k = _line_param(anchor, step, p)
            if 0 <= k <= span:
                by_param[k] = p
    env = _lower_envelope(sorted((k, lift[p]) for k, p in by_param.items()))
    seed = (by_param[env[0][0]], by_param[env[1][0]])

    queue = deque([seed])
    seen: set[tuple[Vec, Vec]] = set()
    cells: dict[tuple[Vec, ...], LatticePolygon] = {}
    while queue:
        p, q = queue.popleft()
        if (p, q) in seen:
            continue
        seen.add((p, q))
        pq = vsub(q, p)
        candidates = [r for r in pts if cross(pq, vsub(r, p)) > 0]
        if not candidates:
            raise KernelError("subdivision edge with no cell on its interior side")
        best = candidates[0]
        for s in candidates[1:]:
            if _lift_det(lift, p, q, best, s) < 0:
                best = s
        face = []
        for t in pts:
            side = _lift_det(lift, p, q, best, t)
            if side < 0:
                raise KernelError("pivot did not reach a supporting plane")
            if side == 0:
                face.append(t)
        cell = convex_hull(face)
        if cell.dim != 2:
            raise KernelError("degenerate lower face in a two-dimensional subdivision")
        key = cell.vertices
        if key in cells:
            continue
        cells[key] = cell
        m = len(key)
        for i in range(m):
            u, v = key[i], key[(i + 1) % m]
            if not on_boundary(u, v):
                queue.append((v, u))
    return [cells[k] for k in sorted(cells)]


def regular_subdivision(f: TropicalPolynomial) -> RegularSubdivision:
    """Projected lower faces of the lifted support, as cells plus marked edges."""
    pts = f.support()
    newton = f.newton_polygon()
    if newton.dim == 0:
        return RegularSubdivision((newton,), ())
    lift = _integer_lifts(f.lifts())
    if newton.dim == 1:
        base, top = newton.vertices
        step = primitive(vsub(top, base))
        keyed = sorted((_line_param(base, step, p), p) for p in pts)
        env = _lower_envelope([(k, lift[p]) for k, p in keyed])
        by_param = dict(keyed)
        cells = []
        for (k0, _), (k1, _) in zip(env, env[1:]):
            cells.append(convex_hull([by_param[k0], by_param[k1]]))
        edges = tuple(SubdivisionEdge(c.vertices[0], c.vertices[1], False) for c in cells)
        return RegularSubdivision(tuple(cells), edges)

    cells = _lower_cells(pts, lift, newton)
    if sum(normalized_volume(c) for c in cells) != normalized_volume(newton):
        raise KernelError("subdivision cells do not tile the Newton polygon")
    counts: dict[tuple[Vec, Vec], int] = {}
    for cell in cells:
        ks = cell.vertices
        m = len(ks)
        for i in range(m):
            a, b = ks[i], ks[(i + 1) % m]
            key = (a, b) if a < b else (b, a)
            counts[key] = counts.get(key, 0) + 1
    edges = []
    for (a, b), cnt in sorted(counts.items()):
        if cnt not in (1, 2):
            raise KernelError(f"subdivision edge {(a, b)} bounds {cnt} cells")
        edges.append(SubdivisionEdge(a, b, interior=(cnt == 2)))
    return RegularSubdivision(tuple(cells), tuple(edges))


def _dual_vertex(cell: LatticePolygon, lift: dict[Vec, Fraction]) -> RatVec:
    # the point where all terms of the cell tie: two linear equations
    w0, w1, w2 = cell.vertices[:3]
    d1, d2 = vsub(w1, w0), vsub(w2, w0)
    r1 = lift[w0] - lift[w1]
    r2 = lift[w0] - lift[w2]
    det = cross(d1, d2)
    x = Fraction(r1 * d2[1] - r2 * d1[1], det)
    y = Fraction(d1[0] * r2 - d2[0] * r1, det)
    base = lift[w0] + w0[0] * x + w0[1] * y
    for w in cell.vertices:
        if lift[w] + w[0] * x + w[1] * y != base:
            raise KernelError("cell terms do not tie at the dual vertex")
    return (x, y)


def _primitive_rational(d: tuple[Fraction, Fraction]) -> Vec:
    scale = math.lcm(d[0].denominator, d[1].denominator)
    return primitive((int(d[0] * scale), int(d[1] * scale)))


def tropical_curve(f: TropicalPolynomial) -> TropicalCurve:
    """Dual curve of the regular subdivision, with weights and balancing checked."""
    newton = f.newton_polygon()
    if newton.dim == 0:
        raise GeometryError("Newton polygon is a single point; there is no curve")
    sub = regular_subdivision(f)
    lift = f.lifts()
    if newton.dim == 1:
        lines = []
        for cell in sub.cells:
            a, b = cell.vertices
            d = vsub(b, a)
            w = math.gcd(d[0], d[1])
            p = (d[0] // w, d[1] // w)
            # the two terms tie where <p, v> equals their lift gap per step
            q = Fraction(lift[a] - lift[b], w)
            anchor = (q / p[0], Fraction(0)) if p[0] else (Fraction(0), q / p[1])
            lines.append(CurveLine(anchor, (-p[1], p[0]), w))
        if len(lines) != len(sub.cells):
            raise KernelError("line count disagrees with the cell count")
        return TropicalCurve((), (), (), tuple(lines))

    cell_index = {cell.vertices: i for i, cell in enumerate(sub.cells)}
    vertices = tuple(_dual_vertex(cell, lift) for cell in sub.cells)

    incident: dict[tuple[Vec, Vec], list[int]] = {}
    for cell in sub.cells:
        ks = cell.vertices
        m = len(ks)
        for i in range(m):
            a, b = ks[i], ks[(i + 1) % m]
            key = (a, b) if a < b else (b, a)
            incident.setdefault(key, []).append(cell_index[cell.vertices])

    edges: list[CurveEdge] = []
    rays: list[CurveRay] = []
    for se in sub.edges:
        key = (se.a, se.b)
        touching = incident[key]
        evec = vsub(se.b, se.a)
        if se.interior:
            i, j = touching
            vi, vj = vertices[i], vertices[j]
            if vi == vj:
                raise KernelError("adjacent cells share a dual vertex")
            direction = _primitive_rational((vj[0] - vi[0], vj[1] - vi[1]))
            if dot(direction, evec) != 0:
                raise KernelError("dual edge is not orthogonal to its subdivision edge")
            edges.append(CurveEdge((i, j), direction, se.length))
        else:
            (i,) = touching
            cell = sub.cells[i]
            third = next(w for w in cell.vertices if turn(se.a, se.b, w) != 0)
            perp = primitive((-evec[1], evec[0]))
            if dot(perp, vsub(third, se.a)) < 0:
                perp = (-perp[0], -perp[1])
            rays.append(CurveRay(i, perp, se.length))

    balance = [(0, 0) for _ in vertices]

    def add(i: int, direction: Vec, w: int):
        bx, by = balance[i]
        balance[i] = (bx + w * direction[0], by + w * direction[1])

    for e in edges:
        add(e.ends[0], e.direction, e.weight)
        add(e.ends[1], (-e.direction[0], -e.direction[1]), e.weight)
    for r in rays:
        add(r.vertex, r.direction, r.weight)
    if any(b != (0, 0) for b in balance):
        raise KernelError("curve is not balanced")
    return TropicalCurve(vertices, tuple(edges), tuple(rays), ())


def translate_curve(curve: TropicalCurve, t: RatVec) -> TropicalCurve:
    tx, ty = Fraction(t[0]), Fraction(t[1])
    return TropicalCurve(
        tuple((x + tx, y + ty) for x, y in curve.vertices),
        curve.edges,
        curve.rays,
        tuple(CurveLine((l.anchor[0] + tx, l.anchor[1] + ty), l.direction, l.weight)
              for l in curve.lines),
    )


@dataclass(frozen=True)
class _Piece:
    base: RatVec
    direction: Vec
    weight: int
    t_min: Fraction | None  # None means unbounded below
    t_max: Fraction | None  # None means unbounded above


def _pieces(curve: TropicalCurve) -> list[_Piece]:
    out = []
    zero = Fraction(0)
    for e in curve.edges:
        p0 = curve.vertices[e.ends[0]]
        p1 = curve.vertices[e.ends[1]]
        dx = e.direction[0]
        t_end = (p1[0] - p0[0]) / dx if dx else (p1[1] - p0[1]) / e.direction[1]
        if t_end <= 0:
            raise KernelError("bounded edge with nonpositive extent")
        out.append(_Piece(p0, e.direction, e.weight, zero, t_end))
    for r in curve.rays:
        out.append(_Piece(curve.vertices[r.vertex], r.direction, r.weight, zero, None))
    for l in curve.lines:
        out.append(_Piece(l.anchor, l.direction, l.weight, None, None))
    return out


def _inside(piece: _Piece, t: Fraction) -> bool:
    if piece.t_min is not None and t < piece.t_min:
        return False
    if piece.t_max is not None and t > piece.t_max:
        return False
    return True


def _at_endpoint(piece: _Piece, t: Fraction) -> bool:
    return t == piece.t_min or t == piece.t_max


def _collinear_overlap(a: _Piece, b: _Piece) -> None:
    """Raise NotTransversal unless the collinear pieces are disjoint."""
    # map b's parameter range into a's parameter
    off = (b.base[0] - a.base[0], b.base[1] - a.base[1])
    dx = a.direction[0]
    shift = off[0] / dx if dx else off[1] / a.direction[1]
    same_dir = b.direction == a.direction
    ratio = 1 if same_dir else -1

    def mapped(t):
        return None if t is None else shift + ratio * t

    lo2, hi2 = mapped(b.t_min), mapped(b.t_max)
    if not same_dir:
        lo2, hi2 = hi2, lo2
    lo = a.t_min if lo2 is None else (lo2 if a.t_min is None else max(a.t_min, lo2))
    hi = a.t_max if hi2 is None else (hi2 if a.t_max is None else min(a.t_max, hi2))
    if lo is None or hi is None:
        raise NotTransversal("curves overlap along a line")
    if lo > hi:
        return
    if lo == hi:
        raise NotTransversal("curves touch at a vertex")
    raise NotTransversal("curves overlap along parallel edges")


def transversal_intersections(cf: TropicalCurve, cg: TropicalCurve) -> list[tuple[RatVec, int]]:
    """All intersection points with local numbers w(e) w(h) |det(u, v)|.

    Raises NotTransversal when the curves share a vertex, overlap along an
    edge, or more than one pair of edges passes through the same point.
    """
    found: dict[RatVec, int] = {}
    pieces_g = _pieces(cg)
    for A in _pieces(cf):
        for B in pieces_g:
            d = cross(A.direction, B.direction)
            off = (B.base[0] - A.base[0], B.base[1] - A.base[1])
            if d == 0:
                if cross(A.direction, off) != 0:
                    continue
                _collinear_overlap(A, B)
                continue
            s = Fraction(cross(off, B.direction), d)
            t = Fraction(cross(off, A.direction), d)
            if not (_inside(A, s) and _inside(B, t)):
                continue
            if _at_endpoint(A, s) or _at_endpoint(B, t):
                raise NotTransversal("intersection at a curve vertex")
            pt = (A.base[0] + s * A.direction[0], A.base[1] + s * A.direction[1])
            if pt in found:
                raise NotTransversal("two edge pairs meet at one point")
            found[pt] = A.weight * B.weight * abs(d)
    return sorted(found.items())


def intersection_number(cf: TropicalCurve, cg: TropicalCurve) -> int:
    """Sum of the local numbers over a transversal intersection."""
    return sum(local for _, local in transversal_intersections(cf, cg))


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-LIFT_NUMERATOR_BOUND, LIFT_NUMERATOR_BOUND), LIFT_DENOMINATOR)


def self_intersection(curve: TropicalCurve, seed: int = 0, cap: int | None = None) -> int:
    """Intersection number with a generically translated copy of the curve.

    Curves without vertices (unions of parallel lines, or the empty curve)
    self-intersect in degree zero by definition.  Translations are re-drawn
    on NotTransversal up to the retry cap.
    """
    if not curve.vertices:
        return 0
    cap = retry_cap() if cap is None else cap
    rng = random.Random(seed)
    for _ in range(cap):
        shift = (_random_rational(rng), _random_rational(rng))
        try:
            return intersection_number(curve, translate_curve(curve, shift))
        except NotTransversal:
            continue
    raise RetryLimitError(f"no transversal translate after {cap} attempts")


@dataclass(frozen=True)
class TropicalRealization:
    f: TropicalPolynomial
    g: TropicalPolynomial
    curve_f: TropicalCurve
    curve_g: TropicalCurve
    attempts: int


def _generic_polynomial(P: LatticePolygon, rng: random.Random) -> TropicalPolynomial:
    pts = lattice_points(P)
    return TropicalPolynomial(tuple((p, _random_rational(rng)) for p in pts))


def _curve_or_empty(f: TropicalPolynomial) -> TropicalCurve:
    if len(f.terms) == 1:
        return EMPTY_CURVE
    return tropical_curve(f)


def realize_tropical_full(A: int, B: int, C: int, seed: int = 0,
                          cap: int | None = None) -> TropicalRealization:
    """Curves with self-intersections A and C and mutual intersection number B.

    Supports are all lattice points of the realized polygon pair; lifts are
    seeded rationals, re-drawn when the pair fails to meet transversally.
    """
    if A + B + C <= 0 and min(A, B, C) >= 0:
        raise InvalidTripleError("the zero triple has no curve realization")
    result = realize(A, B, C)
    cap = retry_cap() if cap is None else cap
    rng = random.Random(seed)
    for attempt in range(1, cap + 1):
        f = _generic_polynomial(result.P, rng)
        g = _generic_polynomial(result.Q, rng)
        curve_f = _curve_or_empty(f)
        curve_g = _curve_or_empty(g)
        try:
            transversal_intersections(curve_f, curve_g)
        except NotTransversal:
            continue
        return TropicalRealization(f, g, curve_f, curve_g, attempt)
    raise RetryLimitError(f"no transversal lift in {cap} attempts")


def realize_tropical(A: int, B: int, C: int, seed: int = 0,
                     cap: int | None = None) -> tuple[TropicalCurve, TropicalCurve]:
    full = realize_tropical_full(A, B, C, seed, cap)
    return full.curve_f, full.curve_g


def _rat_str(q: Fraction) -> str:
    return str(q)


def _rat_parse(s) -> Fraction:
    if isinstance(s, float):
        raise GeometryError("rational fields must be strings or integers, not floats")
    return Fraction(s)


def curve_to_json(curve: TropicalCurve) -> dict:
    return {
        "vertices": [[_rat_str(x), _rat_str(y)] for x, y in curve.vertices],
        "edges": [{"ends": list(e.ends), "direction": list(e.direction), "weight": e.weight}
                  for e in curve.edges],
        "rays": [{"vertex": r.vertex, "direction": list(r.direction), "weight": r.weight}
                 for r in curve.rays],
        "lines": [{"anchor": [_rat_str(l.anchor[0]), _rat_str(l.anchor[1])],
                   "direction": list(l.direction), "weight": l.weight}
                  for l in curve.lines],
    }


def curve_from_json(obj) -> TropicalCurve:
    try:
        vertices = tuple((_rat_parse(x), _rat_parse(y)) for x, y in obj["vertices"])
        edges = tuple(CurveEdge((e["ends"][0], e["ends"][1]),
                                (e["direction"][0], e["direction"][1]), e["weight"])
                      for e in obj["edges"])
        rays = tuple(CurveRay(r["vertex"], (r["direction"][0], r["direction"][1]), r["weight"])
                     for r in obj["rays"])
        lines = tuple(CurveLine((_rat_parse(l["anchor"][0]), _rat_parse(l["anchor"][1])),
                                (l["direction"][0], l["direction"][1]), l["weight"])
                      for l in obj.get("lines", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise GeometryError(f"bad curve JSON: {exc}") from exc
    return TropicalCurve(vertices, edges, rays, lines)
