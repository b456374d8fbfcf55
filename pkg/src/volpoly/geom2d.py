"""Exact integer convex geometry in the plane.

Polygons here are convex hulls of lattice points and may degenerate to a
segment or a single point, so downstream code can treat mixed dimensions
uniformly.  Volumes are normalized: the "volume" of a polygon is twice
its Euclidean area, which makes every quantity in this module an integer.
All arithmetic is on Python integers and is exact at any magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

Vec = tuple[int, int]


class GeometryError(Exception):
    """Raised for invalid geometric input."""


class KernelError(GeometryError):
    """An exactness invariant failed inside the kernel; indicates a bug."""


def cross(u, v):
    """Planar cross product u x v."""
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def vadd(u, v):
    return (u[0] + v[0], u[1] + v[1])


def vsub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def vneg(u):
    return (-u[0], -u[1])


def is_primitive(v: Vec) -> bool:
    """True when v is nonzero with coprime coordinates."""
    return math.gcd(v[0], v[1]) == 1


def primitive(v: Vec) -> Vec:
    """The primitive vector on the ray through v (v must be nonzero)."""
    g = math.gcd(v[0], v[1])
    if g == 0:
        raise GeometryError("the zero vector has no direction")
    return (v[0] // g, v[1] // g)


def turn(o, a, b):
    """Cross product of (a - o) with (b - o); positive means a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_chain(points):
    """Monotone-chain convex hull for exact coordinate pairs.

    Works for int or Fraction coordinates.  Returns hull vertices in
    counterclockwise order starting at the lexicographically least point;
    interior and collinear points are dropped.  Degenerate inputs yield
    one point or the two endpoints of a segment.
    """
    pts = sorted(set(points))
    if len(pts) == 1:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon in canonical form.

    Vertices run counterclockwise starting at the lexicographically least
    vertex, with no repeated or collinear entries.  A segment stores its
    two endpoints (least first), a point stores one vertex.  Use
    :func:`convex_hull` to build one from arbitrary points.
    """

    vertices: tuple[Vec, ...]

    def __post_init__(self):
        vs = self.vertices
        if not isinstance(vs, tuple) or not vs:
            raise GeometryError("vertices must be a non-empty tuple")
        for v in vs:
            if not (isinstance(v, tuple) and len(v) == 2
                    and isinstance(v[0], int) and isinstance(v[1], int)):
                raise GeometryError(f"bad lattice vertex {v!r}")
        if len(vs) == 2 and not vs[0] < vs[1]:
            raise GeometryError("segment endpoints must be distinct, least first")
        if len(vs) >= 3:
            if min(vs) != vs[0]:
                raise GeometryError("vertex list must start at the lexicographic minimum")
            n = len(vs)
            for i in range(n):
                if turn(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) <= 0:
                    raise GeometryError("vertices must be strictly convex in CCW order")

    @property
    def dim(self) -> int:
        """0 for a point, 1 for a segment, 2 for a genuine polygon."""
        return min(len(self.vertices) - 1, 2)

    def __iter__(self):
        return iter(self.vertices)

    def bbox(self) -> tuple[int, int, int, int]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))


class VolumeTriple(NamedTuple):
    """Coefficients of the volume polynomial of a pair: Vol(xP + yQ) = A x^2 + 2 B x y + C y^2."""

    A: int
    B: int
    C: int


@dataclass(frozen=True)
class SurfaceMeasure:
    """Finite support measure of a polygon: primitive outer normals with edge lattice lengths."""

    entries: tuple[tuple[Vec, int], ...]

    def __post_init__(self):
        sx = sy = 0
        seen = set()
        for u, length in self.entries:
            if not is_primitive(u):
                raise KernelError(f"normal {u} is not primitive")
            if length <= 0:
                raise KernelError(f"nonpositive edge length {length}")
            if u in seen:
                raise KernelError(f"repeated normal {u}")
            seen.add(u)
            sx += u[0] * length
            sy += u[1] * length
        if (sx, sy) != (0, 0):
            raise KernelError("surface measure does not close up")

    def normals(self) -> tuple[Vec, ...]:
        return tuple(u for u, _ in self.entries)


def convex_hull(points: Iterable[Vec]) -> LatticePolygon:
    """Canonical convex hull of a non-empty collection of lattice points."""
    pts = list(points)
    if not pts:
        raise GeometryError("need at least one point")
    clean = []
    for p in pts:
        if not (len(p) == 2 and isinstance(p[0], int) and isinstance(p[1], int)):
            raise GeometryError(f"bad lattice point {p!r}")
        clean.append((p[0], p[1]))
    return LatticePolygon(tuple(hull_chain(clean)))


def translate(P: LatticePolygon, t: Vec) -> LatticePolygon:
    """Translate by an integer vector; canonical order is preserved."""
    return LatticePolygon(tuple(vadd(v, t) for v in P.vertices))


def linear_image(P: LatticePolygon, m: tuple[tuple[int, int], tuple[int, int]]) -> LatticePolygon:
    """Image under the integer matrix m (rows); re-hulled since orientation may flip."""
    (a, b), (c, d) = m
    return convex_hull([(a * x + b * y, c * x + d * y) for x, y in P.vertices])


def normalized_volume(P: LatticePolygon) -> int:
    """Twice the Euclidean area; 0 for points and segments."""
    if P.dim < 2:
        return 0
    vs = P.vertices
    n = len(vs)
    vol = sum(cross(vs[i], vs[(i + 1) % n]) for i in range(n))
    if vol <= 0:
        raise KernelError("canonical polygon with nonpositive volume")
    return vol


def lattice_length(P: LatticePolygon) -> int:
    """Number of primitive steps along a segment; 0 for a point."""
    if P.dim == 2:
        raise GeometryError("lattice length is only defined for points and segments")
    if P.dim == 0:
        return 0
    d = vsub(P.vertices[1], P.vertices[0])
    return math.gcd(d[0], d[1])


def support(P: LatticePolygon, u: Vec) -> int:
    """Support function h_P(u) = max over vertices of <v, u>."""
    return max(dot(v, u) for v in P.vertices)


def surface_measure(P: LatticePolygon) -> SurfaceMeasure:
    """Primitive outer normals paired with the lattice lengths of their edges.

    A segment contributes its two opposite normals, each carrying the full
    segment length; a point has empty measure.  The weighted normals always
    sum to zero.
    """
    if P.dim == 0:
        return SurfaceMeasure(())
    if P.dim == 1:
        d = vsub(P.vertices[1], P.vertices[0])
        g = math.gcd(d[0], d[1])
        p = (d[0] // g, d[1] // g)
        n = (p[1], -p[0])
        return SurfaceMeasure(((n, g), (vneg(n), g)))
    entries = []
    vs = P.vertices
    n = len(vs)
    for i in range(n):
        e = vsub(vs[(i + 1) % n], vs[i])
        g = math.gcd(e[0], e[1])
        # outer normal of a CCW edge is the edge vector rotated clockwise
        entries.append(((e[1] // g, -e[0] // g), g))
    return SurfaceMeasure(tuple(entries))


def minkowski_sum(P: LatticePolygon, Q: LatticePolygon) -> LatticePolygon:
    """Minkowski sum, computed as the hull of pairwise vertex sums."""
    return convex_hull([vadd(p, q) for p in P.vertices for q in Q.vertices])


def mixed_volume_polarization(P: LatticePolygon, Q: LatticePolygon) -> int:
    """Mixed volume via polarization: (Vol(P + Q) - Vol(P) - Vol(Q)) / 2."""
    num = normalized_volume(minkowski_sum(P, Q)) - normalized_volume(P) - normalized_volume(Q)
    if num < 0 or num % 2:
        raise KernelError(f"polarization defect {num} is not a nonnegative even integer")
    return num // 2


def mixed_volume_support(P: LatticePolygon, Q: LatticePolygon) -> int:
    """Mixed volume via the support formula: sum of h_P(u) * length over Q's measure."""
    return sum(support(P, u) * length for u, length in surface_measure(Q).entries)


def volume_polynomial(P: LatticePolygon, Q: LatticePolygon) -> VolumeTriple:
    """The triple (Vol(P), V(P,Q), Vol(Q)), with the mixed term double-checked.

    The mixed volume is computed independently by polarization and by the
    support formula; disagreement is a kernel bug and raises.
    """
    by_polarization = mixed_volume_polarization(P, Q)
    by_support = mixed_volume_support(P, Q)
    if by_polarization != by_support:
        raise KernelError(
            f"mixed volume mismatch: polarization {by_polarization}, "
            f"support formula {by_support}")
    return VolumeTriple(normalized_volume(P), by_polarization, normalized_volume(Q))


def contains_point(P: LatticePolygon, p: Vec) -> bool:
    """Membership test, boundary inclusive."""
    vs = P.vertices
    if P.dim == 0:
        return tuple(p) == vs[0]
    if P.dim == 1:
        a, b = vs
        if turn(a, b, p) != 0:
            return False
        return min(a, b) <= tuple(p) <= max(a, b)
    n = len(vs)
    return all(turn(vs[i], vs[(i + 1) % n], p) >= 0 for i in range(n))


def lattice_points(P: LatticePolygon) -> list[Vec]:
    """All lattice points of P, in lexicographic order."""
    x0, y0, x1, y1 = P.bbox()
    return [(x, y)
            for x in range(x0, x1 + 1)
            for y in range(y0, y1 + 1)
            if contains_point(P, (x, y))]


def polygon_to_json(P: LatticePolygon) -> dict:
    return {"vertices": [[x, y] for x, y in P.vertices]}


def polygon_from_json(obj) -> LatticePolygon:
    """Parse {"vertices": [[x, y], ...]}; input need not be canonical, it is hulled."""
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise GeometryError('polygon JSON must be an object with a "vertices" key')
    raw = obj["vertices"]
    if not isinstance(raw, list) or not raw:
        raise GeometryError('"vertices" must be a non-empty list')
    pts = []
    for entry in raw:
        if not (isinstance(entry, (list, tuple)) and len(entry) == 2
                and all(isinstance(c, int) and not isinstance(c, bool) for c in entry)):
            raise GeometryError(f"bad vertex entry {entry!r}")
        pts.append((entry[0], entry[1]))
    return convex_hull(pts)
