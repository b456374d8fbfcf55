"""Complete rational fans in the plane and torus-invariant divisor arithmetic.

A complete two-dimensional fan is stored as its cyclically ordered list of
primitive rays; the cones are the consecutive pairs.  Divisors are coefficient
vectors indexed by the rays.  Intersection numbers reduce to mixed volumes of
the associated polygons, so everything here stays in exact integer and
rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache

from .geom2d import (
    LatticePolygon,
    Vec,
    convex_hull,
    cross,
    is_primitive,
    lattice_points,
    mixed_volume_polarization,
    normalized_volume,
    primitive,
    support,
    surface_measure,
)

PAD_RAYS: tuple[Vec, ...] = ((1, 0), (0, 1), (-1, 0), (0, -1))


class FanError(ValueError):
    """Ray data does not describe a complete fan."""


class EmptyPolytopeError(ValueError):
    """The half-plane intersection of a divisor is empty."""


class NonLatticeVertexError(ValueError):
    """The divisor polytope has a rational, non-integral vertex."""


class NotGloballyGeneratedError(ValueError):
    pass


def _ray_cmp(u: Vec, v: Vec) -> int:
    if u == v:
        return 0
    hu = 0 if u[1] > 0 or (u[1] == 0 and u[0] > 0) else 1
    hv = 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1
    if hu != hv:
        return -1 if hu < hv else 1
    return -1 if cross(u, v) > 0 else 1


def _sort_rays(rays) -> tuple[Vec, ...]:
    return tuple(sorted(rays, key=cmp_to_key(_ray_cmp)))


@dataclass(frozen=True)
class Fan:
    """Complete fan: at least three primitive rays, counterclockwise, gaps below pi.

    The stored order starts at the ray of smallest angle measured from (1, 0).
    """

    rays: tuple[Vec, ...]

    def __post_init__(self):
        rays = tuple((int(r[0]), int(r[1])) for r in self.rays)
        for r in rays:
            if not is_primitive(r):
                raise FanError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise FanError("duplicate rays")
        if len(rays) < 3:
            raise FanError("a complete fan needs at least three rays")
        if rays != _sort_rays(rays):
            raise FanError("rays are not in canonical counterclockwise order")
        for u, v in zip(rays, rays[1:] + rays[:1]):
            if cross(u, v) <= 0:
                raise FanError(f"angular gap of at least pi between {u} and {v}")
        object.__setattr__(self, "rays", rays)

    def cones(self) -> list[tuple[Vec, Vec]]:
        return list(zip(self.rays, self.rays[1:] + self.rays[:1]))


@dataclass(frozen=True)
class ToricDivisor:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        if not all(isinstance(a, int) and not isinstance(a, bool) for a in coeffs):
            raise ValueError("divisor coefficients must be integers")
        object.__setattr__(self, "coefficients", coeffs)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)


def fan_from_rays(vectors) -> Fan:
    """Canonical fan from arbitrary nonzero ray generators."""
    rays = {primitive((int(v[0]), int(v[1]))) for v in vectors}
    return Fan(_sort_rays(rays))


def is_unimodular(fan: Fan) -> bool:
    return all(cross(u, v) == 1 for u, v in fan.cones())


def normal_fan_union(P: LatticePolygon, Q: LatticePolygon, pad: bool = False) -> Fan:
    """Fan generated by the outer normals of both polygons.

    Degenerate inputs (both low-dimensional) may not span the plane; with
    `pad` the four axis rays are added, otherwise a FanError is raised.
    """
    rays = set(surface_measure(P).normals()) | set(surface_measure(Q).normals())
    try:
        return fan_from_rays(rays)
    except FanError:
        if not pad:
            raise
    return fan_from_rays(rays | set(PAD_RAYS))


def _check_sizes(fan: Fan, D: ToricDivisor):
    if len(D) != len(fan.rays):
        raise ValueError(f"divisor has {len(D)} coefficients for {len(fan.rays)} rays")


def divisor_from_polytope(fan: Fan, P: LatticePolygon) -> ToricDivisor:
    return ToricDivisor(tuple(support(P, u) for u in fan.rays))


@lru_cache(maxsize=8192)
def _vertex_data(rays: tuple[Vec, ...], a: tuple[int, ...]) -> tuple[tuple[int, int, int], ...]:
    """Vertices of {x : <x, u_i> <= a_i} as reduced triples (px, py, q), x = (px/q, py/q).

    Completeness makes the region bounded, so every vertex is a feasible
    intersection of two independent tight constraints, and conversely.  All
    arithmetic is integral: the candidate px/q, py/q satisfies <x, u> <= c
    exactly when u[0]*px + u[1]*py <= c*q once q is normalized positive.
    """
    n = len(rays)
    verts: set[tuple[int, int, int]] = set()
    for i in range(n):
        ui, ai = rays[i], a[i]
        for j in range(i + 1, n):
            uj = rays[j]
            q = ui[0] * uj[1] - ui[1] * uj[0]
            if q == 0:
                continue
            aj = a[j]
            px = ai * uj[1] - aj * ui[1]
            py = ui[0] * aj - uj[0] * ai
            if q < 0:
                q, px, py = -q, -px, -py
            if any(u[0] * px + u[1] * py > c * q for u, c in zip(rays, a)):
                continue
            g = math.gcd(px, py, q)
            verts.add((px // g, py // g, q // g))
    return tuple(sorted(verts))


def _rational_vertices(fan: Fan, D: ToricDivisor) -> list[tuple[Fraction, Fraction]]:
    _check_sizes(fan, D)
    return sorted((Fraction(px, q), Fraction(py, q))
                  for px, py, q in _vertex_data(fan.rays, D.coefficients))


def polytope_from_divisor(fan: Fan, D: ToricDivisor) -> LatticePolygon:
    _check_sizes(fan, D)
    verts = _vertex_data(fan.rays, D.coefficients)
    if not verts:
        raise EmptyPolytopeError(f"divisor {D.coefficients} cuts out the empty set")
    bad = [(px, py, q) for px, py, q in verts if q != 1]
    if bad:
        px, py, q = bad[0]
        raise NonLatticeVertexError(f"non-lattice vertex ({Fraction(px, q)}, {Fraction(py, q)})")
    return convex_hull([(px, py) for px, py, _ in verts])


def is_globally_generated(fan: Fan, D: ToricDivisor) -> bool:
    """True when every coefficient is tight against the divisor polytope.

    An empty polytope is never globally generated.  Tightness is tested on
    the rational polytope, so singular fans where a tight divisor still has
    non-lattice vertices answer True here yet fail polytope_from_divisor.
    """
    _check_sizes(fan, D)
    verts = _vertex_data(fan.rays, D.coefficients)
    if not verts:
        return False
    # the vertices already satisfy <=, so tightness is one exact hit per ray
    return all(any(u[0] * px + u[1] * py == c * q for px, py, q in verts)
               for u, c in zip(fan.rays, D.coefficients))


def section_basis(fan: Fan, D: ToricDivisor) -> list[Vec]:
    """Lattice points of the divisor polytope, lexicographically sorted."""
    if not is_globally_generated(fan, D):
        raise NotGloballyGeneratedError(f"divisor {D.coefficients} has slack or empty polytope")
    return lattice_points(polytope_from_divisor(fan, D))


def toric_intersection(fan: Fan, D: ToricDivisor, E: ToricDivisor) -> int:
    for div in (D, E):
        if not is_globally_generated(fan, div):
            raise NotGloballyGeneratedError(f"divisor {div.coefficients} is not globally generated")
    return mixed_volume_polarization(polytope_from_divisor(fan, D),
                                     polytope_from_divisor(fan, E))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _split_ray(u: Vec, v: Vec, d: int) -> Vec:
    # primitive w strictly inside cone(u, v) with cross(u, w) = 1 and
    # cross(w, v) minimal positive; since d > 1 the minimum stays below d
    g, x0, y0 = _ext_gcd(u[0], u[1])
    assert g == 1
    w0 = (-y0, x0)
    c0 = cross(w0, v)
    r = c0 % d
    assert r != 0, "residue d would force a non-integral ray"
    t = (r - c0) // d
    w = (w0[0] + t * u[0], w0[1] + t * u[1])
    assert cross(u, w) == 1 and cross(w, v) == r and 1 <= r < d and is_primitive(w)
    return w


def unimodular_refine(fan: Fan) -> Fan:
    """Insert rays until every cone has determinant one; unimodular fans pass through."""
    rays = list(fan.rays)
    i = 0
    while i < len(rays):
        u = rays[i]
        v = rays[(i + 1) % len(rays)]
        d = cross(u, v)
        if d > 1:
            rays.insert(i + 1, _split_ray(u, v, d))
        i += 1
    refined = fan_from_rays(rays)
    assert is_unimodular(refined)
    return refined


@dataclass(frozen=True)
class ToricRealization:
    fan: Fan
    D: ToricDivisor
    E: ToricDivisor

    def intersection_matrix(self) -> list[list[int]]:
        fan, D, E = self.fan, self.D, self.E
        for div in (D, E):
            if not is_globally_generated(fan, div):
                raise NotGloballyGeneratedError(
                    f"divisor {div.coefficients} is not globally generated")
        PD = polytope_from_divisor(fan, D)
        PE = polytope_from_divisor(fan, E)
        off = mixed_volume_polarization(PD, PE)
        return [[normalized_volume(PD), off], [off, normalized_volume(PE)]]


def realize_toric(A: int, B: int, C: int, smooth: bool = False) -> ToricRealization:
    """Fan and two globally generated divisors with intersection matrix [[A,B],[B,C]].

    With `smooth` the fan is refined to unimodular cones first; the divisor
    coefficients are re-read from the polygons on the extra rays, which does
    not change the polytopes.
    """
    from .construct import realize

    result = realize(A, B, C)
    fan = normal_fan_union(result.P, result.Q, pad=True)
    if smooth:
        fan = unimodular_refine(fan)
    D = divisor_from_polytope(fan, result.P)
    E = divisor_from_polytope(fan, result.Q)
    realization = ToricRealization(fan, D, E)
    if realization.intersection_matrix() != [[A, B], [B, C]]:
        raise RuntimeError(f"intersection matrix does not realize ({A}, {B}, {C})")
    return realization


def fan_to_json(fan: Fan) -> dict:
    return {"rays": [list(r) for r in fan.rays]}


def fan_from_json(obj) -> Fan:
    try:
        rays = obj["rays"]
        vectors = [(int(x), int(y)) for x, y in rays]
        if any(not isinstance(c, int) or isinstance(c, bool)
               for x, y in rays for c in (x, y)):
            raise ValueError("ray coordinates must be integers")
    except (KeyError, TypeError, ValueError) as exc:
        raise FanError(f"bad fan JSON: {exc}") from exc
    return fan_from_rays(vectors)


def toric_to_json(realization: ToricRealization) -> dict:
    return {
        "rays": [list(r) for r in realization.fan.rays],
        "divisors": {"D": list(realization.D), "E": list(realization.E)},
        "intersection_matrix": realization.intersection_matrix(),
        "smooth": is_unimodular(realization.fan),
    }
