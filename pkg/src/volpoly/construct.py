"""Build lattice polygon pairs whose volume polynomial is a prescribed form.

Every nonnegative integer triple (A, B, C) with A*C <= B*B is realized by a
pair of polygons with Vol(P) = A, V(P, Q) = B, Vol(Q) = C.  Positive triples
go through quadratic-form reduction and a parity-case hexagon template; the
degenerate triples use explicit segment and point constructions.  Every
realization is re-verified with both mixed-volume routines before it is
returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .geom2d import (
    LatticePolygon,
    VolumeTriple,
    convex_hull,
    mixed_volume_polarization,
    mixed_volume_support,
    normalized_volume,
)
from .quadform import QuadForm, ReductionResult, reduce


class InvalidTripleError(ValueError):
    """The requested triple is out of range (negative entry or definite form)."""


class RealizationError(RuntimeError):
    """A constructed pair failed its own verification; indicates a bug."""


class RealizationCase(str, Enum):
    """Which construction produced the pair."""

    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    CASE4 = "Case4"
    A_ZERO = "DegenerateAZero"
    C_ZERO = "DegenerateCZero"
    BOTH_ZERO = "DegenerateBothZero"
    POINT = "PointCase"


@dataclass(frozen=True)
class RealizationResult:
    P: LatticePolygon
    Q: LatticePolygon
    case: RealizationCase
    certificate: ReductionResult | None


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking a pair against a target triple, coefficient by coefficient."""

    target: VolumeTriple
    computed: VolumeTriple
    matches: tuple[bool, bool, bool]
    routes_agree: bool

    @property
    def passed(self) -> bool:
        return self.routes_agree and all(self.matches)


@dataclass(frozen=True)
class RealBox:
    """Axis-parallel box [0, width] x [0, height] with real sides."""

    width: float
    height: float


def verify(P: LatticePolygon, Q: LatticePolygon, target) -> VerificationReport:
    """Compare the pair's volume data against a target triple.

    The mixed term is computed by both routines; the report records whether
    they agree and which coefficients match.  Never raises on mismatch.
    """
    goal = VolumeTriple(*target)
    vol_p = normalized_volume(P)
    vol_q = normalized_volume(Q)
    by_pol = mixed_volume_polarization(P, Q)
    by_sup = mixed_volume_support(P, Q)
    computed = VolumeTriple(vol_p, by_pol, vol_q)
    matches = (vol_p == goal.A, by_pol == goal.B and by_sup == goal.B, vol_q == goal.C)
    return VerificationReport(goal, computed, matches, by_pol == by_sup)


def case_polygon(a: int, b: int, c: int, x: int, y: int) -> LatticePolygon:
    """Hexagon template for the reduced form a x^2 + 2 b x y - c y^2 at (x, y).

    Requires a, b, c >= 0, a + 2b - c > 0 and x >= y >= 0 with (x, y) != 0.
    The template depends on the parities of a and c; its normalized volume
    is exactly a x^2 + 2 b x y - c y^2.  A template vertex with a negative
    coordinate signals a violated precondition and raises.
    """
    if min(a, b, c) < 0:
        raise InvalidTripleError("template coefficients must be nonnegative")
    if not (x >= y >= 0) or (x, y) == (0, 0):
        raise InvalidTripleError(f"template point ({x}, {y}) must satisfy x >= y >= 0, not both zero")
    d, e = a // 2, c // 2
    if a % 2 == 0 and c % 2 == 0:
        verts = [(0, y), (0, x), (e * y, 0), (d * x + b * y, 0),
                 (d * x + b * y, x - y), (d * x + (b - e) * y, x)]
    elif a % 2 == 0:
        verts = [(0, y), (0, x), (e * y, 0), (d * x + b * y, 0),
                 (d * x + b * y, x - y), (d * x + (b - e - 1) * y, x)]
    elif c % 2 == 0:
        verts = [(0, y), (0, x), (e * y, 0), ((d + 1) * x + b * y, 0),
                 (d * x + (b + 1) * y, x - y), (d * x + (b - e) * y, x)]
    else:
        verts = [(0, y), (0, x), (e * y, 0), ((d + 1) * x + b * y, 0),
                 (d * x + (b + 1) * y, x - y), (d * x + (b - e - 1) * y, x)]
    for v in verts:
        if v[0] < 0 or v[1] < 0:
            raise InvalidTripleError(
                f"template vertex {v} has a negative coordinate; "
                "the form must be positive at (1, 1)")
    poly = convex_hull(verts)
    assert normalized_volume(poly) == a * x * x + 2 * b * x * y - c * y * y
    return poly


def _case_tag(a: int, c: int) -> RealizationCase:
    if a % 2 == 0:
        return RealizationCase.CASE1 if c % 2 == 0 else RealizationCase.CASE2
    return RealizationCase.CASE3 if c % 2 == 0 else RealizationCase.CASE4


def _check_triple(A: int, B: int, C: int) -> None:
    for v in (A, B, C):
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidTripleError(f"coefficients must be integers, got {v!r}")
        if v < 0:
            raise InvalidTripleError(f"negative coefficient {v}")
    if A * C > B * B:
        raise InvalidTripleError("definite form: AC > B^2")


def realize(A: int, B: int, C: int) -> RealizationResult:
    """Construct a polygon pair with volume polynomial A x^2 + 2 B x y + C y^2.

    The pair is verified on the spot with both mixed-volume routines; a
    mismatch raises RealizationError.
    """
    _check_triple(A, B, C)
    certificate: ReductionResult | None = None
    if A > 0 and C > 0:
        # B > 0 is forced by B*B >= A*C
        certificate = reduce(QuadForm(A, B, C))
        f = certificate.reduced
        (x1, y1), (x2, y2) = certificate.transform.columns()
        P = case_polygon(f.a, f.b, f.c, x1, y1)
        Q = case_polygon(f.a, f.b, f.c, x2, y2)
        case = _case_tag(f.a, f.c)
    elif B == 0:
        # one polygon must be a point, since A*C <= 0 here
        case = RealizationCase.POINT
        if A == 0 and C == 0:
            P = convex_hull([(0, 0)])
            Q = convex_hull([(0, 0)])
        elif A == 0:
            P = convex_hull([(0, 0)])
            Q = convex_hull([(0, 0), (C, 0), (0, 1)])
        else:
            P = convex_hull([(0, 0), (A, 0), (0, 1)])
            Q = convex_hull([(0, 0)])
    elif A == 0:
        # unit segment against a trapezoid of height B and volume C
        s = C // B + 1
        r = s * B - C  # 0 < r <= B
        P = convex_hull([(0, 0), (1, 0)])
        Q = convex_hull([(s, 0), (1, 0), (0, r), (0, B)])
        case = RealizationCase.BOTH_ZERO if C == 0 else RealizationCase.A_ZERO
    else:
        # C == 0 < A: mirror of the previous branch with the roles swapped
        sub = realize(0, B, A)
        P, Q = sub.Q, sub.P
        case = RealizationCase.C_ZERO
    report = verify(P, Q, (A, B, C))
    if not report.passed:
        raise RealizationError(
            f"realization of ({A}, {B}, {C}) failed verification: "
            f"computed {tuple(report.computed)}, routes agree: {report.routes_agree}")
    return RealizationResult(P, Q, case, certificate)


def realize_real(A: float, B: float, C: float, *, tol: float = 1e-9) -> tuple[RealBox, RealBox]:
    """Realize a real triple with B^2 >= AC by two axis-parallel boxes.

    Returns boxes K1 = [0, alpha] x [0, beta] and K2 = [0, gamma] x [0, delta]
    with alpha*beta = A, (alpha*delta + beta*gamma) / 2 = B, gamma*delta = C,
    up to floating-point round-off.
    """
    for v in (A, B, C):
        if not math.isfinite(v) or v < 0:
            raise InvalidTripleError(f"coefficients must be finite and nonnegative, got {v!r}")
    k = B * B - A * C
    if k < -tol * max(1.0, A * C, B * B):
        raise InvalidTripleError("definite form: AC > B^2 beyond tolerance")
    k = max(k, 0.0)
    if A > 0:
        alpha, beta = 1.0, float(A)
        gamma = (B + math.sqrt(k)) / A
        delta = 0.0 if gamma == 0.0 else C / gamma
    elif B > 0:
        alpha, beta = 1.0, 0.0
        gamma, delta = C / (2.0 * B), 2.0 * B
    else:
        alpha, beta, gamma, delta = 0.0, 0.0, 1.0, float(C)
    return RealBox(alpha, beta), RealBox(gamma, delta)


def realization_to_json(result: RealizationResult) -> dict:
    from .geom2d import polygon_to_json
    from .quadform import reduction_to_json

    doc = {
        "P": polygon_to_json(result.P),
        "Q": polygon_to_json(result.Q),
        "case": result.case.value,
        "verified": True,
    }
    if result.certificate is not None:
        cert = result.certificate
        original = apply_back(cert)
        doc["reduction"] = reduction_to_json(original, cert)
    else:
        doc["reduction"] = None
    return doc


def apply_back(cert: ReductionResult) -> QuadForm:
    """Recover the original form from a reduction certificate."""
    from .quadform import apply_unimodular

    return apply_unimodular(cert.reduced.signed(), cert.transform)
