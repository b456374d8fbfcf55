"""Exact realization of integer quadratic forms as volume polynomials of lattice polygon pairs.

The library answers, constructively, when A x^2 + 2 B x y + C y^2 is the
normalized volume polynomial Vol2(x P + y Q) of two lattice polygons: exactly
when AC <= B^2 with A, B, C >= 0.  The same data is re-expressed as tropical
curve intersection numbers and as toric divisor intersection numbers.
"""

from .construct import (
    InvalidTripleError,
    RealizationCase,
    RealizationError,
    RealizationResult,
    RealBox,
    case_polygon,
    realize,
    realize_real,
    verify,
)
from .geom2d import (
    GeometryError,
    KernelError,
    LatticePolygon,
    SurfaceMeasure,
    VolumeTriple,
    convex_hull,
    lattice_length,
    lattice_points,
    linear_image,
    minkowski_sum,
    mixed_volume_polarization,
    mixed_volume_support,
    normalized_volume,
    support,
    surface_measure,
    translate,
    volume_polynomial,
)
from .quadform import (
    QuadForm,
    ReducedForm,
    ReductionError,
    ReductionResult,
    UnimodularMatrix,
    apply_unimodular,
    discriminant,
    reduce,
)
from .toric import (
    Fan,
    ToricDivisor,
    ToricRealization,
    divisor_from_polytope,
    is_globally_generated,
    is_unimodular,
    normal_fan_union,
    polytope_from_divisor,
    realize_toric,
    section_basis,
    toric_intersection,
    unimodular_refine,
)
from .tropical import (
    NotTransversal,
    RegularSubdivision,
    RetryLimitError,
    TropicalCurve,
    TropicalPolynomial,
    intersection_number,
    realize_tropical,
    regular_subdivision,
    self_intersection,
    transversal_intersections,
    tropical_curve,
)

__version__ = "0.1.0"

__all__ = [
    "GeometryError",
    "KernelError",
    "LatticePolygon",
    "SurfaceMeasure",
    "VolumeTriple",
    "convex_hull",
    "lattice_length",
    "lattice_points",
    "linear_image",
    "minkowski_sum",
    "mixed_volume_polarization",
    "mixed_volume_support",
    "normalized_volume",
    "support",
    "surface_measure",
    "translate",
    "volume_polynomial",
    "QuadForm",
    "ReducedForm",
    "ReductionError",
    "ReductionResult",
    "UnimodularMatrix",
    "apply_unimodular",
    "discriminant",
    "reduce",
    "InvalidTripleError",
    "RealizationCase",
    "RealizationError",
    "RealizationResult",
    "RealBox",
    "case_polygon",
    "realize",
    "realize_real",
    "verify",
    "NotTransversal",
    "RegularSubdivision",
    "RetryLimitError",
    "TropicalCurve",
    "TropicalPolynomial",
    "intersection_number",
    "realize_tropical",
    "regular_subdivision",
    "self_intersection",
    "transversal_intersections",
    "tropical_curve",
    "Fan",
    "ToricDivisor",
    "ToricRealization",
    "divisor_from_polytope",
    "is_globally_generated",
    "is_unimodular",
    "normal_fan_union",
    "polytope_from_divisor",
    "realize_toric",
    "section_basis",
    "toric_intersection",
    "unimodular_refine",
    "__version__",
]
