"""Integer binary quadratic forms a x^2 + 2 b x y + c y^2 and their reduction.

The reduction brings a form with positive coefficients and nonnegative
discriminant b^2 - ac to the shape a x^2 + 2 b x y - c y^2 with a, b, c >= 0
and positive value at (1, 1), via a product of elementary unimodular steps.
"""

from __future__ import annotations

from dataclasses import dataclass


class ReductionError(ValueError):
    """The form cannot be reduced (nonpositive coefficient or negative discriminant)."""


@dataclass(frozen=True)
class QuadForm:
    """The form a x^2 + 2 b x y + c y^2 with integer coefficients."""

    a: int
    b: int
    c: int

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + 2 * self.b * x * y + self.c * y * y


def discriminant(f: QuadForm) -> int:
    """b^2 - a c; nonnegative exactly for the indefinite and degenerate forms."""
    return f.b * f.b - f.a * f.c


@dataclass(frozen=True)
class UnimodularMatrix:
    """Integer 2x2 matrix with determinant +1 or -1, stored by columns (x1,y1), (x2,y2)."""

    x1: int
    x2: int
    y1: int
    y2: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise ValueError(f"matrix determinant {self.det} is not +-1")

    @property
    def det(self) -> int:
        return self.x1 * self.y2 - self.x2 * self.y1

    def columns(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.x1, self.y1), (self.x2, self.y2)

    def __matmul__(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        return UnimodularMatrix(
            self.x1 * other.x1 + self.x2 * other.y1,
            self.x1 * other.x2 + self.x2 * other.y2,
            self.y1 * other.x1 + self.y2 * other.y1,
            self.y1 * other.x2 + self.y2 * other.y2,
        )

    @classmethod
    def identity(cls) -> "UnimodularMatrix":
        return cls(1, 0, 0, 1)


SWAP = UnimodularMatrix(0, 1, 1, 0)


def apply_unimodular(f: QuadForm, g: UnimodularMatrix) -> QuadForm:
    """The form f(g * (x, y)): substitute the columns of g into f."""
    (x1, y1), (x2, y2) = g.columns()
    return QuadForm(
        f(x1, y1),
        f.a * x1 * x2 + f.b * (x1 * y2 + x2 * y1) + f.c * y1 * y2,
        f(x2, y2),
    )


@dataclass(frozen=True)
class ReducedForm:
    """a x^2 + 2 b x y - c y^2 with a, b, c >= 0; the minus sign on c is implicit."""

    a: int
    b: int
    c: int

    def signed(self) -> QuadForm:
        return QuadForm(self.a, self.b, -self.c)

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + 2 * self.b * x * y - self.c * y * y


@dataclass(frozen=True)
class ReductionResult:
    """Reduced form plus the certificate transform and an auditable step trace.

    `transform` G satisfies apply_unimodular(reduced.signed(), G) == original,
    with columns (x1,y1), (x2,y2) obeying x_i >= y_i >= 0.  `steps` lists the
    division quotients in order; `swapped` records the optional initial swap
    of the outer coefficients.
    """

    reduced: ReducedForm
    transform: UnimodularMatrix
    swapped: bool
    steps: tuple[int, ...]


def reduce(form: QuadForm) -> ReductionResult:
    """Reduce a positive indefinite form by repeated division with remainder.

    Each step divides the middle coefficient by the trailing one and applies
    the elementary matrix (0 1; 1 -s).  The trailing coefficient strictly
    decreases until it leaves the positives; if the resulting form is not
    positive at (1, 1), the last step is redone with the least quotient that
    makes the trailing coefficient nonpositive.
    """
    if form.a <= 0 or form.b <= 0 or form.c <= 0:
        raise ReductionError("reduction expects three positive coefficients")
    if discriminant(form) < 0:
        raise ReductionError("definite form: b^2 - a*c < 0")
    swapped = form.a < form.c
    a, b, c = (form.c, form.b, form.a) if swapped else (form.a, form.b, form.c)
    steps: list[int] = []
    prev = (a, b, c)
    while c > 0:
        prev = (a, b, c)
        s = b // c  # b >= c > 0 here, forced by the discriminant sign
        a, b, c = c, b - s * c, a - 2 * b * s + c * s * s
        steps.append(s)
        assert s >= 1 and c < prev[2], "division step must shrink c"
    if a + 2 * b + c <= 0:
        # crossed zero too far: redo the last step with the least workable quotient
        pa, pb, pc = prev
        s = 1
        while pa - 2 * pb * s + pc * s * s > 0:
            s += 1
        assert s <= steps[-1]
        a, b, c = pc, pb - s * pc, pa - 2 * pb * s + pc * s * s
        steps[-1] = s
    g = UnimodularMatrix.identity()
    for s in reversed(steps):
        g = g @ UnimodularMatrix(s, 1, 1, 0)
    if swapped:
        g = g @ SWAP
    reduced = ReducedForm(a, b, -c)
    assert reduced.a >= 0 and reduced.b >= 0 and reduced.c >= 0
    assert reduced(1, 1) > 0
    assert g.x1 >= g.y1 >= 0 and g.x2 >= g.y2 >= 0
    assert apply_unimodular(reduced.signed(), g) == form
    return ReductionResult(reduced, g, swapped, tuple(steps))


def form_to_json(f: QuadForm) -> dict:
    return {"A": f.a, "B": f.b, "C": f.c}


def form_from_json(obj) -> QuadForm:
    if not isinstance(obj, dict) or not all(k in obj for k in ("A", "B", "C")):
        raise ReductionError('form JSON must be an object with keys "A", "B", "C"')
    vals = [obj[k] for k in ("A", "B", "C")]
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in vals):
        raise ReductionError("form coefficients must be integers")
    return QuadForm(*vals)


def reduction_to_json(form: QuadForm, result: ReductionResult) -> dict:
    r = result.reduced
    return {
        "input": form_to_json(form),
        "reduced": {"a": r.a, "b": r.b, "c": r.c},
        "sign_convention": "a*x^2 + 2*b*x*y - c*y^2",
        "transform": {"columns": [list(col) for col in result.transform.columns()],
                      "det": result.transform.det},
        "swap": result.swapped,
        "steps": list(result.steps),
    }
