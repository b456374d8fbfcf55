from fractions import Fraction

import pytest

from volpoly.geom2d import GeometryError, mixed_volume_polarization
from volpoly.tropical import (
    DEFAULT_RETRY_CAP,
    LIFT_DENOMINATOR,
    NotTransversal,
    RETRY_CAP_ENV,
    RetryLimitError,
    TropicalPolynomial,
    curve_from_json,
    curve_to_json,
    intersection_number,
    realize_tropical,
    realize_tropical_full,
    regular_subdivision,
    retry_cap,
    self_intersection,
    translate_curve,
    transversal_intersections,
    tropical_curve,
)

import volpoly.tropical as tropical_mod


def tp(d):
    return TropicalPolynomial(tuple(d.items()))


LINE = tp({(0, 0): 0, (1, 0): 0, (0, 1): 0})
SEGMENT2 = tp({(0, 0): 0, (2, 0): 0})
RAISED_SQUARE = tp({(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 1})


class TestPolynomial:
    def test_terms_canonicalized(self):
        f = TropicalPolynomial((((1, 0), 3), ((0, 0), Fraction(1, 2))))
        assert f.terms == (((0, 0), Fraction(1, 2)), ((1, 0), Fraction(3)))
        assert f.support() == [(0, 0), (1, 0)]
        assert f.lifts() == {(0, 0): Fraction(1, 2), (1, 0): Fraction(3)}

    def test_rejects_empty_duplicates_floats(self):
        with pytest.raises(GeometryError):
            TropicalPolynomial(())
        with pytest.raises(GeometryError):
            tp({})
        with pytest.raises(GeometryError):
            TropicalPolynomial((((0, 0), 0), ((0, 0), 1)))
        with pytest.raises(GeometryError):
            tp({(0, 0): 0.5})

    def test_newton_polygon(self):
        assert LINE.newton_polygon().vertices == ((0, 0), (1, 0), (0, 1))


class TestSubdivision:
    def test_trivial_lift_single_cell(self):
        sub = regular_subdivision(LINE)
        assert len(sub.cells) == 1
        assert sub.cells[0].vertices == ((0, 0), (1, 0), (0, 1))
        assert all(not e.interior for e in sub.edges)

    def test_raised_corner_splits_square(self):
        sub = regular_subdivision(RAISED_SQUARE)
        assert [c.vertices for c in sub.cells] == [
            ((0, 0), (1, 0), (0, 1)),
            ((0, 1), (1, 0), (1, 1)),
        ]
        marks = {(e.a, e.b): e.interior for e in sub.edges}
        assert marks == {
            ((0, 0), (0, 1)): False,
            ((0, 0), (1, 0)): False,
            ((0, 1), (1, 0)): True,
            ((0, 1), (1, 1)): False,
            ((1, 0), (1, 1)): False,
        }

    def test_cells_tile_the_newton_polygon(self):
        f = tp({(0, 0): 0, (3, 0): 1, (0, 3): 2, (1, 1): -1})
        sub = regular_subdivision(f)
        from volpoly.geom2d import normalized_volume
        assert sum(normalized_volume(c) for c in sub.cells) == normalized_volume(f.newton_polygon())

    def test_point_support(self):
        sub = regular_subdivision(tp({(2, 5): 7}))
        assert len(sub.cells) == 1 and sub.cells[0].dim == 0
        assert sub.edges == ()

    def test_segment_support_cells_per_unit(self):
        sub = regular_subdivision(SEGMENT2)
        assert len(sub.cells) == 1
        sub = regular_subdivision(tp({(0, 0): 0, (1, 0): -1, (2, 0): 0}))
        assert len(sub.cells) == 2


class TestCurve:
    def test_line(self):
        c = tropical_curve(LINE)
        assert c.vertices == ((Fraction(0), Fraction(0)),)
        assert c.edges == ()
        assert sorted((r.vertex, r.direction, r.weight) for r in c.rays) == [
            (0, (-1, -1), 1), (0, (0, 1), 1), (0, (1, 0), 1)]

    def test_line_with_shifted_lifts(self):
        c = tropical_curve(tp({(0, 0): 0, (1, 0): -3, (0, 1): 2}))
        assert c.vertices == ((Fraction(3), Fraction(-2)),)

    def test_segment_support_gives_weighted_line(self):
        c = tropical_curve(SEGMENT2)
        assert c.vertices == () and c.rays == () and c.edges == ()
        (line,) = c.lines
        assert line.anchor == (Fraction(0), Fraction(0))
        assert line.direction == (0, 1)
        assert line.weight == 2

    def test_raised_square(self):
        c = tropical_curve(RAISED_SQUARE)
        assert c.vertices == ((Fraction(0), Fraction(0)), (Fraction(-1), Fraction(-1)))
        (edge,) = c.edges
        assert edge.ends == (0, 1)
        assert edge.direction == (-1, -1)
        assert edge.weight == 1
        assert sorted((r.vertex, r.direction, r.weight) for r in c.rays) == [
            (0, (0, 1), 1), (0, (1, 0), 1), (1, (-1, 0), 1), (1, (0, -1), 1)]

    def test_duality_counts(self):
        f = tp({(0, 0): 0, (3, 0): 1, (0, 3): 2, (1, 1): -1, (2, 1): 0})
        sub = regular_subdivision(f)
        curve = tropical_curve(f)
        two_cells = [c for c in sub.cells if c.dim == 2]
        assert len(curve.vertices) == len(two_cells)
        assert len(curve.edges) == sum(1 for e in sub.edges if e.interior)
        assert len(curve.rays) == sum(1 for e in sub.edges if not e.interior)

    def test_point_support_rejected(self):
        with pytest.raises(GeometryError):
            tropical_curve(tp({(2, 5): 7}))

    def test_translate(self):
        c = tropical_curve(LINE)
        moved = translate_curve(c, (Fraction(1, 3), Fraction(-2)))
        assert moved.vertices == ((Fraction(1, 3), Fraction(-2)),)
        assert moved.rays[0].direction == c.rays[0].direction


class TestIntersections:
    def test_two_lines_one_point(self):
        a = tropical_curve(LINE)
        b = tropical_curve(tp({(0, 0): Fraction(1, 7), (1, 0): 0, (0, 1): Fraction(2, 7)}))
        assert transversal_intersections(a, b) == [((Fraction(1, 7), Fraction(0)), 1)]
        assert intersection_number(a, b) == 1

    def test_weighted_line_hits_ray_with_multiplicity(self):
        heavy = tropical_curve(SEGMENT2)
        other = tropical_curve(tp({(0, 0): 0, (1, 0): -3, (0, 1): 2}))
        assert transversal_intersections(heavy, other) == [((Fraction(0), Fraction(-5)), 2)]
        # the count agrees with the mixed volume of the Newton polygons
        assert intersection_number(heavy, other) == mixed_volume_polarization(
            SEGMENT2.newton_polygon(), LINE.newton_polygon())

    def test_overlap_rejected(self):
        a = tropical_curve(LINE)
        with pytest.raises(NotTransversal, match="overlap"):
            transversal_intersections(a, tropical_curve(LINE))

    def test_meeting_at_vertex_rejected(self):
        a = tropical_curve(LINE)
        b = tropical_curve(tp({(0, 0): 0, (1, 0): 0, (0, 1): 1}))
        assert b.vertices == ((Fraction(0), Fraction(-1)),)
        with pytest.raises(NotTransversal, match="vertex"):
            transversal_intersections(a, b)

    def test_self_intersection_values(self):
        assert self_intersection(tropical_curve(LINE)) == 1
        assert self_intersection(tropical_curve(SEGMENT2)) == 0
        assert self_intersection(tropical_curve(RAISED_SQUARE)) == 2

    def test_self_intersection_seed_stable(self):
        c = tropical_curve(RAISED_SQUARE)
        assert self_intersection(c, seed=5) == self_intersection(c, seed=5) == 2


class TestRealize:
    def test_running_example(self):
        r = realize_tropical_full(2, 3, 2, seed=0)
        assert r.attempts == 1
        assert intersection_number(r.curve_f, r.curve_g) == 3
        assert self_intersection(r.curve_f, seed=0) == 2
        assert self_intersection(r.curve_g, seed=0) == 2

    def test_curve_pair_shortcut(self):
        f, g = realize_tropical(1, 2, 3, seed=1)
        assert intersection_number(f, g) == 2
        assert self_intersection(f, seed=1) == 1
        assert self_intersection(g, seed=1) == 3

    def test_degenerate_triples(self):
        f, g = realize_tropical(0, 2, 0, seed=0)
        assert f.lines and g.lines
        assert intersection_number(f, g) == 2

        f, g = realize_tropical(0, 0, 4, seed=0)
        assert f.is_empty
        assert self_intersection(g, seed=0) == 4

    def test_zero_triple_rejected(self):
        from volpoly.construct import InvalidTripleError
        with pytest.raises(InvalidTripleError):
            realize_tropical(0, 0, 0)

    def test_retry_limit(self, monkeypatch):
        monkeypatch.setattr(tropical_mod, "_random_rational", lambda rng: Fraction(0))
        with pytest.raises(RetryLimitError):
            realize_tropical_full(1, 1, 1, seed=0, cap=3)

    def test_retry_cap_env(self, monkeypatch):
        monkeypatch.delenv(RETRY_CAP_ENV, raising=False)
        assert retry_cap() == DEFAULT_RETRY_CAP
        monkeypatch.setenv(RETRY_CAP_ENV, "7")
        assert retry_cap() == 7
        monkeypatch.setenv(RETRY_CAP_ENV, "zero")
        with pytest.raises(ValueError):
            retry_cap()
        monkeypatch.setenv(RETRY_CAP_ENV, "0")
        with pytest.raises(ValueError):
            retry_cap()


class TestJson:
    def test_round_trip(self):
        curve = tropical_curve(RAISED_SQUARE)
        doc = curve_to_json(curve)
        assert set(doc) == {"vertices", "edges", "rays", "lines"}
        assert curve_from_json(doc) == curve

    def test_round_trip_with_lines(self):
        curve = tropical_curve(SEGMENT2)
        assert curve_from_json(curve_to_json(curve)) == curve

    def test_rational_coordinates_survive(self):
        c = translate_curve(tropical_curve(LINE), (Fraction(1, 3), Fraction(0)))
        back = curve_from_json(curve_to_json(c))
        assert back.vertices[0][0] == Fraction(1, 3)


def test_lift_denominator_is_prime():
    n = LIFT_DENOMINATOR
    assert n > 1 and all(n % p for p in range(2, int(n ** 0.5) + 1))
