import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fencekit.arcs import (
    DISC_C,
    OPENING_LIMIT,
    best_sector,
    bisecting_arc_between,
    crossing_count,
    relaxed_C,
    sector_arc,
    shortest_halving_arc,
    verify_arc_bound,
)
from fencekit.chords import shortest_halving_chord
from fencekit.generators import disc, rectangle, regular_ngon
from fencekit.geometry import CircularArc, ConvexBody, boundary_point, split_by_arc

from strategies import valtr_bodies


def shoelace(pts):
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def left_area_by_polygon(body, s1, s2, opening, n=20001):
    """Left area of a cut, with the arc replaced by a fine polyline."""
    a = boundary_point(body, s1)[0]
    b = boundary_point(body, s2)[0]
    arc = CircularArc(a, b, opening)
    vpar = body.cumulative_length[: body.n] / body.boundary_length
    between = (vpar - s2) % 1.0 < (s1 - s2) % 1.0
    order = np.argsort((vpar[between] - s2) % 1.0)
    ring = [b[None], body.vertices[between][order], a[None], arc.points(n)[1:-1]]
    return shoelace(np.concatenate(ring))


def test_square_chord_beats_arcs(square):
    point = shortest_halving_arc(square)
    assert point.length == pytest.approx(1.0, abs=1e-7)
    assert abs(point.arc.opening) < 1e-5
    rep = relaxed_C(square)
    assert rep.value == pytest.approx(2.0, abs=1e-6)
    assert rep.candidates["sector"] == pytest.approx(math.pi)


def test_triangle_vertex_sector(triangle):
    rep = relaxed_C(triangle)
    assert rep.kind == "sector"
    assert rep.value == pytest.approx(2 * math.pi / 3, abs=1e-9)
    assert rep.candidates["arc"] == pytest.approx(2 * math.pi / 3, abs=2e-3)


@pytest.mark.parametrize("s1,s2", [(0.1, 0.45), (0.05, 0.55), (0.2, 0.7)])
def test_bisecting_arc_against_opening_scan(square, s1, s2):
    arc = bisecting_arc_between(square, s1, s2)
    assert arc is not None
    # brute force: bracket the halving opening on a coarse scan, then refine
    ps = np.linspace(-3.0, 3.0, 121)
    excess = np.array([left_area_by_polygon(square, s1, s2, p, 2001) - 0.5 for p in ps])
    k = int(np.nonzero(np.diff(np.sign(excess)))[0][0])
    lo, hi = ps[k], ps[k + 1]
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if (left_area_by_polygon(square, s1, s2, mid) - 0.5) * excess[k] > 0:
            lo = mid
        else:
            hi = mid
    assert arc.opening == pytest.approx(0.5 * (lo + hi), abs=1e-5)
    res = split_by_arc(square, arc)
    assert res.area_left == pytest.approx(0.5, abs=1e-12)


def test_unreachable_pair_has_no_arc(square):
    # adjacent edge midpoints cut off 1/8; no arc inside the square halves it
    assert bisecting_arc_between(square, 0.125, 0.375) is None


def test_sectors(triangle, square):
    arc = sector_arc(triangle, 0)
    assert arc.opening == pytest.approx(-math.pi / 3)
    area = 0.5 * (math.pi / 3) * arc.radius**2
    assert area == pytest.approx(triangle.area / 2)
    val, _, frac = best_sector(square)
    assert val == pytest.approx(math.pi)
    assert frac == pytest.approx(0.5)
    # a dense polygon's corners are nearly flat, so its sectors cost about 2 pi
    assert best_sector(disc())[0] == pytest.approx(2 * math.pi, abs=1e-2)
    assert best_sector(ConvexBody([(0, 0), (1, 0), (1, 1), (0.5, 1.0), (0, 1)])) is not None


def test_disc_arc_is_a_diameter():
    body = disc(n=1024)
    point = shortest_halving_arc(body, grid=128)
    assert point.length == pytest.approx(2.0, abs=1e-4)
    assert relaxed_C(body, grid=128).value == pytest.approx(DISC_C, abs=2e-3)


@given(valtr_bodies)
@settings(max_examples=15, deadline=None)
def test_arc_family_properties(body):
    point = shortest_halving_arc(body)
    res = split_by_arc(body, point.arc)
    assert res.area_left == pytest.approx(body.area / 2, abs=1e-10 * body.area)
    _, chord = shortest_halving_chord(body)
    assert point.length <= chord * (1 + 1e-6)
    assert abs(point.arc.opening) <= OPENING_LIMIT + 1e-3
    assert verify_arc_bound(body)


@given(valtr_bodies, st.floats(0.3, 3.0), st.floats(0, 2 * math.pi))
@settings(max_examples=10, deadline=None)
def test_quotient_is_similarity_invariant(body, scale, phi):
    a = relaxed_C(body).value
    b = relaxed_C(body.transformed(scale, phi, (0.5, -2.0))).value
    assert b == pytest.approx(a, rel=1e-5)


def test_needle_prefers_its_sharp_corner():
    thin = ConvexBody([(0.0, 0.0), (10.0, 0.0), (0.0, 0.2)])
    rep = relaxed_C(thin)
    assert rep.kind == "sector"
    assert rep.value == pytest.approx(2 * min(thin.interior_angles))


def test_rectangle_quotient():
    assert relaxed_C(rectangle(2.0, 1.0)).value == pytest.approx(1.0, abs=1e-6)


def test_regular_polygons_below_disc():
    for n in (3, 5, 8):
        assert relaxed_C(regular_ngon(n)).value < DISC_C


def test_crossings_of_circles():
    a = CircularArc((-1.0, 0.0), (1.0, 0.0), 2.0)
    b = CircularArc((0.0, -1.0), (0.0, 1.0), -2.0)
    assert crossing_count(a, b) == 1
    assert crossing_count(a, a) == "coincide"
    far = CircularArc((5.0, 0.0), (6.0, 0.0), 1.0)
    assert crossing_count(a, far) == 0


def test_crossings_of_segments():
    a = CircularArc((0.0, 0.0), (1.0, 1.0))
    b = CircularArc((0.0, 1.0), (1.0, 0.0))
    assert crossing_count(a, b) == 1
    assert crossing_count(a, CircularArc((2.0, 2.0), (3.0, 3.0))) == 0
    assert crossing_count(a, CircularArc((0.5, 0.5), (3.0, 3.0))) == "coincide"
    # touching at an endpoint does not count
    assert crossing_count(a, CircularArc((1.0, 1.0), (2.0, 0.0))) == 0


def test_crossing_line_and_circle():
    seg = CircularArc((-2.0, 0.1), (2.0, 0.1))
    arc = CircularArc((1.0, 0.0), (-1.0, 0.0), -math.pi / 2)
    # bulges right of a -> b, i.e. upwards, reaching height sqrt(2) - 1
    assert crossing_count(seg, arc) == 2
    assert crossing_count(arc, seg) == 2
    assert crossing_count(CircularArc((-2.0, 0.5), (2.0, 0.5)), arc) == 0
