import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fencekit.generators import disc, ellipse, rectangle, regular_ngon, unit_square
from fencekit.geometry import (
    Chord,
    CircularArc,
    ConvexBody,
    GeometryError,
    arc_inside,
    arc_length,
    area,
    boundary_point,
    chord_left_area,
    clip_halfplane,
    diameter,
    internal_disc_radius_check,
    segment_area,
    solve_opening,
    split_by_arc,
    width,
)

from strategies import angles, valtr_bodies


def test_square_basics(square):
    assert area(square) == pytest.approx(1.0, abs=1e-15)
    assert width(square) == pytest.approx(1.0)
    assert diameter(square) == pytest.approx(math.sqrt(2))
    assert square.boundary_length == pytest.approx(4.0)


def test_dense_ngon_area_matches_formula():
    n = 4096
    assert area(regular_ngon(n)) == pytest.approx(0.5 * n * math.sin(2 * math.pi / n), rel=1e-13)
    assert area(regular_ngon(n)) == pytest.approx(math.pi, abs=1e-5)


def test_triangle_width(triangle):
    assert width(triangle) == pytest.approx(math.sqrt(3) / 2)


def test_rejects_clockwise_and_nonconvex():
    with pytest.raises(GeometryError):
        ConvexBody([(0, 0), (0, 1), (1, 1), (1, 0)])
    with pytest.raises(GeometryError):
        ConvexBody([(0, 0), (2, 0), (1, 0.2), (1, 2)])
    with pytest.raises(GeometryError):
        ConvexBody([(0, 0), (1, 0)])
    with pytest.raises(GeometryError):
        ConvexBody([(0, 0), (1, 0), (1, 0), (0, 1)])


def test_rejects_double_winding():
    t = 4 * math.pi * np.arange(10) / 10
    with pytest.raises(GeometryError):
        ConvexBody(np.stack([np.cos(t), np.sin(t)], axis=1))


def test_json_round_trip(triangle):
    again = ConvexBody.from_json(triangle.to_json())
    assert np.array_equal(again.vertices, triangle.vertices)
    spec = json.dumps({"kind": "regular-ngon", "n": 8, "radius": 2.0})
    assert ConvexBody.from_json(spec).n == 8


def test_boundary_point_examples(square):
    p, t = boundary_point(square, 0.125)
    assert np.allclose(p, [0.5, 0.0]) and np.allclose(t, [1.0, 0.0])
    # at a vertex the following edge's tangent is used
    p, t = boundary_point(square, 0.25)
    assert np.allclose(p, [1.0, 0.0]) and np.allclose(t, [0.0, 1.0])
    assert square.locate([0.0, 0.5]) == pytest.approx(0.875)
    with pytest.raises(GeometryError):
        square.locate([0.5, 0.5])


def test_clip_square_in_half(square):
    kept, chord = clip_halfplane(square, (0.5, 0.0), (1.0, 0.0))
    assert kept.area == pytest.approx(0.5)
    assert chord.length == pytest.approx(1.0)
    # kept part is on the left of a -> b
    assert chord.a[1] < chord.b[1]
    assert clip_halfplane(square, (2.0, 0.0), (1.0, 0.0))[0] is square
    assert clip_halfplane(square, (-1.0, 0.0), (1.0, 0.0)) == (None, None)


@given(valtr_bodies, angles, st.floats(0.05, 0.95))
@settings(max_examples=60, deadline=None)
def test_clip_parts_add_up(body, phi, frac):
    nrm = np.array([math.cos(phi), math.sin(phi)])
    proj = body.vertices @ nrm
    q = (proj.min() + frac * (proj.max() - proj.min())) * nrm
    a, _ = clip_halfplane(body, q, nrm)
    b, _ = clip_halfplane(body, q, -nrm)
    assert a.area + b.area == pytest.approx(body.area, rel=1e-10)


@given(valtr_bodies, st.floats(0.0, 1.0), st.floats(0.0, 1.0))
@settings(max_examples=80, deadline=None)
def test_chord_left_area_matches_clipping(body, s1, s2):
    p, _ = boundary_point(body, s1)
    q, _ = boundary_point(body, s2)
    if np.hypot(*(q - p)) < 1e-6:
        return
    val = chord_left_area(body, s1, s2)
    if np.isnan(val):
        return
    d = q - p
    kept, _ = clip_halfplane(body, p, np.array([d[1], -d[0]]))
    ref = 0.0 if kept is None else kept.area
    assert val == pytest.approx(ref, abs=1e-10)


def test_segment_area_matches_sector_minus_triangle():
    c = 1.3
    for p in (0.3, 1.0, 2.5, -2.0):
        r = c / (2 * math.sin(abs(p) / 2))
        expected = math.copysign(0.5 * r * r * (abs(p) - math.sin(abs(p))), p)
        assert float(segment_area(c, p)) == pytest.approx(expected, rel=1e-13)


def test_segment_area_series_branch_is_continuous():
    for p in (0.999e-3, 1.001e-3):
        assert float(segment_area(1.0, p)) == pytest.approx(p / 12 + p**3 / 360, rel=1e-12)


@given(st.floats(0.01, 10.0), st.floats(-3.1, 3.1))
def test_solve_opening_inverts_segment_area(c, p):
    target = float(segment_area(c, p))
    q = solve_opening(c, target)
    assert float(segment_area(c, q)) == pytest.approx(target, abs=1e-13 * c * c)


def test_solve_opening_unreachable_is_nan():
    assert math.isnan(solve_opening(1.0, 1.0))


def test_arc_geometry():
    arc = CircularArc((1.0, 0.0), (-1.0, 0.0), math.pi / 2)
    assert arc.radius == pytest.approx(math.sqrt(2))
    assert arc.length == pytest.approx(math.sqrt(2) * math.pi / 2)
    assert np.allclose(arc.center, [0.0, 1.0])
    pts = arc.points(9)
    assert np.allclose(np.hypot(*(pts - arc.center).T), arc.radius)
    # bulges to the left of a -> b, which points down here
    assert pts[4][1] == pytest.approx(1 - math.sqrt(2))
    assert float(arc_length(2.0, 0.0)) == 2.0
    assert arc.reversed().reversed().opening == arc.opening
    with pytest.raises(GeometryError):
        CircularArc((0, 0), (1, 0), math.pi)


def test_split_square_by_mid_chord(square):
    res = split_by_arc(square, Chord((0.5, 0.0), (0.5, 1.0)).as_arc())
    assert (res.area_left, res.area_right) == pytest.approx((0.5, 0.5))
    assert res.cut_length == pytest.approx(1.0)
    assert (res.perim_left, res.perim_right) == pytest.approx((2.0, 2.0))


def test_split_square_by_quarter_arc(square):
    # quarter circle of radius 1 around (0, 0), bulging away from the corner
    arc = CircularArc((1.0, 0.0), (0.0, 1.0), -math.pi / 2)
    res = split_by_arc(square, arc)
    assert res.area_left == pytest.approx(math.pi / 4)
    assert res.area_right == pytest.approx(1 - math.pi / 4)


def test_arc_leaving_the_body_is_rejected(square):
    arc = CircularArc((0.2, 0.0), (0.2, 1.0), 2.0)
    assert not arc_inside(square, arc)
    with pytest.raises(GeometryError):
        split_by_arc(square, arc)


@given(valtr_bodies, st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(-3.0, 3.0))
@settings(max_examples=60, deadline=None)
def test_arc_inside_agrees_with_sampling(body, s1, s2, p):
    a, _ = boundary_point(body, s1)
    b, _ = boundary_point(body, s2)
    if np.hypot(*(b - a)) < 1e-3:
        return
    arc = CircularArc(a, b, p)
    pts = arc.points(2001)
    worst = float(np.max(pts @ body.outward_normals.T - body.offsets))
    verdict = arc_inside(body, arc, tol=1e-9)
    if worst > 1e-6:
        assert not verdict
    if verdict:
        assert worst <= 1e-8


def test_disc_radius_check():
    d = disc()
    for j in (0, 17, 1000, 2049):
        assert internal_disc_radius_check(d, d.vertices[j], 0.99)
        assert not internal_disc_radius_check(d, d.vertices[j], 1.01)


def test_disc_radius_check_square(square):
    assert not internal_disc_radius_check(square, (0.0, 0.0), 0.01)
    assert internal_disc_radius_check(square, (0.5, 0.0), 0.4)
    assert not internal_disc_radius_check(square, (0.5, 0.0), 0.51)


@given(valtr_bodies, st.floats(0.1, 10.0), angles)
@settings(max_examples=40, deadline=None)
def test_similarity_laws(body, scale, phi):
    moved = body.transformed(scale, phi, (3.0, -1.0))
    assert moved.area == pytest.approx(scale**2 * body.area, rel=1e-10)
    assert width(moved) == pytest.approx(scale * width(body), rel=1e-9)
    assert moved.boundary_length == pytest.approx(scale * body.boundary_length, rel=1e-10)


@given(valtr_bodies)
@settings(max_examples=40, deadline=None)
def test_width_at_most_diameter(body):
    assert width(body) <= diameter(body) + 1e-12


def test_ellipse_and_rectangle_widths():
    assert width(ellipse(2.0, 1.0)) == pytest.approx(2.0, rel=1e-6)
    assert width(rectangle(3.0, 0.5)) == pytest.approx(0.5)
    assert unit_square().perimeter_between(0.0, 0.5) == pytest.approx(2.0)
