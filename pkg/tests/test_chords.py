import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from fencekit.chords import (
    AUERBACH_G,
    cap_quotient,
    chord_optimality_residuals,
    halving_chord_in_direction,
    halving_chord_lengths,
    halving_chords,
    relaxed_G,
    shortest_halving_chord,
    verify_chord_bound,
)
from fencekit.generators import ellipse, rectangle, regular_ngon
from fencekit.geometry import ConvexBody, clip_halfplane, width

from strategies import angles, valtr_bodies


def brute_halving_length(body, sigma):
    """Halving chord length found by root finding on clipped areas."""
    u = np.array([math.cos(sigma), math.sin(sigma)])
    proj = body.vertices @ u
    lo, hi = proj.min(), proj.max()

    def excess(t):
        kept, _ = clip_halfplane(body, t * u, u)
        return (0.0 if kept is None else kept.area) - body.area / 2

    t = brentq(excess, lo, hi, xtol=1e-14, rtol=1e-15)
    _, chord = clip_halfplane(body, t * u, u)
    return chord.length


def test_square(square):
    chord, length = shortest_halving_chord(square)
    assert length == pytest.approx(1.0, abs=1e-9)
    rep = relaxed_G(square)
    assert rep.value == pytest.approx(2.0, abs=1e-8)
    assert rep.kind == "chord"
    assert rep.candidates["cap"] == pytest.approx(4.0)


def test_triangle_chord_and_cap_tie(triangle):
    _, length = shortest_halving_chord(triangle)
    assert length == pytest.approx(1 / math.sqrt(2), abs=1e-8)
    rep = relaxed_G(triangle)
    assert rep.value == pytest.approx(4 / math.sqrt(3), abs=1e-7)
    assert rep.candidates["cap"] == pytest.approx(rep.candidates["chord"], abs=1e-6)


def test_disc(unit_disc):
    _, length = shortest_halving_chord(unit_disc)
    assert length == pytest.approx(2.0, abs=1e-5)
    assert relaxed_G(unit_disc).value == pytest.approx(8 / math.pi, abs=1e-5)


def test_rectangle_prefers_short_side():
    _, length = shortest_halving_chord(rectangle(3.0, 1.0))
    assert length == pytest.approx(1.0, abs=1e-9)


def test_ellipse_minor_axis():
    _, length = shortest_halving_chord(ellipse(2.0, 1.0))
    assert length == pytest.approx(2.0, rel=1e-5)


def test_direction_convention(square):
    ch = halving_chord_in_direction(square, 0.0)
    # vertical chord at x = 1/2, low-projection side (x < 1/2) on the left
    assert np.allclose([ch.a[0], ch.b[0]], 0.5)
    assert ch.a[1] < ch.b[1]


@given(valtr_bodies, angles)
@settings(max_examples=50, deadline=None)
def test_lengths_match_clipping_oracle(body, sigma):
    fast = float(halving_chord_lengths(body, [sigma])[0])
    assert fast == pytest.approx(brute_halving_length(body, sigma), abs=1e-9)


@given(valtr_bodies, angles)
@settings(max_examples=50, deadline=None)
def test_chords_really_halve(body, sigma):
    ch = halving_chord_in_direction(body, sigma)
    d = ch.b - ch.a
    kept, _ = clip_halfplane(body, ch.a, np.array([d[1], -d[0]]))
    assert kept.area == pytest.approx(body.area / 2, abs=1e-11 * body.area)


def test_params_locate_endpoints(triangle):
    sig = np.linspace(0, math.pi, 7)
    a, b, sa, sb = halving_chords(triangle, sig, with_params=True)
    for j in range(sig.size):
        assert triangle.locate(a[j]) == pytest.approx(sa[j] % 1.0, abs=1e-12)
        assert triangle.locate(b[j]) == pytest.approx(sb[j] % 1.0, abs=1e-12)


@given(valtr_bodies)
@settings(max_examples=30, deadline=None)
def test_shortest_not_longer_than_width_or_grid(body):
    _, length = shortest_halving_chord(body)
    assert length <= width(body) + 1e-9
    grid = halving_chord_lengths(body, np.linspace(0, math.pi, 997))
    assert length <= grid.min() + 1e-12


@given(valtr_bodies, st.floats(0.2, 5.0), angles)
@settings(max_examples=20, deadline=None)
def test_quotient_is_similarity_invariant(body, scale, phi):
    a = relaxed_G(body).value
    b = relaxed_G(body.transformed(scale, phi, (1.0, 2.0))).value
    assert b == pytest.approx(a, rel=1e-7)


@pytest.mark.parametrize("alpha", [0.3, 1.0, math.pi / 3, 2.0, 3.0])
def test_cap_isosceles_is_best(alpha):
    # scan over side ratios; the minimum sits at ratio 1 with value 4 tan(alpha/2)
    ratios = np.exp(np.linspace(-3, 3, 6001))
    vals = np.array([cap_quotient(alpha, q) for q in ratios])
    assert ratios[np.argmin(vals)] == pytest.approx(1.0, abs=2e-3)
    assert vals.min() == pytest.approx(4 * math.tan(alpha / 2), rel=1e-9)


def test_cap_wins_in_a_needle():
    thin = ConvexBody([(0.0, 0.0), (10.0, 0.0), (0.0, 0.2)])
    rep = relaxed_G(thin)
    assert rep.kind == "cap"
    assert rep.witness_area_fraction <= 0.5 + 1e-12
    alpha = min(thin.interior_angles)
    assert rep.value == pytest.approx(4 * math.tan(alpha / 2))


def test_residuals_vanish_for_square_optimum(square):
    chord, _ = shortest_halving_chord(square)
    res = chord_optimality_residuals(square, chord)
    assert res["isosceles"] < 1e-6 and res["orthogonality"] < 1e-6


def test_bound_holds_on_regular_polygons():
    for n in (3, 4, 5, 6, 9, 64):
        assert verify_chord_bound(regular_ngon(n))
    assert relaxed_G(regular_ngon(5)).value < AUERBACH_G
