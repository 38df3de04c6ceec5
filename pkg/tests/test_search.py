import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fencekit.search import golden_section, golden_section_many


def test_parabola():
    x, fx = golden_section(lambda t: (t - 0.3) ** 2 + 1.0, -2.0, 5.0, 1e-12)
    assert x == pytest.approx(0.3, abs=1e-6)
    assert fx == pytest.approx(1.0, abs=1e-12)


def test_minimum_on_the_bracket_edge():
    x, _ = golden_section(lambda t: t, 1.0, 2.0)
    assert x == 1.0
    x, _ = golden_section(lambda t: -t, 2.0, 1.0)
    assert x == 2.0


def test_kink():
    x, _ = golden_section(abs, -1.0, 3.0, 1e-12)
    assert abs(x) < 1e-11


@given(st.floats(-10, 10), st.floats(0.1, 5.0))
def test_many_agrees_with_scalar(centre, half):
    f = lambda t: np.cos(t) + 0.1 * (t - centre) ** 2
    a = np.array([centre - half, centre - 0.5 * half])
    b = np.array([centre + half, centre + 0.25 * half])
    xs, fs = golden_section_many(f, a, b, 1e-10)
    for i in range(2):
        x, fx = golden_section(f, a[i], b[i], 1e-10)
        assert fs[i] == pytest.approx(fx, abs=1e-12)
        assert a[i] <= xs[i] <= b[i]


def test_many_handles_reversed_brackets():
    xs, _ = golden_section_many(lambda t: (t - 1.5) ** 2, np.array([3.0]), np.array([0.0]))
    assert xs[0] == pytest.approx(1.5, abs=1e-6)


def test_many_empty():
    xs, fs = golden_section_many(np.sin, np.array([]), np.array([]))
    assert xs.size == 0 and fs.size == 0


def test_sine_minimum():
    x, fx = golden_section(math.sin, 3.0, 6.0, 1e-12)
    assert x == pytest.approx(1.5 * math.pi, abs=1e-6)
    assert fx == pytest.approx(-1.0, abs=1e-12)
