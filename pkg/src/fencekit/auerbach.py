"""The Auerbach triangle: a convex Zindler set with halving chords of length 1.

One curved part is x(t) = tanh(2t) - t, y(t) = sech(2t) for
|t| <= ln(3)/4, which happens to be parametrised by arc length. Its end
tangents meet the x-axis in an equilateral triangle T; rotating the curve by
multiples of 2 pi/3 about the centre of T gives the other two curved parts,
and the sides of T supply the three flat parts between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arcs import relaxed_C
from .chords import QuotientReport, halving_chords, relaxed_G
from .geometry import ConvexBody, GeometryError, rotate

LN3 = math.log(3.0)
T_END = LN3 / 4.0
AREA = math.sqrt(3.0) / 8.0 * (8 * LN3 - LN3**2 - 4)
G_VALUE = 2.0 / AREA  # halving chords have length 1
C_VALUE = 8 * math.pi / (3 * (8 * LN3 - LN3**2 - 4))


def area_analytic() -> float:
    return AREA


def curve(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return np.stack([np.tanh(2 * t) - t, 1.0 / np.cosh(2 * t)], axis=-1)


def curve_tangent(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    s = 1.0 / np.cosh(2 * t)
    return np.stack([2 * s * s - 1.0, -2 * s * np.tanh(2 * t)], axis=-1)


def _meet(p, d, q, e) -> np.ndarray:
    """Intersection of the lines p + s d and q + u e."""
    den = d[0] * e[1] - d[1] * e[0]
    w = q - p
    s = (w[0] * e[1] - w[1] * e[0]) / den
    return p + s * d


@dataclass(frozen=True, eq=False)
class AuerbachTriangle:
    body: ConvexBody
    halving_length: float
    area_analytic: float
    triangle: np.ndarray  # T, counterclockwise from its apex
    barycenter: np.ndarray
    flats: tuple  # (start, end) of each flat part, counterclockwise
    junction_mismatch: float

    def on_flat(self, p, tol: float = 1e-9) -> bool:
        p = np.asarray(p, dtype=float)
        for a, b in self.flats:
            d = b - a
            u = float(np.dot(p - a, d) / np.dot(d, d))
            off = abs(d[0] * (p - a)[1] - d[1] * (p - a)[0]) / math.hypot(*d)
            if -tol <= u <= 1 + tol and off <= tol:
                return True
        return False


def build_auerbach(samples_per_arc: int = 4096) -> AuerbachTriangle:
    if samples_per_arc < 16:
        raise GeometryError("need at least 16 samples per arc")
    t = np.linspace(T_END, -T_END, samples_per_arc + 1)  # right to left
    arc = curve(t)
    p_r, p_l = arc[0], arc[-1]
    d_r = curve_tangent(T_END)
    d_l = curve_tangent(-T_END)
    axis = np.array([1.0, 0.0])
    apex = _meet(p_r, d_r, p_l, d_l)
    left = _meet(p_l, d_l, np.zeros(2), axis)
    right = _meet(p_r, d_r, np.zeros(2), axis)
    tri = np.array([apex, left, right])
    centre = tri.mean(axis=0)
    spacing = float(np.hypot(*(arc[1] - arc[0])))

    def turn(pts, k):
        return centre + rotate(pts - centre, 2 * math.pi * k / 3)

    pieces = []
    flats = []
    for k in range(3):
        a = turn(arc, k)
        nxt = turn(arc, k + 1)
        start, end = a[-1], nxt[0]
        m = max(1, int(round(np.hypot(*(end - start)) / spacing)))
        u = np.arange(1, m)[:, None] / m
        pieces.append(a)
        pieces.append(start + u * (end - start))
        flats.append((start, end))
    pts = np.concatenate(pieces)
    body = ConvexBody(pts)
    # C1 check: the curve's end tangents against the flat directions
    mism = 0.0
    for k in range(3):
        a, b = flats[k]
        fd = (b - a) / np.hypot(*(b - a))
        t_end = rotate(-d_l, 2 * math.pi * k / 3)
        t_start = rotate(-d_r, 2 * math.pi * (k + 1) / 3)
        for tv in (t_end, t_start):
            mism = max(mism, abs(math.atan2(fd[0] * tv[1] - fd[1] * tv[0], fd @ tv)))
    return AuerbachTriangle(body, 1.0, AREA, tri, centre, tuple(flats), mism)


def verify_zindler(tri: AuerbachTriangle, n_chords: int = 4096) -> tuple[float, float]:
    """Largest deviation of the halving chord length from 1 and of the
    perimeter share from 1/2, over ``n_chords`` directions."""
    sig = math.pi * np.arange(n_chords) / n_chords
    a, b, sa, sb = halving_chords(tri.body, sig, with_params=True)
    length = np.hypot(*(b - a).T)
    share = np.mod(sa - sb, 1.0)  # boundary from b counterclockwise to a
    return float(np.max(np.abs(length - tri.halving_length))), float(np.max(np.abs(share - 0.5)))


def auerbach_reports(tri: AuerbachTriangle) -> tuple[QuotientReport, QuotientReport]:
    g = relaxed_G(tri.body)
    c = relaxed_C(tri.body)
    w = c.witness
    if abs(w.opening) < 1e-6:
        raise GeometryError("optimal arc of the Auerbach triangle came out straight")
    tol = 1e-7 * tri.body.boundary_length
    if not (tri.on_flat(w.a, tol) and tri.on_flat(w.b, tol)):
        raise GeometryError("optimal arc does not join two flat parts")
    return g, c


def auerbach_constants(tri: AuerbachTriangle) -> tuple[float, float]:
    g, c = auerbach_reports(tri)
    return g.value, c.value
