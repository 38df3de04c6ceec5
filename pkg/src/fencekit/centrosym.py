"""Chords through the centre of centrally symmetric sets.

Every chord through the centre of a centrosymmetric set halves its area, and
the shortest one is never longer than the diameter of the disc of equal
area, 2 sqrt(|K|/pi). Sets here are polygons that are star-shaped about the
centre, convex or not.
"""

from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from .geometry import Chord, ConvexBody, GeometryError, cross
from .search import golden_section_many

DEFAULT_DIRECTIONS = 2048
BOUND_SLACK = 1e-6


class CentroSymBody:
    """Polygon symmetric about ``center`` and star-shaped with respect to it.

    Vertices are sorted by polar angle about the centre; the constructor
    rejects inputs whose reflection is not the same polygon.
    """

    def __init__(self, vertices, center=(0.0, 0.0), tol: float | None = None):
        v = np.asarray(vertices, dtype=float)
        c = np.asarray(center, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 4:
            raise GeometryError("a centrally symmetric polygon has at least four vertices")
        rel = v - c
        ang = np.arctan2(rel[:, 1], rel[:, 0])
        order = np.argsort(ang, kind="stable")
        rel, ang = rel[order], ang[order]
        rad = np.hypot(rel[:, 0], rel[:, 1])
        if np.min(rad) <= 0:
            raise GeometryError("the centre must be interior")
        if np.any(np.diff(ang) <= 0):
            raise GeometryError("polygon is not star-shaped about its centre")
        self.center = c
        self._rel = rel
        self._ang = ang
        scale = float(np.max(rad))
        tol = 1e-9 * scale if tol is None else tol
        # the reflection of every vertex must lie on the boundary
        refl = -rel
        rho = self._rho(np.arctan2(refl[:, 1], refl[:, 0]))
        if np.max(np.abs(rho - np.hypot(refl[:, 0], refl[:, 1]))) > tol:
            raise GeometryError("polygon is not symmetric about its centre")

    @classmethod
    def from_body(cls, body: ConvexBody, center=None) -> "CentroSymBody":
        c = body.centroid if center is None else center
        return cls(body.vertices, c)

    @classmethod
    def from_radial(cls, radii, center=(0.0, 0.0)) -> "CentroSymBody":
        """Star polygon with radius r_j at angle 2 pi j / n; needs r(t + pi) = r(t)."""
        r = np.asarray(radii, dtype=float)
        n = r.size
        if n % 2:
            raise GeometryError("radial profile needs an even number of samples")
        t = 2 * math.pi * np.arange(n) / n
        pts = np.asarray(center, dtype=float) + r[:, None] * np.stack([np.cos(t), np.sin(t)], axis=1)
        return cls(pts, center)

    @cached_property
    def vertices(self) -> np.ndarray:
        return self._rel + self.center

    @cached_property
    def area(self) -> float:
        return 0.5 * float(np.sum(cross(self._rel, np.roll(self._rel, -1, axis=0))))

    @property
    def body(self) -> ConvexBody | None:
        """The polygon as a ConvexBody, or None when it is not convex."""
        try:
            return ConvexBody(self.vertices)
        except GeometryError:
            return None

    def _rho(self, phi) -> np.ndarray:
        """Distance from the centre to the boundary along direction phi."""
        phi = np.asarray(phi, dtype=float)
        n = self._ang.size
        j = np.searchsorted(self._ang, np.mod(phi + math.pi, 2 * math.pi) - math.pi, side="right") - 1
        j = np.mod(j, n)
        p = self._rel[j]
        q = self._rel[(j + 1) % n]
        u = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        return cross(p, q) / cross(u, q - p)

    def center_chord_lengths(self, phi) -> np.ndarray:
        return self._rho(phi) + self._rho(np.asarray(phi) + math.pi)


def shortest_center_chord(s: CentroSymBody, n_grid: int = DEFAULT_DIRECTIONS, tol: float = 1e-10):
    """(chord, length) of the shortest chord through the centre."""
    phi = math.pi * np.arange(n_grid) / n_grid
    lengths = s.center_chord_lengths(phi)
    mins = np.nonzero((lengths <= np.roll(lengths, 1)) & (lengths <= np.roll(lengths, -1)))[0]
    starts = sorted(mins, key=lambda i: (lengths[i], i))[:4]
    step = math.pi / n_grid
    c0 = phi[np.array(starts, dtype=int)]
    xs, vals = golden_section_many(s.center_chord_lengths, c0 - step, c0 + step, tol)
    k = int(np.argmin(vals))
    best, val = float(xs[k]), float(vals[k])
    # the length has kinks at vertex directions, where a minimum may sit
    corners = np.mod(s._ang, math.pi)
    at_corners = s.center_chord_lengths(corners)
    j = int(np.argmin(at_corners))
    if at_corners[j] < val:
        best, val = float(corners[j]), float(at_corners[j])
    u = np.array([math.cos(best), math.sin(best)])
    a = s.center - float(s._rho(best + math.pi)) * u
    b = s.center + float(s._rho(best)) * u
    return Chord(a, b), val


def centrosym_bound(s: CentroSymBody) -> float:
    return 2.0 * math.sqrt(s.area / math.pi)


def verify_centrosym_bound(s: CentroSymBody) -> bool:
    _, length = shortest_center_chord(s)
    return length <= centrosym_bound(s) + BOUND_SLACK


def random_radial_profile(rng: np.random.Generator, n: int = 64, roughness: float = 0.4) -> CentroSymBody:
    """Star polygon with log-normal radii on [0, pi), repeated on [pi, 2 pi)."""
    half = np.exp(roughness * rng.normal(size=n // 2))
    return CentroSymBody.from_radial(np.concatenate([half, half]))
