"""Convex polygons and the exact area/perimeter/clipping primitives.

Smooth bodies are handled as dense polygons. Every quantity here is exact for
the polygon itself; circular segments are added analytically.

Boundary parametrisation: ``s`` in ``[0, 1)`` is normalised arc length measured
counterclockwise from vertex 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

EPS_GEOM_REL = 1e-9
EPS_CONVEX_REL = 1e-12
DISC_CHECK_SAMPLES = 720


class GeometryError(ValueError):
    """Invalid body, or a cut that does not fit the body."""


def as_point(p) -> np.ndarray:
    q = np.asarray(p, dtype=float).reshape(2)
    if not np.all(np.isfinite(q)):
        raise GeometryError(f"non-finite point {p!r}")
    return q


def cross(u, v):
    u = np.asarray(u)
    v = np.asarray(v)
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def rotate(v, angle):
    c, s = np.cos(angle), np.sin(angle)
    v = np.asarray(v, dtype=float)
    return np.stack([c * v[..., 0] - s * v[..., 1], s * v[..., 0] + c * v[..., 1]], axis=-1)


def line_angle(u, v) -> float:
    """Acute angle in [0, pi/2] between the lines spanned by u and v."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    c = abs(float(np.dot(u, v))) / (np.linalg.norm(u) * np.linalg.norm(v))
    return math.acos(min(1.0, c))


# ---------------------------------------------------------------------------
# circular segment helpers (vectorised, stable near zero opening)


def segment_area(chord, opening):
    """Signed area between a chord and a circular arc of the given opening.

    Equals r**2 (opening - sin opening) / 2 with r = chord / (2 sin(|opening|/2)).
    Odd in ``opening``.
    """
    c = np.asarray(chord, dtype=float)
    p = np.asarray(opening, dtype=float)
    small = np.abs(p) < 1e-3
    ps = np.where(small, 1.0, p)
    exact = (ps - np.sin(ps)) / (8.0 * np.sin(ps / 2.0) ** 2)
    # series to p**5; truncation error < 1e-22 for |p| < 1e-3
    series = p / 12.0 + p**3 / 360.0 + p**5 / 10080.0
    return c * c * np.where(small, series, exact)


def arc_length(chord, opening):
    c = np.asarray(chord, dtype=float)
    h = np.abs(np.asarray(opening, dtype=float)) / 2.0
    small = h < 1e-4
    hs = np.where(small, 1.0, h)
    ratio = np.where(small, 1.0 + (2 * h) ** 2 / 24.0, hs / np.sin(hs))
    return c * ratio


def _segment_slope(chord, opening):
    """Derivative of :func:`segment_area` with respect to the opening."""
    c = np.asarray(chord, dtype=float)
    p = np.asarray(opening, dtype=float)
    small = np.abs(p) < 1e-3
    ps = np.where(small, 1.0, p)
    sh = np.sin(ps / 2.0)
    exact = 0.25 - (ps - np.sin(ps)) * np.cos(ps / 2.0) / (8.0 * sh**3)
    series = 1.0 / 12.0 + p**2 / 120.0 + p**4 / 2016.0
    return c * c * np.where(small, series, exact)


def solve_opening(chord, target, iterations: int = 100, tol=None):
    """Opening angle(s) whose segment area equals ``target``.

    The segment area is odd, increasing and convex in the opening on
    [0, pi), and it dominates opening * chord**2 / 12 there. Newton's method
    started from that linear over-estimate therefore descends monotonically
    onto the root, which keeps the vectorised solve cheap. Returns NaN where
    ``target`` lies outside the range reachable on ``[-pi + 1e-6, pi - 1e-6]``.
    """
    c = np.atleast_1d(np.asarray(chord, dtype=float))
    tgt = np.atleast_1d(np.asarray(target, dtype=float))
    c, tgt = np.broadcast_arrays(c, tgt)
    lim = math.pi - 1e-6
    reach = segment_area(c, lim)
    ok = np.abs(tgt) <= reach
    if tol is None:
        tol = 1e-15 * np.maximum(c * c, 1e-300)
    t = np.abs(tgt)
    cc = np.where(c > 0, c * c, 1.0)
    p = np.minimum(12.0 * t / cc, lim)
    for _ in range(iterations):
        resid = segment_area(c, p) - t
        if np.all((resid <= tol) | ~ok):
            break
        slope = _segment_slope(c, p)
        p = np.clip(p - np.where(slope > 0, resid / np.where(slope > 0, slope, 1.0), 0.0), 0.0, lim)
    out = np.where(ok, np.copysign(p, tgt), np.nan)
    return out if np.ndim(chord) or np.ndim(target) else float(out[0])


# ---------------------------------------------------------------------------
# cuts


@dataclass(frozen=True, eq=False)
class Chord:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", as_point(self.a))
        object.__setattr__(self, "b", as_point(self.b))

    @property
    def length(self) -> float:
        return float(np.hypot(*(self.b - self.a)))

    @property
    def direction(self) -> np.ndarray:
        d = self.b - self.a
        return d / np.hypot(*d)

    def as_arc(self) -> "CircularArc":
        return CircularArc(self.a, self.b, 0.0)

    def to_dict(self) -> dict:
        return {"a": self.a.tolist(), "b": self.b.tolist(), "length": self.length}


@dataclass(frozen=True, eq=False)
class CircularArc:
    """Circular arc from ``a`` to ``b``.

    A positive opening bulges to the left of the directed chord a -> b, which
    shrinks the part of the body on the left. Zero opening is the straight
    segment.
    """

    a: np.ndarray
    b: np.ndarray
    opening: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "a", as_point(self.a))
        object.__setattr__(self, "b", as_point(self.b))
        object.__setattr__(self, "opening", float(self.opening))
        if not abs(self.opening) < math.pi:
            raise GeometryError(f"opening {self.opening} outside (-pi, pi)")
        if self.chord_length == 0.0:
            raise GeometryError("arc endpoints coincide")

    @property
    def chord_length(self) -> float:
        return float(np.hypot(*(self.b - self.a)))

    @property
    def is_straight(self) -> bool:
        return abs(self.opening) < 1e-12

    @property
    def radius(self) -> float:
        if self.is_straight:
            return math.inf
        return self.chord_length / (2.0 * math.sin(abs(self.opening) / 2.0))

    @property
    def length(self) -> float:
        return float(arc_length(self.chord_length, self.opening))

    @property
    def segment_area(self) -> float:
        return float(segment_area(self.chord_length, self.opening))

    @property
    def center(self) -> np.ndarray | None:
        if self.is_straight:
            return None
        d = self.b - self.a
        right = np.array([d[1], -d[0]]) / self.chord_length
        offset = self.chord_length / (2.0 * math.tan(self.opening / 2.0))
        return 0.5 * (self.a + self.b) + offset * right

    @property
    def tangent_a(self) -> np.ndarray:
        d = (self.b - self.a) / self.chord_length
        return rotate(d, self.opening / 2.0)

    @property
    def tangent_b(self) -> np.ndarray:
        d = (self.b - self.a) / self.chord_length
        return rotate(d, -self.opening / 2.0)

    @property
    def radial_angle_a(self) -> float:
        """Polar angle of ``a`` seen from the centre."""
        d = self.b - self.a
        base = math.atan2(d[1], d[0]) + self.opening / 2.0
        return base + (math.pi / 2.0 if self.opening > 0 else -math.pi / 2.0)

    def point_at(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if self.is_straight:
            return self.a + u[..., None] * (self.b - self.a)
        # measured from the chord midpoint so that nearly flat arcs, whose
        # centre is far away, keep full precision
        half = self.opening / 2.0
        psi = half * (1.0 - 2.0 * u)
        s = math.sin(half)
        along = -0.5 * np.sin(psi) / s
        up = np.sin(0.5 * (half + psi)) * np.sin(0.5 * (half - psi)) / s
        d = self.b - self.a
        left = np.array([-d[1], d[0]])
        return 0.5 * (self.a + self.b) + along[..., None] * d + up[..., None] * left

    def points(self, n: int = 64) -> np.ndarray:
        return self.point_at(np.linspace(0.0, 1.0, n))

    def reversed(self) -> "CircularArc":
        return CircularArc(self.b, self.a, -self.opening)

    def to_dict(self) -> dict:
        return {
            "a": self.a.tolist(),
            "b": self.b.tolist(),
            "opening": self.opening,
            "length": self.length,
        }


@dataclass(frozen=True)
class SplitResult:
    area_left: float
    area_right: float
    cut_length: float
    perim_left: float
    perim_right: float


# ---------------------------------------------------------------------------
# the body


class ConvexBody:
    """Closed convex polygon with counterclockwise vertices."""

    def __init__(self, vertices: Iterable[Sequence[float]], validate: bool = True):
        v = np.array(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise GeometryError("vertices must be an (n, 2) array")
        if v.shape[0] >= 2 and np.allclose(v[0], v[-1], rtol=0.0, atol=0.0):
            v = v[:-1]
        if v.shape[0] < 3:
            raise GeometryError("a body needs at least 3 vertices")
        if not np.all(np.isfinite(v)):
            raise GeometryError("non-finite vertex coordinates")
        v.setflags(write=False)
        self._v = v
        if validate:
            self._validate()

    def _validate(self):
        e = self.edges
        if self.area <= 0.0:
            raise GeometryError("degenerate or clockwise body (non-positive area)")
        short = np.nonzero(self.edge_lengths <= self.eps_geom)[0]
        if short.size:
            raise GeometryError(f"consecutive vertices {short[0]} and {(short[0] + 1) % self.n} coincide")
        turns = cross(e, np.roll(e, -1, axis=0))
        bad = np.nonzero(turns < -self.eps_convex)[0]
        if bad.size:
            raise GeometryError(f"body is not convex at vertex {(bad[0] + 1) % self.n}")
        # convex turning but winding more than once
        total = np.sum(np.arctan2(turns, np.einsum("ij,ij->i", e, np.roll(e, -1, axis=0))))
        if abs(total - 2 * math.pi) > 1e-6:
            raise GeometryError("boundary winds more than once")

    # -- basic data -------------------------------------------------------
    @property
    def vertices(self) -> np.ndarray:
        return self._v

    @property
    def n(self) -> int:
        return self._v.shape[0]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"ConvexBody(n={self.n}, area={self.area:.6g})"

    @cached_property
    def edges(self) -> np.ndarray:
        return np.roll(self._v, -1, axis=0) - self._v

    @cached_property
    def edge_lengths(self) -> np.ndarray:
        return np.hypot(self.edges[:, 0], self.edges[:, 1])

    @cached_property
    def cumulative_length(self) -> np.ndarray:
        """Arc length at each vertex, length n + 1 (last entry = perimeter)."""
        return np.concatenate([[0.0], np.cumsum(self.edge_lengths)])

    @cached_property
    def boundary_length(self) -> float:
        return float(self.cumulative_length[-1])

    @cached_property
    def centroid(self) -> np.ndarray:
        v = self._v - self._v[0]
        w = np.roll(v, -1, axis=0)
        c = cross(v, w)
        a = c.sum() / 2.0
        return self._v[0] + ((v + w) * c[:, None]).sum(axis=0) / (6.0 * a)

    @cached_property
    def _local(self) -> np.ndarray:
        # vertices relative to the centroid, for well-conditioned cross sums
        return self._v - self.centroid

    @cached_property
    def _edge_cross(self) -> np.ndarray:
        v = self._local
        return cross(v, np.roll(v, -1, axis=0))

    @cached_property
    def _cross_prefix2(self) -> np.ndarray:
        c = self._edge_cross
        return np.concatenate([[0.0], np.cumsum(np.concatenate([c, c]))])

    @cached_property
    def area(self) -> float:
        v = self._v - self._v[0]
        return float(cross(v, np.roll(v, -1, axis=0)).sum() / 2.0)

    @cached_property
    def eps_geom(self) -> float:
        return EPS_GEOM_REL * self.boundary_length

    @cached_property
    def eps_convex(self) -> float:
        return EPS_CONVEX_REL * self.boundary_length**2

    @cached_property
    def outward_normals(self) -> np.ndarray:
        e = self.edges
        return np.stack([e[:, 1], -e[:, 0]], axis=1) / self.edge_lengths[:, None]

    @cached_property
    def offsets(self) -> np.ndarray:
        """Support values: n_k . p <= offsets[k] inside."""
        return np.einsum("ij,ij->i", self.outward_normals, self._v)

    @cached_property
    def _normal_angles(self) -> np.ndarray:
        nrm = self.outward_normals
        ang = np.unwrap(np.arctan2(nrm[:, 1], nrm[:, 0]))
        return ang

    @cached_property
    def interior_angles(self) -> np.ndarray:
        """Interior angle at each vertex."""
        e = self.edges
        prev = np.roll(e, 1, axis=0)
        turn = np.arctan2(cross(prev, e), np.einsum("ij,ij->i", prev, e))
        return math.pi - turn

    # -- transforms -------------------------------------------------------
    def transformed(self, scale: float = 1.0, angle: float = 0.0, shift=(0.0, 0.0)) -> "ConvexBody":
        v = rotate(self._v * scale, angle) + np.asarray(shift, dtype=float)
        return ConvexBody(v)

    def normalized(self, area: float = 1.0) -> "ConvexBody":
        """Homothetic copy with the given area, centroid at the origin."""
        k = math.sqrt(area / self.area)
        return ConvexBody((self._v - self.centroid) * k)

    # -- support ----------------------------------------------------------
    def support_index(self, directions) -> np.ndarray:
        """Index of a vertex maximising u . v for each direction u."""
        d = np.atleast_2d(np.asarray(directions, dtype=float))
        ang = self._normal_angles
        t = np.arctan2(d[:, 1], d[:, 0])
        t = ang[0] + np.mod(t - ang[0], 2 * math.pi)
        j = np.searchsorted(ang, t, side="left")
        return np.mod(j, self.n)

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> str:
        return json.dumps({"vertices": self._v.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "ConvexBody":
        from .generators import body_from_spec

        return body_from_spec(json.loads(text))

    # -- boundary ---------------------------------------------------------
    def boundary_points(self, s):
        """Points and counterclockwise unit tangents at normalised arc length s."""
        s = np.mod(np.asarray(s, dtype=float), 1.0)
        arc = s * self.boundary_length
        idx = np.searchsorted(self.cumulative_length, arc, side="right") - 1
        idx = np.clip(idx, 0, self.n - 1)
        u = (arc - self.cumulative_length[idx]) / self.edge_lengths[idx]
        pts = self._v[idx] + u[..., None] * self.edges[idx]
        tang = self.edges[idx] / self.edge_lengths[idx][..., None]
        return pts, tang, idx, u

    def locate(self, p) -> float:
        """Normalised arc length of a boundary point; error if off boundary."""
        s, dist = self._project(as_point(p))
        if dist > max(self.eps_geom, 1e-12):
            raise GeometryError(f"point {tuple(np.round(p, 12))} is {dist:.3g} away from the boundary")
        return s

    def _project(self, p: np.ndarray) -> tuple[float, float]:
        rel = p - self._v
        u = np.einsum("ij,ij->i", rel, self.edges) / self.edge_lengths**2
        u = np.clip(u, 0.0, 1.0)
        foot = self._v + u[:, None] * self.edges
        d = np.hypot(*(foot - p).T)
        k = int(np.argmin(d))
        arc = self.cumulative_length[k] + u[k] * self.edge_lengths[k]
        s = float(arc / self.boundary_length) % 1.0
        return s, float(d[k])

    def contains(self, p, tol: float | None = None) -> bool:
        tol = self.eps_geom if tol is None else tol
        q = as_point(p)
        return bool(np.all(self.outward_normals @ q - self.offsets <= tol))

    def perimeter_between(self, s1: float, s2: float) -> float:
        """Boundary length travelled counterclockwise from s1 to s2."""
        return ((s2 - s1) % 1.0) * self.boundary_length


# ---------------------------------------------------------------------------
# operations


def area(body: ConvexBody) -> float:
    a = body.area
    if not a > 0:
        raise GeometryError("degenerate body")
    return a


def width(body: ConvexBody) -> float:
    """Minimal distance between parallel supporting lines (rotating calipers)."""
    nrm = body.outward_normals
    j = body.support_index(-nrm)
    v = body.vertices
    n = body.n
    best = np.full(n, np.inf)
    # neighbours guard against ties at parallel edges
    for shift in (-1, 0, 1):
        jj = np.mod(j + shift, n)
        best = np.minimum(best, np.einsum("ij,ij->i", nrm, v[jj]))
    return float(np.min(body.offsets - best))


def diameter(body: ConvexBody) -> float:
    nrm = body.outward_normals
    j = body.support_index(-nrm)
    v = body.vertices
    n = body.n
    best = 0.0
    for shift in (-1, 0, 1):
        jj = np.mod(j + shift, n)
        for k_shift in (0, 1):
            kk = np.mod(np.arange(n) + k_shift, n)
            best = max(best, float(np.max(np.hypot(*(v[jj] - v[kk]).T))))
    return best


def boundary_point(body: ConvexBody, s: float) -> tuple[np.ndarray, np.ndarray]:
    """Point and counterclockwise tangent at normalised arc length ``s``.

    At a vertex the tangent is that of the following edge.
    """
    pts, tang, _, _ = body.boundary_points(np.array([s]))
    return pts[0], tang[0]


def clip_halfplane(body: ConvexBody, line_point, line_normal):
    """Part of ``body`` with ``normal . (p - line_point) <= 0`` and the cut chord.

    The kept part lies to the left of the returned chord ``a -> b``. Returns
    ``(None, None)`` when nothing is kept and ``(body, None)`` when the line
    misses the body on the discarded side.
    """
    q = as_point(line_point)
    nrm = as_point(line_normal)
    nrm = nrm / np.hypot(*nrm)
    v = body.vertices
    d = (v - q) @ nrm
    tol = body.eps_geom
    if np.all(d >= -tol):
        return None, None
    if np.all(d <= tol):
        return body, None
    out = []
    exit_pt = entry_pt = None
    n = body.n
    for i in range(n):
        j = (i + 1) % n
        di, dj = d[i], d[j]
        if di <= 0:
            out.append(v[i])
        if (di <= 0 < dj) or (dj <= 0 < di):
            u = di / (di - dj)
            x = v[i] + u * (v[j] - v[i])
            if di <= 0:
                exit_pt = x
            else:
                entry_pt = x
            if not (dj <= 0 and u == 1.0):
                out.append(x)
    pts = _dedupe(np.array(out), tol)
    chord = Chord(exit_pt, entry_pt) if exit_pt is not None and entry_pt is not None else None
    if pts.shape[0] < 3:
        return None, chord
    kept = ConvexBody(pts, validate=False)
    if kept.area <= 0:
        return None, chord
    return kept, chord


def _dedupe(pts: np.ndarray, tol: float) -> np.ndarray:
    if pts.shape[0] == 0:
        return pts
    keep = [0]
    for i in range(1, pts.shape[0]):
        if np.hypot(*(pts[i] - pts[keep[-1]])) > tol:
            keep.append(i)
    if len(keep) > 1 and np.hypot(*(pts[keep[-1]] - pts[keep[0]])) <= tol:
        keep.pop()
    return pts[keep]


def chord_left_area(body: ConvexBody, s1, s2):
    """Area left of the directed chord from boundary(s1) to boundary(s2).

    Vectorised over ``s1``/``s2``; uses prefix sums of edge cross products so
    each query is O(1) after locating the edges. Pairs on the same edge give
    NaN.
    """
    s1, s2 = np.broadcast_arrays(np.asarray(s1, dtype=float), np.asarray(s2, dtype=float))
    pa, _, i, _ = body.boundary_points(s1)
    pb, _, j, _ = body.boundary_points(s2)
    c0 = body.centroid
    a = pa - c0
    b = pb - c0
    v = body._local
    n = body.n
    C = body._cross_prefix2
    start = j + 1
    count = np.mod(i - start, n)
    full = C[start + count] - C[start]
    vj1 = v[np.mod(j + 1, n)]
    vi = v[i]
    twice = cross(a, b) + cross(b, vj1) + full + cross(vi, a)
    res = 0.5 * twice
    return np.where(i == j, np.nan, res)


def perimeter_shares(body: ConvexBody, s1: float, s2: float) -> tuple[float, float]:
    """Boundary lengths left and right of the cut from s1 to s2."""
    left = body.perimeter_between(s2, s1)
    return left, body.boundary_length - left


def arc_inside(body: ConvexBody, arc: CircularArc, tol: float | None = None) -> bool:
    return bool(arcs_inside(body, arc.a[None], arc.b[None], np.array([arc.opening]), tol)[0])


def arcs_inside(body: ConvexBody, a, b, opening, tol: float | None = None) -> np.ndarray:
    """Whether each arc stays inside the body, checked edge by edge.

    For each edge line the farthest arc point along its outward normal is
    either an endpoint (on the boundary already) or the arc point whose radial
    direction equals that normal, if it lies within the angular span.
    """
    tol = body.eps_geom if tol is None else tol
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    phi = np.atleast_1d(np.asarray(opening, dtype=float))
    m = phi.shape[0]
    ok = np.ones(m, dtype=bool)
    curved = np.abs(phi) >= 1e-12
    if not np.any(curved):
        return ok
    idx = np.nonzero(curved)[0]
    d = b[idx] - a[idx]
    c = np.hypot(d[:, 0], d[:, 1])
    p = phi[idx]
    r = c / (2.0 * np.sin(np.abs(p) / 2.0))
    ang_a = np.arctan2(d[:, 1], d[:, 0]) + p / 2.0 + np.where(p > 0, math.pi / 2.0, -math.pi / 2.0)
    nrm = body.outward_normals
    nang = np.arctan2(nrm[:, 1], nrm[:, 0])
    # chunk to bound memory
    step = max(1, 2_000_000 // body.n)
    for lo in range(0, idx.size, step):
        sl = slice(lo, lo + step)
        pa = p[sl][:, None]
        diff = nang[None, :] - ang_a[sl][:, None]
        span = np.where(pa > 0, np.mod(-diff, 2 * math.pi), np.mod(diff, 2 * math.pi))
        inspan = span <= np.abs(pa)
        # span is also the angle between the normal and the radial direction at a
        na = a[idx[sl]] @ nrm.T
        reach = na + 2.0 * r[sl][:, None] * np.sin(span / 2.0) ** 2
        viol = inspan & (reach - body.offsets[None, :] > tol)
        ok[idx[sl]] = ~np.any(viol, axis=1)
    return ok


def split_by_arc(body: ConvexBody, arc: CircularArc) -> SplitResult:
    """Areas and boundary shares of the two parts cut off by ``arc``.

    The left part is bounded by the arc and the boundary running
    counterclockwise from ``arc.b`` back to ``arc.a``.
    """
    s1 = body.locate(arc.a)
    s2 = body.locate(arc.b)
    if not arc_inside(body, arc):
        raise GeometryError("arc leaves the body")
    left0 = chord_left_area(body, s1, s2)
    if np.isnan(left0):
        raise GeometryError("arc endpoints lie on the same edge")
    left = float(left0) - arc.segment_area
    right = body.area - left
    pl, pr = perimeter_shares(body, s1, s2)
    return SplitResult(left, right, arc.length, pl, pr)


SMOOTH_TURN = 0.02


def smooth_tangent(body: ConvexBody, s: float) -> np.ndarray:
    """Tangent of the smooth curve a dense polygon samples.

    Where the turning angle at the nearby vertex is below ``SMOOTH_TURN`` the
    tangent direction is interpolated linearly from the edge direction at the
    edge midpoint to the vertex bisector. Genuine corners keep the edge
    tangent, except exactly at the corner where the bisector is used.
    """
    _, tang, k, u = body.boundary_points(np.array([s]))
    k, u, tang = int(k[0]), float(u[0]), tang[0]
    turn = math.pi - body.interior_angles
    n = body.n
    if u * body.edge_lengths[k] <= body.eps_geom:
        return rotate(tang, -turn[k] / 2.0)
    if u < 0.5:
        t = turn[k]
        return rotate(tang, -(0.5 - u) * t) if t < SMOOTH_TURN else tang
    t = turn[(k + 1) % n]
    return rotate(tang, (u - 0.5) * t) if t < SMOOTH_TURN else tang


def internal_disc_radius_check(body: ConvexBody, p, r: float, samples: int = DISC_CHECK_SAMPLES) -> bool:
    """Does the disc of radius r, tangent to the boundary at p from inside, fit?

    The disc boundary is sampled at ``samples`` angles (the sample at p itself
    is skipped, it lies on the boundary by construction). The tangent comes
    from :func:`smooth_tangent`.
    """
    s = body.locate(p)
    tang = smooth_tangent(body, s)
    q, _ = boundary_point(body, s)
    inward = np.array([-tang[1], tang[0]])
    centre = q + r * inward
    ang = 2 * math.pi * np.arange(1, samples) / samples
    # angle measured from the direction centre -> p
    base = math.atan2(-inward[1], -inward[0])
    pts = centre + r * np.stack([np.cos(base + ang), np.sin(base + ang)], axis=1)
    viol = pts @ body.outward_normals.T - body.offsets[None, :]
    return bool(np.max(viol) <= body.eps_geom)
