"""Test bodies: regular polygons, ellipses, and Valtr random convex polygons."""

from __future__ import annotations

import math

import numpy as np

from .geometry import ConvexBody, GeometryError

DEFAULT_RESOLUTION = 4096


def regular_ngon(n: int = DEFAULT_RESOLUTION, radius: float = 1.0, phase: float = 0.0) -> ConvexBody:
    k = np.arange(n)
    ang = phase + 2 * math.pi * k / n
    return ConvexBody(radius * np.stack([np.cos(ang), np.sin(ang)], axis=1))


def disc(area: float = math.pi, n: int = DEFAULT_RESOLUTION) -> ConvexBody:
    """Regular n-gon inscribed in the circle of the given area."""
    return regular_ngon(n, math.sqrt(area / math.pi))


def ellipse(a: float, b: float, n: int = DEFAULT_RESOLUTION) -> ConvexBody:
    t = 2 * math.pi * np.arange(n) / n
    return ConvexBody(np.stack([a * np.cos(t), b * np.sin(t)], axis=1))


def rectangle(w: float, h: float) -> ConvexBody:
    return ConvexBody([(0, 0), (w, 0), (w, h), (0, h)])


def unit_square() -> ConvexBody:
    return rectangle(1.0, 1.0)


def equilateral_triangle(side: float = 1.0) -> ConvexBody:
    return ConvexBody([(0.0, 0.0), (side, 0.0), (side / 2, side * math.sqrt(3) / 2)])


def valtr_polygon(n: int, rng: np.random.Generator) -> ConvexBody:
    """Random convex polygon, uniform over the unit square (Valtr 1995).

    Normalised to unit area with its centroid at the origin.
    """
    if n < 3:
        raise GeometryError("Valtr polygons need n >= 3")
    while True:
        x = np.sort(rng.random(n))
        y = np.sort(rng.random(n))
        xv = _chain_vectors(x, rng)
        yv = _chain_vectors(y, rng)
        rng.shuffle(yv)
        vec = np.stack([xv, yv], axis=1)
        order = np.argsort(np.arctan2(vec[:, 1], vec[:, 0]), kind="stable")
        pts = np.cumsum(vec[order], axis=0)
        pts = _drop_collinear(pts)
        if pts.shape[0] < 3:
            continue
        try:
            return ConvexBody(pts).normalized(1.0)
        except GeometryError:
            continue


def _chain_vectors(c: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    lo, hi = c[0], c[-1]
    last_a = last_b = lo
    out = []
    for v in c[1:-1]:
        if rng.random() < 0.5:
            out.append(v - last_a)
            last_a = v
        else:
            out.append(last_b - v)
            last_b = v
    out.append(hi - last_a)
    out.append(last_b - hi)
    return np.array(out)


def _drop_collinear(pts: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    keep = []
    n = pts.shape[0]
    for i in range(n):
        p, q, r = pts[i - 1], pts[i], pts[(i + 1) % n]
        turn = (q[0] - p[0]) * (r[1] - q[1]) - (q[1] - p[1]) * (r[0] - q[0])
        if turn > tol:
            keep.append(q)
    return np.array(keep)


def random_centrosymmetric_polygon(rng: np.random.Generator, n_points: int = 8) -> ConvexBody:
    """Convex hull of random points and their reflections through the origin."""
    from scipy.spatial import ConvexHull

    while True:
        pts = rng.normal(size=(n_points, 2))
        pts = np.concatenate([pts, -pts])
        hull = ConvexHull(pts)
        verts = pts[hull.vertices]  # counterclockwise for 2-D input
        try:
            return ConvexBody(verts)
        except GeometryError:
            continue


def body_from_spec(spec: dict) -> ConvexBody:
    """Body from the JSON forms ``{"vertices": ...}`` or a generator request."""
    if "vertices" in spec:
        return ConvexBody(spec["vertices"])
    kind = spec.get("kind")
    if kind == "regular-ngon":
        return regular_ngon(int(spec.get("n", DEFAULT_RESOLUTION)), float(spec.get("radius", 1.0)))
    if kind == "random-valtr":
        rng = np.random.default_rng(int(spec.get("seed", 0)))
        return valtr_polygon(int(spec.get("n", 12)), rng)
    raise GeometryError(f"unknown body spec {spec!r}")
