"""Shortest area-bisecting circular arcs and the relaxed quotient C(K).

C(K) is the infimum of Per(E; K)^2 / |E| over E inside K with |E| <= |K|/2.
Its minimisers are bounded by a single circular arc (or segment) meeting the
boundary, or they are circular sectors sitting in a corner.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize

from .chords import QuotientReport
from .geometry import (
    CircularArc,
    ConvexBody,
    arc_length,
    arcs_inside,
    chord_left_area,
    line_angle,
    smooth_tangent,
    solve_opening,
)

log = logging.getLogger(__name__)

DISC_C = 8.0 / math.pi
ARC_BOUND_TOL = 5e-3
OPENING_LIMIT = math.sqrt(3.0)
DEFAULT_GRID = 256
MIN_SEPARATION = 1e-3
_LIM = math.pi - 1e-6


@dataclass(frozen=True)
class ArcFamilyPoint:
    s1: float
    s2: float
    arc: CircularArc
    length: float

    def to_dict(self) -> dict:
        return {"s1": self.s1, "s2": self.s2, "length": self.length, "arc": self.arc.to_dict()}


def _seg(c: float, p: float) -> float:
    if abs(p) < 1e-3:
        return c * c * (p / 12.0 + p**3 / 360.0 + p**5 / 10080.0)
    return c * c * (p - math.sin(p)) / (8.0 * math.sin(p / 2.0) ** 2)


def _opening(c: float, target: float, xtol: float) -> float | None:
    """Scalar opening with segment area ``target``; brentq on a monotone map."""
    if abs(target) > _seg(c, _LIM):
        return None
    if target == 0.0:
        return 0.0
    return brentq(lambda p: _seg(c, p) - target, -_LIM, _LIM, xtol=xtol, rtol=1e-15)


def _arc_for(body: ConvexBody, s1: float, s2: float, exact: bool = True):
    """Bisecting arc between two boundary parameters, or None."""
    s1 %= 1.0
    s2 %= 1.0
    sep = abs(s1 - s2)
    if min(sep, 1.0 - sep) < MIN_SEPARATION:
        return None
    pts, _, idx, _ = body.boundary_points(np.array([s1, s2]))
    if idx[0] == idx[1]:
        return None
    left = float(chord_left_area(body, s1, s2))
    c = float(np.hypot(*(pts[1] - pts[0])))
    target = left - 0.5 * body.area
    if exact:
        p = solve_opening(c, target, tol=1e-12 * body.area)
        if np.isnan(p):
            return None
    else:
        p = _opening(c, target, 1e-14)
        if p is None:
            return None
    if not arcs_inside(body, pts[0][None], pts[1][None], np.array([p]))[0]:
        return None
    return CircularArc(pts[0], pts[1], p)


def bisecting_arc_between(body: ConvexBody, s1: float, s2: float) -> CircularArc | None:
    """The circular arc from boundary(s1) to boundary(s2) splitting the area
    in half, or None when it would have to leave the body.

    The area on each side is strictly monotone in the opening angle, so there
    is at most one candidate opening.
    """
    return _arc_for(body, s1, s2, exact=True)


def _grid_candidates(body: ConvexBody, n: int):
    s = np.arange(n) / n
    i, j = np.triu_indices(n, k=1)
    s1, s2 = s[i], s[j]
    sep = s2 - s1
    keep = np.minimum(sep, 1.0 - sep) >= MIN_SEPARATION
    s1, s2 = s1[keep], s2[keep]
    left = chord_left_area(body, s1, s2)
    ok = ~np.isnan(left)
    s1, s2, left = s1[ok], s2[ok], left[ok]
    pa, _, _, _ = body.boundary_points(s1)
    pb, _, _, _ = body.boundary_points(s2)
    c = np.hypot(*(pb - pa).T)
    phi = solve_opening(c, left - 0.5 * body.area, tol=1e-12 * body.area)
    ok = ~np.isnan(phi)
    s1, s2, pa, pb, c, phi = s1[ok], s2[ok], pa[ok], pb[ok], c[ok], phi[ok]
    length = arc_length(c, phi)
    order = np.lexsort((s2, s1, length))
    return s1[order], s2[order], pa[order], pb[order], phi[order], length[order]


def _feasible_prefix(body, pa, pb, phi, want: int, batch: int = 512):
    """Indices of the first ``want`` candidates (in order) that stay inside."""
    found: list[int] = []
    for lo in range(0, phi.size, batch):
        sl = slice(lo, lo + batch)
        ok = arcs_inside(body, pa[sl], pb[sl], phi[sl])
        found.extend((np.nonzero(ok)[0] + lo).tolist())
        if len(found) >= want:
            break
    return found[:want]


def shortest_halving_arc(body: ConvexBody, grid: int = DEFAULT_GRID, starts: int = 3) -> ArcFamilyPoint:
    """Shortest area-bisecting arc.

    Every unordered pair of ``grid`` equally spaced boundary parameters is
    tried, then the best few feasible pairs are polished by Nelder-Mead on
    (s1, s2). Ties go to the lexicographically smallest (s1, s2).
    """
    s1, s2, pa, pb, phi, length = _grid_candidates(body, grid)
    picks = _feasible_prefix(body, pa, pb, phi, max(starts * 8, 16))
    if not picks:
        raise RuntimeError("no bisecting arc found on the grid")
    # spread the starts over distinct basins: skip grid neighbours of a pick
    chosen: list[int] = []
    for k in picks:
        if all(min(abs(s1[k] - s1[q]) + abs(s2[k] - s2[q]), 2.0) > 2.5 / grid for q in chosen):
            chosen.append(k)
        if len(chosen) == starts:
            break

    def objective(x):
        arc = _arc_for(body, x[0], x[1], exact=False)
        return math.inf if arc is None else arc.length

    h = 1.0 / grid
    best = None
    for k in chosen:
        x0 = np.array([s1[k], s2[k]])
        simplex = np.array([x0, x0 + [h / 2, 0.0], x0 + [0.0, h / 2]])
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"initial_simplex": simplex, "xatol": 1e-10, "fatol": 1e-13, "maxiter": 2000},
        )
        x, val = res.x, float(res.fun)
        if not math.isfinite(val) or val > length[k]:
            x, val = x0, float(length[k])
        a, b = sorted((float(x[0]) % 1.0, float(x[1]) % 1.0))
        key = (round(val, 11), a, b)
        if best is None or key < best[0]:
            best = (key, a, b, val)
    _, a, b, _ = best
    arc = bisecting_arc_between(body, a, b)
    if arc is None:  # bisection and brentq disagree at the feasibility edge
        arc = _arc_for(body, a, b, exact=False)
    return ArcFamilyPoint(a, b, arc, arc.length)


# ---------------------------------------------------------------------------
# sectors


def sector_arc(body: ConvexBody, k: int) -> CircularArc | None:
    """Largest admissible sector arc centred at vertex k.

    The radius is capped by the adjacent edges and by the area limit |K|/2,
    then halved until the arc lies inside.
    """
    alpha = float(body.interior_angles[k])
    if alpha >= math.pi - 1e-9:
        return None
    v = body.vertices[k]
    e_out = body.edges[k] / body.edge_lengths[k]
    e_in = body.edges[k - 1] / body.edge_lengths[k - 1]
    r = min(body.edge_lengths[k], body.edge_lengths[k - 1], math.sqrt(body.area / alpha))
    for _ in range(60):
        arc = CircularArc(v + r * e_out, v - r * e_in, -alpha)
        if arcs_inside(body, arc.a[None], arc.b[None], np.array([arc.opening]))[0]:
            return arc
        r *= 0.5
    return None


def best_sector(body: ConvexBody):
    """(value, arc, area fraction) of the sharpest corner's sector, or None.

    Per^2/area of a sector of angle alpha is 2 alpha whatever its radius.
    """
    alpha = body.interior_angles
    order = np.argsort(alpha, kind="stable")
    for k in order:
        if alpha[k] >= math.pi - 1e-9:
            break
        arc = sector_arc(body, int(k))
        if arc is not None:
            frac = 0.5 * alpha[k] * arc.radius**2 / body.area
            return 2.0 * float(alpha[k]), arc, float(frac)
    return None


# ---------------------------------------------------------------------------
# quotient and checks


def arc_optimality_residuals(body: ConvexBody, arc: CircularArc) -> dict[str, float]:
    sa = body.locate(arc.a)
    sb = body.locate(arc.b)
    ta = smooth_tangent(body, sa)
    tb = smooth_tangent(body, sb)
    return {
        "orthogonality_a": abs(math.pi / 2 - line_angle(ta, arc.tangent_a)),
        "orthogonality_b": abs(math.pi / 2 - line_angle(tb, arc.tangent_b)),
        "opening_excess": max(0.0, abs(arc.opening) - OPENING_LIMIT),
    }


def relaxed_C(body: ConvexBody, grid: int = DEFAULT_GRID) -> QuotientReport:
    point = shortest_halving_arc(body, grid)
    arc_val = 2.0 * point.length**2 / body.area
    res = arc_optimality_residuals(body, point.arc)
    report = QuotientReport(arc_val, point.arc, 0.5, res, "arc", {"arc": arc_val})
    sector = best_sector(body)
    if sector is not None:
        val, arc, frac = sector
        report.candidates["sector"] = val
        if abs(val - arc_val) < 1e-6:
            log.warning("arc and sector candidates agree to %.2e; both reported", abs(val - arc_val))
        # sectors win ties: a halving sector is a halving arc as well
        if val <= arc_val + 1e-6:
            report = QuotientReport(val, arc, frac, arc_optimality_residuals(body, arc), "sector", report.candidates)
    return report


def verify_arc_bound(body: ConvexBody, tol: float = ARC_BOUND_TOL) -> bool:
    return relaxed_C(body).value <= DISC_C + tol


# ---------------------------------------------------------------------------
# crossings


def _param_on(arc: CircularArc, p: np.ndarray) -> float:
    if arc.is_straight:
        d = arc.b - arc.a
        return float(np.dot(p - arc.a, d) / np.dot(d, d))
    c = arc.center
    ang = math.atan2(p[1] - c[1], p[0] - c[0])
    sweep = (arc.radial_angle_a - ang) if arc.opening > 0 else (ang - arc.radial_angle_a)
    return (sweep % (2 * math.pi)) / abs(arc.opening)


def _support_meet(a1: CircularArc, a2: CircularArc, tol: float):
    """Intersections of the supporting circles/lines; 'same' if identical."""
    if a1.is_straight and a2.is_straight:
        d1, d2 = a1.b - a1.a, a2.b - a2.a
        den = d1[0] * d2[1] - d1[1] * d2[0]
        w = a2.a - a1.a
        if abs(den) <= tol * np.hypot(*d1) * np.hypot(*d2):
            off = abs(d1[0] * w[1] - d1[1] * w[0]) / np.hypot(*d1)
            return "same" if off <= tol else []
        t = (w[0] * d2[1] - w[1] * d2[0]) / den
        return [a1.a + t * d1]
    if a1.is_straight or a2.is_straight:
        line, circ = (a1, a2) if a1.is_straight else (a2, a1)
        d = line.b - line.a
        f = line.a - circ.center
        A = d @ d
        B = 2 * f @ d
        C = f @ f - circ.radius**2
        disc = B * B - 4 * A * C
        if disc <= tol * max(B * B, 1e-300):
            return []
        sq = math.sqrt(disc)
        return [line.a + ((-B + sgn * sq) / (2 * A)) * d for sgn in (-1.0, 1.0)]
    c1, c2 = a1.center, a2.center
    r1, r2 = a1.radius, a2.radius
    dv = c2 - c1
    dist = float(np.hypot(*dv))
    scale = max(r1, r2)
    if dist <= tol * scale:
        return "same" if abs(r1 - r2) <= tol * scale else []
    if dist >= r1 + r2 - tol * scale or dist <= abs(r1 - r2) + tol * scale:
        return []
    x = (dist * dist + r1 * r1 - r2 * r2) / (2 * dist)
    y = math.sqrt(max(r1 * r1 - x * x, 0.0))
    e = dv / dist
    nrm = np.array([-e[1], e[0]])
    base = c1 + x * e
    return [base + y * nrm, base - y * nrm]


def crossing_count(arc1: CircularArc, arc2: CircularArc, tol: float = 1e-9) -> int | str:
    """Transversal crossings of two arcs at interior points of both.

    Returns the string ``"coincide"`` when the arcs lie on the same circle (or
    line) and overlap along a stretch.
    """
    meet = _support_meet(arc1, arc2, tol)
    if isinstance(meet, str):
        # same support: overlap iff an endpoint of one lies inside the other
        for p in (arc2.a, arc2.b, arc2.point_at(0.5)):
            if tol < _param_on(arc1, p) < 1 - tol:
                return "coincide"
        for p in (arc1.a, arc1.b, arc1.point_at(0.5)):
            if tol < _param_on(arc2, p) < 1 - tol:
                return "coincide"
        return 0
    count = 0
    for p in meet:
        if tol < _param_on(arc1, p) < 1 - tol and tol < _param_on(arc2, p) < 1 - tol:
            count += 1
    return count
