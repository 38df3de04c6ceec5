"""Bodies of constant halving length built from an opening-angle profile.

A profile theta(sigma) on [-pi, pi) with theta(sigma - pi) = -theta(sigma)
determines a body whose optimal arcs all have the same length L: the arc for
direction sigma runs from x(sigma) to y(sigma) = x(sigma + pi), has opening
theta(sigma), and its tangent lines meet at m(sigma), where

    m'(sigma) = M(sigma) (cos sigma, sin sigma),
    M = (d/dsigma) g(theta) / sin(theta / 2),
    g(tau) = (L / tau) tan(tau / 2),
    x(sigma) = m(sigma) - g(theta) (-sin(sigma - theta/2), cos(sigma - theta/2)).

The profile is taken as the piecewise-linear interpolant of its samples, so
on each grid interval M = k(theta) theta' with k = g' / sin(theta/2) smooth,
and every integral over sigma is done with Gauss-Legendre nodes inside the
intervals. Profiles with kinks (the rounded triangle) are then integrated to
near machine precision as long as the kinks sit on grid nodes.

A positive theta bends the arc to the right of x -> y; in the
:class:`~fencekit.geometry.CircularArc` convention that is opening -theta.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from .geometry import CircularArc, ConvexBody, GeometryError, split_by_arc

SQRT3 = math.sqrt(3.0)
DEFAULT_SAMPLES = 4096
# divisible by 12, so the rounded triangle's kinks at multiples of pi/6 are nodes
ROUNDED_TRIANGLE_SAMPLES = 4320
ROUNDED_TRIANGLE_AREA = 0.798144000519973557814506320949  # times L**2
I_CONSTANT = 0.294926921299462422265617367163
DISC_AREA = math.pi / 4.0  # times L**2
FOURIER_N = 64

_NODES, _WEIGHTS = leggauss(8)
_F_NODES, _F_WEIGHTS = leggauss(40)
_K_SERIES = 0.05


# ---------------------------------------------------------------------------
# the scalar functions g, k = f', f


def _g(tau, L):
    t = np.asarray(tau, dtype=float)
    small = np.abs(t) < 1e-4
    ts = np.where(small, 1.0, t)
    # series truncation: next term L tau**4 / 240, below 1e-18 L here
    return np.where(small, 0.5 * L * (1.0 + t * t / 12.0), L * np.tan(ts / 2.0) / ts)


def _k(tau, L):
    """f'(tau) = g'(tau) / sin(tau/2); tends to L/6 at tau = 0."""
    t = np.asarray(tau, dtype=float)
    small = np.abs(t) < _K_SERIES
    ts = np.where(small, 1.0, t)
    exact = (ts - np.sin(ts)) / (2.0 * ts * ts * np.cos(ts / 2.0) ** 2 * np.sin(ts / 2.0))
    t2 = t * t
    # the omitted tau**8 term is below 1e-13 relative for |tau| < 0.05
    series = 1 / 6 + t2 * (29 / 720 + t2 * (1609 / 241920 + t2 * 9097 / 9676800))
    return L * np.where(small, series, exact)


def _f(tau, L):
    """Vectorised f by 40-point Gauss-Legendre on [0, tau]; k is analytic on
    |t| < pi so this is accurate to rounding for |tau| <= sqrt(3)."""
    t = np.asarray(tau, dtype=float)
    u = 0.5 * (_F_NODES + 1.0)
    vals = _k(t[..., None] * u, L)
    return 0.5 * t * np.sum(vals * _F_WEIGHTS, axis=-1)


def g_of(tau: float, L: float = 1.0) -> float:
    """Distance from the tangent-line intersection to either arc terminal."""
    if not abs(tau) < math.pi:
        raise GeometryError(f"g is defined for |tau| < pi, got {tau}")
    return float(_g(tau, L))


def f_of(tau: float, L: float = 1.0) -> float:
    """Antiderivative of g'(t)/sin(t/2) vanishing at 0, by adaptive quadrature.

    The integrand has a removable singularity at 0 with limit L/6.
    """
    if abs(tau) > SQRT3 + 1e-12:
        raise GeometryError(f"f is only needed on |tau| <= sqrt(3), got {tau}")
    if tau == 0.0:
        return 0.0
    val, _ = quad(lambda t: float(_k(t, L)), 0.0, tau, epsabs=1e-15, epsrel=1e-13, limit=200)
    return val


def _I_integrand(t: float) -> float:
    if t < 1e-2:
        t2 = t * t
        # series of cos(t)/t (1/t - cot t); next term ~ t**8, negligible
        return 1 / 3 + t2 * (-13 / 90 + t2 * (37 / 7560 - t2 * 29 / 75600))
    return math.cos(t) / t * (1.0 / t - 1.0 / math.tan(t))


def remark_I_constant() -> float:
    """The integral of cos(t)/t (1/t - 1/tan t) over [0, pi/3]."""
    val, _ = quad(_I_integrand, 0.0, math.pi / 3, epsabs=1e-15, epsrel=1e-13)
    return val


def rounded_triangle_area_formula(L: float = 1.0) -> float:
    I = remark_I_constant()
    return L * L * (9.0 / math.pi - 2.0 * SQRT3 * (3.0 / (2.0 * math.pi) + I) ** 2)


@dataclass(frozen=True)
class FGReport:
    min_margin: float
    argmin: float
    positive_off_origin: bool
    ineq_min_slack: float


def check_fg_inequality(L: float = 1.0, grid=None) -> FGReport:
    """Margins of g^2 - (9/8) f^2 - L^2/4 on a tau grid in [-sqrt3, sqrt3],
    plus the slack of (tau/2)^2 - sin^2(tau/2) - sin^4(tau/2)/(9 cos^2(tau/2))
    on (0, pi/2)."""
    tau = np.linspace(-SQRT3, SQRT3, 10001) if grid is None else np.asarray(grid, dtype=float)
    if np.any(np.abs(tau) > SQRT3 + 1e-12):
        raise GeometryError("grid leaves [-sqrt3, sqrt3]")
    margin = _g(tau, L) ** 2 - 9.0 / 8.0 * _f(tau, L) ** 2 - L * L / 4.0
    k = int(np.argmin(margin))
    off = tau != 0.0
    s = np.linspace(0.0, math.pi / 2, 10001)[1:-1]
    sh = np.sin(s / 2)
    slack = (s / 2) ** 2 - sh**2 - sh**4 / (9.0 * np.cos(s / 2) ** 2)
    return FGReport(float(margin[k]), float(tau[k]), bool(np.all(margin[off] > 0.0)), float(np.min(slack)))


# ---------------------------------------------------------------------------
# profiles


@dataclass(frozen=True, eq=False)
class ThetaProfile:
    """Opening angles on the uniform grid sigma_j = -pi + 2 pi j / N."""

    samples: np.ndarray
    L: float = 1.0
    lipschitz_bound: float = math.inf

    def __post_init__(self):
        th = np.asarray(self.samples, dtype=float).copy()
        th.setflags(write=False)
        object.__setattr__(self, "samples", th)
        object.__setattr__(self, "L", float(self.L))
        n = th.size
        if n < 12 or n % 2:
            raise GeometryError("profile needs an even number (>= 12) of samples")
        if not self.L > 0:
            raise GeometryError("L must be positive")
        half = n // 2
        if np.max(np.abs(th[:half] + th[half:]), initial=0.0) > 1e-12:
            raise GeometryError("profile violates theta(sigma - pi) = -theta(sigma)")
        if np.max(np.abs(th)) > SQRT3 + 1e-12:
            raise GeometryError("profile exceeds the opening limit sqrt(3)")
        if np.max(np.abs(self.slopes)) > self.lipschitz_bound + 1e-9:
            raise GeometryError("profile slopes exceed its Lipschitz bound")

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def step(self) -> float:
        return 2.0 * math.pi / self.n

    @property
    def sigma(self) -> np.ndarray:
        return -math.pi + self.step * np.arange(self.n)

    @cached_property
    def slopes(self) -> np.ndarray:
        """Slope of the interpolant on [sigma_j, sigma_j+1], periodic."""
        return (np.roll(self.samples, -1) - self.samples) / self.step

    def theta(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        u = np.mod(s + math.pi, 2 * math.pi) / self.step
        j = np.minimum(np.floor(u).astype(int), self.n - 1)
        return self.samples[j] + self.slopes[j] * (u - j) * self.step

    def to_json(self) -> str:
        return json.dumps({"sigma": self.sigma.tolist(), "theta": self.samples.tolist(), "L": self.L})

    @classmethod
    def from_dict(cls, data: dict) -> "ThetaProfile":
        """Profile from ``{"sigma": [...], "theta": [...], "L": v}``.

        Samples not on a uniform grid starting at -pi are resampled linearly
        (periodically) onto DEFAULT_SAMPLES nodes.
        """
        sig = np.asarray(data["sigma"], dtype=float)
        th = np.asarray(data["theta"], dtype=float)
        L = float(data.get("L", 1.0))
        n = sig.size
        uniform = -math.pi + 2 * math.pi * np.arange(n) / n
        if n != th.size:
            raise GeometryError("sigma and theta differ in length")
        if not (n % 2 == 0 and np.allclose(sig, uniform, atol=1e-12, rtol=0)):
            order = np.argsort(np.mod(sig + math.pi, 2 * math.pi))
            xs = np.mod(sig[order] + math.pi, 2 * math.pi) - math.pi
            uniform = -math.pi + 2 * math.pi * np.arange(DEFAULT_SAMPLES) / DEFAULT_SAMPLES
            th = np.interp(uniform, xs, th[order], period=2 * math.pi)
            half = DEFAULT_SAMPLES // 2
            anti = 0.5 * (th[half:] - th[:half])
            th = np.concatenate([-anti, anti])
        return cls(th, L)


def disc_profile(L: float = 1.0, n: int = DEFAULT_SAMPLES) -> ThetaProfile:
    return ThetaProfile(np.zeros(n), L, 0.0)


def rounded_triangle_profile(L: float = 1.0, n: int = ROUNDED_TRIANGLE_SAMPLES) -> ThetaProfile:
    """theta = (pi - |2 pi - |6 sigma - 3 pi||) / 3 on [0, pi), odd under
    sigma -> sigma - pi. Zig-zag of slope +-2 between +-pi/3."""
    if n % 12:
        raise GeometryError("use a multiple of 12 samples so the kinks are nodes")
    s = -math.pi + 2 * math.pi * np.arange(n) / n
    upper = s >= 0
    su = np.where(upper, s, s + math.pi)
    th = (math.pi - np.abs(2 * math.pi - np.abs(6 * su - 3 * math.pi))) / 3.0
    th = np.where(upper, th, -th)
    return ThetaProfile(th, L, 2.0)


def M_of(profile: ThetaProfile, s) -> np.ndarray:
    """M(sigma) = k(theta) theta'.

    Between nodes theta' is the slope of the interpolant. At a node it is the
    central difference, or the forward difference where the profile has a
    kink there.
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    h = profile.step
    u = np.mod(s + math.pi, 2 * math.pi) / h
    j = np.minimum(np.floor(u + 1e-9).astype(int), profile.n - 1) % profile.n
    on_node = np.abs(u - np.round(u)) < 1e-9
    right = profile.slopes[j]
    left = profile.slopes[j - 1]
    kink = np.abs(right - left) > 1e-9 * max(1.0, float(np.max(np.abs(profile.slopes))))
    slope = np.where(on_node & ~kink, 0.5 * (left + right), right)
    return _k(profile.theta(s), profile.L) * slope


# ---------------------------------------------------------------------------
# construction


@dataclass(frozen=True, eq=False)
class CHLBody:
    body: ConvexBody
    profile: ThetaProfile
    m0: np.ndarray
    area_gauss: float
    area_fourier: float
    m: np.ndarray = field(repr=False)
    closure_defect: float = 0.0
    coefficients: tuple = field(default=(), repr=False)

    @property
    def L(self) -> float:
        return self.profile.L

    def x(self, j: int) -> np.ndarray:
        return self.body.vertices[j % self.profile.n]

    def arc(self, j: int) -> CircularArc:
        """Halving arc of grid direction j, from x(sigma_j) to y(sigma_j)."""
        n = self.profile.n
        return CircularArc(self.x(j), self.x(j + n // 2), -float(self.profile.samples[j % n]))

    def spectrum(self) -> tuple[np.ndarray, np.ndarray]:
        return self.coefficients


class _Nodes:
    """Gauss-Legendre nodes on every grid interval, with M and theta there."""

    def __init__(self, profile: ThetaProfile):
        h = profile.step
        sig = profile.sigma
        self.h = h
        self.t = sig[:, None] + 0.5 * h * (_NODES + 1.0)
        self.w = np.broadcast_to(0.5 * h * _WEIGHTS, self.t.shape)
        slope = profile.slopes[:, None]
        self.theta = profile.samples[:, None] + slope * (self.t - sig[:, None])
        self.M = _k(self.theta, profile.L) * slope
        self.slope = slope


def build(profile: ThetaProfile, closure_tol: float = 1e-8) -> CHLBody:
    """Boundary polygon x(sigma_j) of the body with the given profile.

    Raises GeometryError when the profile does not close up (the integrals of
    M cos and M sin over [0, pi] must vanish) or the curve is not convex.
    """
    n = profile.n
    L = profile.L
    half = n // 2
    nd = _Nodes(profile)
    cs = np.stack([np.cos(nd.t), np.sin(nd.t)], axis=-1)
    dm = np.sum((nd.w * nd.M)[..., None] * cs, axis=1)
    # m on the nodes, with m(0) = 0 at index half
    m = np.zeros((n, 2))
    m[half + 1 :] = np.cumsum(dm[half:-1], axis=0)
    m[:half] = -np.cumsum(dm[:half][::-1], axis=0)[::-1]
    closure = float(np.hypot(*np.sum(dm[half:], axis=0)))
    if closure > closure_tol * L:
        raise GeometryError(f"profile does not close: |m(pi) - m(0)| = {closure:.3g}")
    sig = profile.sigma
    th = profile.samples
    ang = sig - th / 2.0
    x = m - _g(th, L)[:, None] * np.stack([-np.sin(ang), np.cos(ang)], axis=1)
    _check_convex(x, sig)
    body = ConvexBody(x)

    # area from the double integral over [0, pi]
    up = slice(half, n)
    tq = nd.t[up]
    d = tq - sig[up][:, None]
    sub_t = sig[up][:, None, None] + d[..., None] * 0.5 * (_NODES + 1.0)
    sub_w = d[..., None] * 0.5 * _WEIGHTS
    slope = nd.slope[up][..., None]
    sub_M = _k(th[up][:, None, None] + slope * (sub_t - sig[up][:, None, None]), L) * slope
    part = np.stack(
        [np.sum(sub_w * sub_M * np.cos(sub_t), axis=-1), np.sum(sub_w * sub_M * np.sin(sub_t), axis=-1)],
        axis=-1,
    )
    rel = m[up][:, None, :] + part  # m(t) - m(0), since m(0) = 0
    wedge = rel[..., 0] * np.sin(tq) - rel[..., 1] * np.cos(tq)
    double = float(np.sum(nd.w[up] * nd.M[up] * wedge))
    g2 = float(np.sum(nd.w[up] * _g(nd.theta[up], L) ** 2))
    area_g = double + g2

    # area from the Fourier coefficients of h = f(theta)
    hvals = _f(nd.theta, L)
    harm = np.arange(2 * FOURIER_N + 2)
    arg = nd.t.ravel()[:, None] * harm[None, :]
    wh = (nd.w * hvals).ravel()
    a = wh @ np.cos(arg) / math.pi
    b = wh @ np.sin(arg) / math.pi
    odd = 2 * np.arange(1, FOURIER_N + 1) + 1
    series = -0.5 * math.pi * float(np.sum((a[odd] ** 2 + b[odd] ** 2) / (odd**2 - 1.0)))
    f2 = float(np.sum(nd.w[up] * hvals[up] ** 2))
    area_f = series - f2 + g2

    return CHLBody(body, profile, np.zeros(2), area_g, area_f, m, closure, (a, b))


def _check_convex(x: np.ndarray, sig: np.ndarray) -> None:
    e = np.roll(x, -1, axis=0) - x
    lens = np.hypot(e[:, 0], e[:, 1])
    scale = float(np.max(lens)) * x.shape[0]
    if np.min(lens) <= 1e-12 * scale:
        j = int(np.argmin(lens))
        raise GeometryError(f"profile infeasible: boundary stalls at sigma = {sig[j]:.6f}")
    turn = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
    bad = turn < -1e-12 * lens * np.roll(lens, -1)
    if np.any(bad):
        j = (int(np.argmax(bad)) + 1) % x.shape[0]
        raise GeometryError(f"profile infeasible: boundary not convex at sigma = {sig[j]:.6f}")
    total = float(np.sum(np.arctan2(turn, np.einsum("ij,ij->i", e, np.roll(e, -1, axis=0)))))
    if abs(total - 2 * math.pi) > 1e-6:
        raise GeometryError("profile infeasible: boundary winds more than once")


def area_gauss(chl: CHLBody) -> float:
    return chl.area_gauss


def area_fourier(chl: CHLBody) -> float:
    return chl.area_fourier


def verify_halving(chl: CHLBody, sigma: float) -> tuple[float, float]:
    """Split the built polygon by the arc of direction sigma in [-pi, 0).

    sigma is rounded to the nearest grid node, where x and y are vertices.
    """
    if not -math.pi <= sigma < 0.0:
        raise GeometryError("sigma must lie in [-pi, 0)")
    j = int(round((sigma + math.pi) / chl.profile.step)) % chl.profile.n
    if j >= chl.profile.n // 2:
        j = chl.profile.n // 2 - 1
    res = split_by_arc(chl.body, chl.arc(j))
    return res.area_left, res.area_right
