"""Isoperimetric constants derived from the relaxed arc quotient C(K).

gamma_{1/2}(K) = sqrt(C(K)), and for alpha > 1/2 the homogeneity of the
quotient gives gamma_alpha = gamma_{1/2} (2/|K|)^(alpha - 1/2). The
Cheeger-type constant Phi is gamma_{1/2}, mu_1 is gamma_1, and the Poincare
constant I(K) is bounded above by sqrt(2) gamma_{1/2}(K), with equality for
the disc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arcs import relaxed_C
from .geometry import ConvexBody

DISC_GAMMA_HALF = math.sqrt(8.0 / math.pi)


def _gamma_half(body: ConvexBody, C: float | None) -> float:
    return math.sqrt(relaxed_C(body).value if C is None else C)


def scale_gamma(gamma_half: float, area: float, alpha: float) -> float:
    if alpha < 0.5:
        raise ValueError(f"alpha must be at least 1/2, got {alpha}")
    return gamma_half * (2.0 / area) ** (alpha - 0.5)


def gamma_alpha(body: ConvexBody, alpha: float, C: float | None = None) -> float:
    """gamma_alpha of the body; pass ``C`` to reuse a computed C(K)."""
    if alpha < 0.5:
        raise ValueError(f"alpha must be at least 1/2, got {alpha}")
    return scale_gamma(_gamma_half(body, C), body.area, alpha)


def disc_gamma_alpha(area: float, alpha: float) -> float:
    """gamma_alpha of the disc with the given area."""
    return scale_gamma(DISC_GAMMA_HALF, area, alpha)


def compare_with_disc(body: ConvexBody, alpha: float, C: float | None = None) -> tuple[float, float, float]:
    """(gamma_alpha(K), gamma_alpha of the equal-area disc, disc minus K)."""
    val = gamma_alpha(body, alpha, C)
    ref = disc_gamma_alpha(body.area, alpha)
    return val, ref, ref - val


def poincare_upper(body: ConvexBody, C: float | None = None) -> tuple[float, float]:
    """(sqrt(2) gamma_{1/2}(K), the disc's value sqrt(2) sqrt(8/pi))."""
    return math.sqrt(2.0) * _gamma_half(body, C), math.sqrt(2.0) * DISC_GAMMA_HALF


@dataclass
class IsoperimetricReport:
    gamma_half: float
    gamma_alpha: dict[float, float]
    mu1: float
    I_upper: float
    disc_values: dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "gamma_half": self.gamma_half,
            "gamma_alpha": {str(a): v for a, v in self.gamma_alpha.items()},
            "Phi": self.gamma_half,
            "mu1": self.mu1,
            "I_upper": self.I_upper,
            "disc": {
                k: ({str(a): x for a, x in v.items()} if isinstance(v, dict) else v)
                for k, v in self.disc_values.items()
            },
        }


def isoperimetric_report(body: ConvexBody, alphas=(0.5, 1.0), C: float | None = None) -> IsoperimetricReport:
    gh = _gamma_half(body, C)
    area = body.area
    ga = {float(a): scale_gamma(gh, area, a) for a in alphas}
    disc = {
        "gamma_half": DISC_GAMMA_HALF,
        "gamma_alpha": {float(a): disc_gamma_alpha(area, a) for a in alphas},
        "mu1": disc_gamma_alpha(area, 1.0),
        "I": math.sqrt(2.0) * DISC_GAMMA_HALF,
    }
    return IsoperimetricReport(gh, ga, scale_gamma(gh, area, 1.0), math.sqrt(2.0) * gh, disc)
