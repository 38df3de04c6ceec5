"""Derivative-free 1-D minimisation."""

from __future__ import annotations

import math

import numpy as np
from typing import Callable

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI2 = (3 - math.sqrt(5)) / 2


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10) -> tuple[float, float]:
    """Minimise a unimodal ``f`` on [a, b]; returns (x, f(x)).

    The bracket endpoints are also compared so a minimum sitting on the
    boundary is not lost.
    """
    a, b = min(a, b), max(a, b)
    a0, b0 = a, b
    fa, fb = f(a0), f(b0)
    h = b - a
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    while h > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            h *= INV_PHI
            c = a + INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h *= INV_PHI
            d = a + INV_PHI * h
            fd = f(d)
    best = min((fc, c), (fd, d), (fa, a0), (fb, b0), key=lambda t: (t[0], t[1]))
    return best[1], best[0]


def golden_section_many(f, a, b, tol: float = 1e-10):
    """Run golden-section searches on several brackets at once.

    ``f`` maps an array of abscissae to an array of values; one call per
    iteration serves every bracket. Returns arrays (x, f(x)).
    """
    a, b = np.minimum(a, b).astype(float), np.maximum(a, b).astype(float)
    a0, b0 = a.copy(), b.copy()
    h = b - a
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = np.split(f(np.concatenate([c, d])), 2)
    iters = int(np.ceil(np.log(max(float(np.max(h)), tol) / tol) / -np.log(INV_PHI))) if h.size else 0
    for _ in range(iters):
        left = fc <= fd
        h = h * INV_PHI
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_d = np.where(left, c, a + INV_PHI * h)
        new_c = np.where(left, a + INV_PHI2 * h, d)
        keep = np.where(left, fc, fd)
        probe = np.where(left, new_c, new_d)
        fp = f(probe)
        fc = np.where(left, fp, keep)
        fd = np.where(left, keep, fp)
        c, d = new_c, new_d
    fa, fb = np.split(f(np.concatenate([a0, b0])), 2)
    xs = np.stack([c, d, a0, b0])
    fs = np.stack([fc, fd, fa, fb])
    k = np.argmin(fs, axis=0)
    idx = np.arange(xs.shape[1])
    return xs[k, idx], fs[k, idx]
