"""Minimal SVG output: body outlines, cut curves and text labels."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .geometry import Chord, CircularArc, ConvexBody

SIZE = 480
MARGIN = 0.08


def _path(points: np.ndarray, closed: bool) -> str:
    cmds = [f"M {points[0, 0]:.6f} {points[0, 1]:.6f}"]
    cmds += [f"L {x:.6f} {y:.6f}" for x, y in points[1:]]
    if closed:
        cmds.append("Z")
    return " ".join(cmds)


def cut_points(cut: Chord | CircularArc, n: int = 96) -> np.ndarray:
    if isinstance(cut, Chord):
        return np.stack([cut.a, cut.b])
    return cut.points(n)


def render(body: ConvexBody | np.ndarray, cuts=(), labels=(), title: str | None = None) -> str:
    """SVG document for one outline plus optional cuts and labels.

    ``labels`` holds (text, point) pairs in body coordinates. The view box is
    the outline's bounding box with a small margin; y points up.
    """
    outline = body.vertices if isinstance(body, ConvexBody) else np.asarray(body, dtype=float)
    lo = outline.min(axis=0)
    hi = outline.max(axis=0)
    span = float(max(hi - lo))
    pad = MARGIN * span
    x0, y0 = lo[0] - pad, lo[1] - pad
    w, h = hi[0] - lo[0] + 2 * pad, hi[1] - lo[1] + 2 * pad
    stroke = span / 250.0

    def flip(p):
        p = np.atleast_2d(p)
        return np.stack([p[:, 0], (y0 + h) - (p[:, 1] - y0)], axis=1)

    scale = SIZE / max(w, h)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w * scale:.1f}" height="{h * scale:.1f}" '
        f'viewBox="{x0:.6f} {y0:.6f} {w:.6f} {h:.6f}">',
    ]
    if title:
        parts.append(f"<title>{escape(title)}</title>")
    parts.append(
        f'<path d="{_path(flip(outline), True)}" fill="#eef2f7" stroke="#1f2d3d" stroke-width="{stroke:.6f}"/>'
    )
    colours = ["#c0392b", "#2471a3", "#1e8449", "#7d3c98"]
    for i, cut in enumerate(cuts):
        pts = flip(cut_points(cut))
        parts.append(
            f'<path d="{_path(pts, False)}" fill="none" stroke="{colours[i % len(colours)]}" '
            f'stroke-width="{1.6 * stroke:.6f}"/>'
        )
    for text, pos in labels:
        p = flip(np.asarray(pos, dtype=float))[0]
        parts.append(
            f'<text x="{p[0]:.6f}" y="{p[1]:.6f}" font-size="{span / 20:.6f}" '
            f'font-family="serif">{escape(str(text))}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
