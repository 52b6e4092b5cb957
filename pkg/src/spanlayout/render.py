"""Deterministic SVG rendering of embeddings.

Edges are colored by how far their drawn length deviates from the ideal:
after the layout is rescaled by the optimal stress factor, an edge drawn
at exactly its graph distance is green, compressed edges shade toward
red, stretched edges toward blue.  Identical inputs always produce
identical bytes, so rendered files can be compared directly.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .graph import Graph, apsp
from .metrics import optimal_scale

__all__ = ["edge_color", "jet_color", "render_svg"]

# piecewise-linear jet anchors at t = 0, 0.25, 0.5, 0.75, 1
_JET_STOPS = (
    (0.00, (0, 0, 255)),
    (0.25, (0, 255, 255)),
    (0.50, (0, 255, 0)),
    (0.75, (255, 255, 0)),
    (1.00, (255, 0, 0)),
)


def jet_color(t: float) -> tuple[int, int, int]:
    """Jet colormap value at ``t``, clamped to [0, 1], as 8-bit RGB."""
    t = min(1.0, max(0.0, float(t)))
    for (t0, c0), (t1, c1) in zip(_JET_STOPS, _JET_STOPS[1:]):
        if t <= t1:
            f = (t - t0) / (t1 - t0)
            return tuple(int(round(a + f * (b - a))) for a, b in zip(c0, c1))
    return _JET_STOPS[-1][1]


def edge_color(scaled_length: float) -> tuple[int, int, int]:
    """Color for an edge drawn at ``scaled_length`` times its ideal length.

    1 maps to green (faithful), 0 to red (collapsed), 2 or more to blue
    (overstretched).
    """
    if scaled_length < 0:
        raise ValueError("scaled_length must be non-negative")
    return jet_color((2.0 - scaled_length) / 2.0)


def _hex(rgb: tuple[int, int, int]) -> str:
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def render_svg(
    g: Graph,
    coords: np.ndarray,
    d: Optional[np.ndarray] = None,
    *,
    width: int = 800,
    show_vertices: bool = True,
) -> bytes:
    """Render a layout of ``g`` as standalone SVG bytes.

    The drawing keeps data coordinates (y flipped to point up) inside a
    viewBox padded by 5 percent of the larger span.  ``d`` accepts a
    precomputed distance matrix; otherwise shortest paths are computed
    here to fix the global rescaling factor.
    """
    coords = np.asarray(coords, dtype=np.float64)
    if coords.shape != (g.n, 2):
        raise ValueError("coords must have shape (n, 2)")
    if not np.all(np.isfinite(coords)):
        raise ValueError("coords contain non-finite values")
    if d is None:
        d = apsp(g)
    iu, iv = np.triu_indices(g.n, k=1)
    scale = optimal_scale(d[iu, iv], np.hypot(*(coords[iu] - coords[iv]).T))

    x = coords[:, 0]
    y = -coords[:, 1]  # svg y grows downward
    xspan = float(x.max() - x.min()) if g.n else 0.0
    yspan = float(y.max() - y.min()) if g.n else 0.0
    span = max(xspan, yspan, 1e-6)
    pad = 0.05 * span
    view = (x.min() - pad, y.min() - pad, xspan + 2 * pad, yspan + 2 * pad)
    stroke = 0.006 * span
    radius = 0.009 * span

    parts = ['<?xml version="1.0" encoding="UTF-8"?>']
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width}" viewBox="{_fmt(view[0])} {_fmt(view[1])} '
        f'{_fmt(view[2])} {_fmt(view[3])}">'
    )
    for u, v, _ in g.edges:
        drawn = float(np.hypot(x[u] - x[v], y[u] - y[v]))
        target = d[u, v]
        color = _hex(edge_color(scale * drawn / target))
        parts.append(
            f'<line x1="{_fmt(x[u])}" y1="{_fmt(y[u])}" '
            f'x2="{_fmt(x[v])}" y2="{_fmt(y[v])}" '
            f'stroke="{color}" stroke-width="{_fmt(stroke)}" '
            'stroke-linecap="round"/>'
        )
    if show_vertices:
        for i in range(g.n):
            parts.append(
                f'<circle cx="{_fmt(x[i])}" cy="{_fmt(y[i])}" '
                f'r="{_fmt(radius)}" fill="#222222"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")
