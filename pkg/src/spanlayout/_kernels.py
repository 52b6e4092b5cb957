"""JIT-compiled SGD inner loop.

One epoch visits every unordered vertex pair once in the caller-supplied
order and applies the pair update in place.  Kept free of Python objects so
numba can compile it nogil; float semantics match the pure-numpy formulas in
optimizer.py exactly (no fastmath).
"""
from __future__ import annotations

import math

from numba import njit

_TWO_PI = 2.0 * math.pi


@njit(cache=True, nogil=True)
def coincident_angle(i: int, j: int) -> float:
    """Deterministic direction for a coincident pair, mixed from the indices."""
    h = (i * 2654435761 + j * 40503) % 4294967296
    return _TWO_PI * h / 4294967296.0


@njit(cache=True, nogil=True)
def sgd_epoch(x, pair_u, pair_v, attract, targets, order, eta, alpha, d_max):
    """In-place pass over all pairs.

    x: (n,2) coordinates, mutated.  pair_u/pair_v: condensed-order endpoint
    arrays.  attract: condensed boolean mask.  targets: condensed graph
    distances (used for attractive pairs only).  order: visiting permutation.
    eta: step size this epoch.  d_max: per-endpoint displacement cap.
    """
    for t in range(order.shape[0]):
        idx = order[t]
        i = pair_u[idx]
        j = pair_v[idx]
        dx = x[i, 0] - x[j, 0]
        dy = x[i, 1] - x[j, 1]
        dist = math.sqrt(dx * dx + dy * dy)
        if dist < 1e-12:
            ang = coincident_angle(i, j)
            dx = math.cos(ang)
            dy = math.sin(ang)
            dist = 1.0
        if attract[idx]:
            coef = 2.0 * (dist - targets[idx]) / dist
        else:
            coef = -alpha / (dist * dist)
        mx = -eta * coef * dx
        my = -eta * coef * dy
        norm = math.sqrt(mx * mx + my * my)
        if norm > d_max:
            scale = d_max / norm
            mx *= scale
            my *= scale
        x[i, 0] += mx
        x[i, 1] += my
        x[j, 0] -= mx
        x[j, 1] -= my
