"""Stress-plus-repulsion objective and its pairwise SGD minimizer.

The objective over a pair partition (attract, repel) with graph distances d:

    sum_{(i,j) in attract} (|X_i - X_j| - d_ij)^2
        - alpha * sum_{(i,j) in repel} log |X_i - X_j|

Attractive pairs pull toward their graph distance; all other pairs feel a
weak log repulsion.  The neighborhood size k dials the attract set from a
handful of locally connected pairs up to all pairs, which recovers plain
unnormalized full stress (alpha = 0, k = n-1).
"""
from __future__ import annotations

import hashlib
import json
import math
import warnings
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Callable

import numpy as np
from scipy.spatial.distance import pdist

from ._kernels import coincident_angle, sgd_epoch
from .connectivity import (
    DEFAULT_DECAY,
    DEFAULT_WALK_CAP,
    NeighborhoodPairs,
    connectivity_matrix,
    connectivity_matrix_spectral,
    pair_arrays,
    select_neighborhoods,
)
from .graph import Graph, apsp

__all__ = [
    "DEFAULT_ETA_MAX",
    "DEFAULT_ETA_MIN",
    "EmbedParams",
    "Embedding",
    "load_coords_csv",
    "objective",
    "pair_gradient",
    "step_size",
    "resolve_schedule",
    "epoch_pair_order",
    "prepare",
    "embed",
    "embed_prepared",
]

_COINCIDENT_EPS = 1e-12

# A step of 0.25 moves both endpoints of an attractive pair exactly onto the
# target distance in a single visit; anything above 0.5 amplifies the
# residual instead of shrinking it.
DEFAULT_ETA_MAX = 0.25
DEFAULT_ETA_MIN = 0.002


@dataclass(frozen=True)
class EmbedParams:
    """Run parameters.  k is the neighborhood size; the rest default to the
    recommended settings (walk cap 10, decay 0.1, repulsion weight 0.2,
    60-epoch budget with a 1e-7 displacement stop).

    eta_max / eta_min default to 0.25 and 0.002 at run time.  The step
    multiplies the raw pair gradient, so both numbers are dimensionless and
    need no rescaling per graph.
    """

    k: int
    c: int = DEFAULT_WALK_CAP
    s: float = DEFAULT_DECAY
    alpha: float = 0.2
    max_epochs: int = 60
    move_tol: float = 1e-7
    eta_max: float | None = None
    eta_min: float | None = None
    switch_epoch: int = 15
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.c < 1:
            raise ValueError(f"c must be >= 1, got {self.c}")
        if not 0.0 < self.s <= 1.0:
            raise ValueError(f"s must be in (0, 1], got {self.s}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.max_epochs < 1:
            raise ValueError(f"max_epochs must be >= 1, got {self.max_epochs}")
        if not self.move_tol > 0:
            raise ValueError(f"move_tol must be > 0, got {self.move_tol}")
        if self.switch_epoch < 1:
            raise ValueError(f"switch_epoch must be >= 1, got {self.switch_epoch}")
        if self.eta_max is not None and self.eta_min is not None:
            if not self.eta_max >= self.eta_min > 0:
                raise ValueError("need eta_max >= eta_min > 0")
        elif self.eta_min is not None and not self.eta_min > 0:
            raise ValueError(f"eta_min must be > 0, got {self.eta_min}")
        elif self.eta_max is not None and not self.eta_max > 0:
            raise ValueError(f"eta_max must be > 0, got {self.eta_max}")

    def to_dict(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_dict(data: dict) -> "EmbedParams":
        allowed = set(EmbedParams.__dataclass_fields__)
        unknown = set(data) - allowed
        if unknown:
            raise ValueError(f"unknown parameter(s): {sorted(unknown)}")
        return EmbedParams(**data)

    def params_hash(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()


@dataclass
class Embedding:
    """2-D coordinates plus the provenance needed to reproduce them."""

    coords: np.ndarray
    params_hash: str
    seed: int
    epochs_run: int
    final_objective: float
    converged: bool
    objective_history: tuple[float, ...] = field(repr=False, default=())

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    def provenance(self) -> dict:
        return {
            "params_hash": self.params_hash,
            "seed": self.seed,
            "epochs_run": self.epochs_run,
            "final_objective": self.final_objective,
            "converged": self.converged,
        }

    def to_json_dict(self) -> dict:
        return {
            "coordinates": [[float(x), float(y)] for x, y in self.coords],
            "provenance": self.provenance(),
        }

    def to_csv(self, path: str | Path) -> None:
        lines = ["vertex,x,y"]
        for v, (x, y) in enumerate(self.coords):
            lines.append(f"{v},{float(x)!r},{float(y)!r}")
        Path(path).write_text("\n".join(lines) + "\n")


def load_coords_csv(path: str | Path) -> np.ndarray:
    """Read coordinates written by :meth:`Embedding.to_csv`.

    Rows may appear in any order; the vertex column decides placement and
    must cover 0..n-1 exactly once.
    """
    lines = Path(path).read_text().strip().splitlines()
    if not lines or lines[0].strip() != "vertex,x,y":
        raise ValueError("coordinate file must start with a vertex,x,y header")
    entries = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected vertex,x,y")
        v = int(parts[0])
        if v in entries:
            raise ValueError(f"line {lineno}: duplicate vertex {v}")
        entries[v] = (float(parts[1]), float(parts[2]))
    n = len(entries)
    if n == 0:
        raise ValueError("coordinate file has no rows")
    if sorted(entries) != list(range(n)):
        raise ValueError("vertex column must cover 0..n-1")
    coords = np.empty((n, 2))
    for v, (x, y) in entries.items():
        coords[v] = (x, y)
    return coords


# ---------------------------------------------------------------------------
# objective and gradients

def _condensed_targets(d: np.ndarray) -> np.ndarray:
    n = d.shape[0]
    iu, iv = pair_arrays(n)
    return np.ascontiguousarray(d[iu, iv], dtype=np.float64)


def _objective_condensed(
    x: np.ndarray, attract: np.ndarray, targets: np.ndarray, alpha: float,
    warn_coincident: bool = False,
) -> float:
    dists = pdist(x)
    att = dists[attract]
    value = float(((att - targets[attract]) ** 2).sum())
    if alpha != 0.0:
        rep = dists[~attract]
        zero = rep == 0.0
        if zero.any():
            if warn_coincident:
                warnings.warn(
                    f"{int(zero.sum())} coincident repulsive pair(s); "
                    "distances jittered by machine epsilon for the log term"
                )
            rep = np.where(zero, np.finfo(np.float64).eps, rep)
        value -= alpha * float(np.log(rep).sum())
    return value


def objective(
    x: np.ndarray, pairs: NeighborhoodPairs, d: np.ndarray, alpha: float
) -> float:
    """Evaluate the objective for coordinates x under the given pair partition.

    Coincident repulsive pairs are perturbed by machine epsilon (with a
    warning) so the log term stays finite.
    """
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise ValueError("coordinates contain non-finite values")
    return _objective_condensed(
        x, pairs.attract_mask, _condensed_targets(d), alpha, warn_coincident=True
    )


def pair_gradient(
    xi: np.ndarray,
    xj: np.ndarray,
    kind: str,
    *,
    target: float | None = None,
    alpha: float | None = None,
    i: int = 0,
    j: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    """Analytic gradient of one objective term with respect to (xi, xj).

    kind "attract" needs target (the graph distance); kind "repel" needs
    alpha.  A coincident pair is replaced by a deterministic unit direction
    derived from the vertex indices before evaluating the formula, matching
    the SGD kernel.  Always returns (gi, gj) with gj = -gi.
    """
    xi = np.asarray(xi, dtype=np.float64)
    xj = np.asarray(xj, dtype=np.float64)
    delta = xi - xj
    dist = float(np.hypot(delta[0], delta[1]))
    if dist < _COINCIDENT_EPS:
        ang = coincident_angle(i, j)
        delta = np.array([math.cos(ang), math.sin(ang)])
        dist = 1.0
    if kind == "attract":
        if target is None:
            raise ValueError("attract gradient needs the pair's graph distance")
        gi = 2.0 * (dist - target) / dist * delta
    elif kind == "repel":
        if alpha is None:
            raise ValueError("repel gradient needs alpha")
        gi = -alpha / (dist * dist) * delta
    else:
        raise ValueError(f"unknown gradient kind {kind!r}")
    return gi, -gi


# ---------------------------------------------------------------------------
# schedule

def resolve_schedule(p: EmbedParams, d_max: float) -> tuple[float, float]:
    """Concrete (eta_max, eta_min) for a run.

    The step size multiplies the raw pair gradient, so it is dimensionless:
    eta = 0.25 moves an attractive pair exactly to its target distance in one
    visit, the largest stable step.  The default floor 0.002 keeps the 1/t
    tail quiet enough that the smoothed objective descends monotonically.
    d_max is accepted so callers can build distance-scaled overrides.
    """
    del d_max  # defaults are scale-free; kept for override symmetry
    eta_max = DEFAULT_ETA_MAX if p.eta_max is None else p.eta_max
    eta_min = DEFAULT_ETA_MIN if p.eta_min is None else p.eta_min
    if not eta_max >= eta_min > 0:
        raise ValueError(
            f"resolved schedule invalid: eta_max={eta_max}, eta_min={eta_min}"
        )
    return eta_max, eta_min


def step_size(t: int, p: EmbedParams, d_max: float) -> float:
    """Exponential decay from eta_max to eta_min over switch_epoch epochs,
    then an eta_min * switch_epoch / t tail (continuous at the handoff)."""
    if t < 0:
        raise ValueError(f"epoch index must be >= 0, got {t}")
    eta_max, eta_min = resolve_schedule(p, d_max)
    if t < p.switch_epoch:
        lam = math.log(eta_max / eta_min) / p.switch_epoch
        return eta_max * math.exp(-lam * t)
    return eta_min * p.switch_epoch / t


def epoch_pair_order(rng: np.random.Generator, n_pairs: int) -> np.ndarray:
    """Fresh visiting permutation for one epoch."""
    return rng.permutation(n_pairs)


# ---------------------------------------------------------------------------
# pipeline

def prepare(
    g: Graph, c: int = DEFAULT_WALK_CAP, s: float = DEFAULT_DECAY
) -> tuple[np.ndarray, np.ndarray]:
    """Distance matrix and walk-count similarity for a graph; the spectral
    similarity path with fallback to iterated multiplication."""
    d = apsp(g)
    try:
        m = connectivity_matrix_spectral(g, c, s)
    except np.linalg.LinAlgError:
        m = connectivity_matrix(g, c, s)
    return d, m


def embed(
    g: Graph, p: EmbedParams, progress: Callable[[int, int], None] | None = None
) -> Embedding:
    """Embed a connected graph in 2-D.  Deterministic given p.seed."""
    d, m = prepare(g, p.c, p.s)
    return embed_prepared(d, m, p, progress=progress)


def embed_prepared(
    d: np.ndarray,
    m: np.ndarray,
    p: EmbedParams,
    progress: Callable[[int, int], None] | None = None,
) -> Embedding:
    """Run the SGD loop on precomputed distances d and similarity m.

    Random-number consumption (the reproducibility contract): one generator
    seeded with p.seed draws the n x 2 uniform [0,1) init, then one
    length-C(n,2) visiting permutation per epoch.

    Each epoch visits every unordered pair once in its fresh permutation and
    moves both endpoints along the pair gradient, per-endpoint displacement
    capped at d_max.  Stops when no vertex moved more than move_tol over an
    epoch, or after max_epochs.
    """
    n = d.shape[0]
    if n < 2:
        raise ValueError("embedding needs at least 2 vertices")
    k = p.k
    if k >= n:
        warnings.warn(f"k={k} >= n={n}; clamped to {n - 1}")
        k = n - 1
    pairs = select_neighborhoods(m, k)
    return _run_sgd(d, pairs, p, progress=progress)


def _run_sgd(
    d: np.ndarray,
    pairs: NeighborhoodPairs,
    p: EmbedParams,
    progress: Callable[[int, int], None] | None = None,
) -> Embedding:
    n = d.shape[0]
    rng = np.random.default_rng(p.seed)
    x = rng.random((n, 2))
    d_max = float(d.max())
    pair_u, pair_v = pair_arrays(n)
    targets = _condensed_targets(d)
    attract = np.ascontiguousarray(pairs.attract_mask)

    history: list[float] = []
    epochs_run = 0
    converged = False
    for t in range(p.max_epochs):
        eta = step_size(t, p, d_max)
        order = epoch_pair_order(rng, targets.shape[0])
        x_before = x.copy()
        sgd_epoch(x, pair_u, pair_v, attract, targets, order, eta, p.alpha, d_max)
        epochs_run = t + 1
        if not np.all(np.isfinite(x)):
            raise FloatingPointError(
                f"coordinates diverged to non-finite values at epoch {epochs_run}"
            )
        value = _objective_condensed(x, attract, targets, p.alpha)
        if not math.isfinite(value):
            raise FloatingPointError(
                f"objective diverged at epoch {epochs_run}: {value}"
            )
        history.append(value)
        if progress is not None:
            progress(epochs_run, p.max_epochs)
        max_move = float(np.sqrt(((x - x_before) ** 2).sum(axis=1)).max())
        if max_move < p.move_tol:
            converged = True
            break
    return Embedding(
        coords=x,
        params_hash=p.params_hash(),
        seed=p.seed,
        epochs_run=epochs_run,
        final_objective=history[-1],
        converged=converged,
        objective_history=tuple(history),
    )
