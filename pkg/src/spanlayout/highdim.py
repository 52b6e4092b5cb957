"""Layout of high-dimensional point sets.

Points are turned into a row-stochastic affinity matrix with a Gaussian
kernel; the usual walk-count accumulation then runs on that matrix
instead of a graph adjacency.  Attraction targets are the raw Euclidean
distances between the original points, so the optimizer is reused
unchanged.
"""

from __future__ import annotations

import warnings
from typing import Optional

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .connectivity import DEFAULT_DECAY, DEFAULT_WALK_CAP, power_sum
from .metrics import optimal_scale
from .optimizer import EmbedParams, Embedding, embed_prepared

__all__ = [
    "PointFormatError",
    "affinity_matrix",
    "embed_points",
    "load_points",
    "point_cluster_distortion",
    "point_connectivity",
    "point_distance_matrix",
]


class PointFormatError(ValueError):
    """Raised for malformed point files, with a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _check_points(points: np.ndarray) -> np.ndarray:
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[0] < 2 or points.shape[1] < 1:
        raise ValueError("points must be a 2-d array with at least two rows")
    if not np.all(np.isfinite(points)):
        raise ValueError("points contain non-finite values")
    return points


def point_distance_matrix(points: np.ndarray) -> np.ndarray:
    """Dense Euclidean distance matrix between the rows of ``points``."""
    return squareform(pdist(_check_points(points)))


def affinity_matrix(points: np.ndarray, sigma2: Optional[float] = None) -> np.ndarray:
    """Row-stochastic Gaussian affinity: exp(-dist**2 / sigma2), renormalized.

    The diagonal is zeroed before normalization so every row sums to 1
    over the other points.  Without ``sigma2`` the kernel width is set to
    the sample variance of the pairwise distances.
    """
    points = _check_points(points)
    condensed = pdist(points)
    if sigma2 is None:
        sigma2 = float(np.var(condensed, ddof=1)) if condensed.size > 1 else 0.0
        if sigma2 <= 0:
            raise ValueError(
                "pairwise distances have no spread; pass sigma2 explicitly"
            )
    if sigma2 <= 0 or not np.isfinite(sigma2):
        raise ValueError("sigma2 must be positive and finite")
    w = np.exp(-squareform(condensed) ** 2 / sigma2)
    np.fill_diagonal(w, 0.0)
    sums = w.sum(axis=1)
    if np.any(sums == 0):
        raise ValueError("a point has vanishing affinity to every other point")
    return w / sums[:, None]


def point_connectivity(
    points: np.ndarray,
    c: int = DEFAULT_WALK_CAP,
    s: float = DEFAULT_DECAY,
    sigma2: Optional[float] = None,
) -> np.ndarray:
    """Decayed power sum of the affinity matrix, diagonal zeroed.

    The affinity matrix is asymmetric after row normalization, so only the
    iterated-multiplication accumulation applies; there is no eigenvalue
    shortcut here.
    """
    w = affinity_matrix(points, sigma2=sigma2)
    m = power_sum(w, c, s)
    np.fill_diagonal(m, 0.0)
    return m


def embed_points(
    points: np.ndarray,
    params: EmbedParams,
    sigma2: Optional[float] = None,
    progress=None,
) -> Embedding:
    """Embed the rows of ``points`` into the plane.

    Neighborhood selection runs on the affinity power sum with the ``c``
    and ``s`` from ``params``; attraction targets are plain Euclidean
    distances in the original space.
    """
    points = _check_points(points)
    d = point_distance_matrix(points)
    m = point_connectivity(points, c=params.c, s=params.s, sigma2=sigma2)
    return embed_prepared(d, m, params, progress=progress)


def point_cluster_distortion(
    points: np.ndarray, x: np.ndarray, labels: np.ndarray
) -> float:
    """Distortion of cluster centroid geometry under the embedding.

    Separations are Euclidean distances between high-dimensional cluster
    centroids; they are compared against distances between the embedded
    centroids after optimal rescaling, exactly as in the graph metric.
    Coincident high-dimensional centroids are skipped with a warning.
    """
    points = _check_points(points)
    x = np.asarray(x, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    n = points.shape[0]
    if labels.shape != (n,):
        raise ValueError("labels must assign one cluster per point")
    if x.shape != (n, 2):
        raise ValueError("x must have shape (n, 2)")
    uniq, inverse = np.unique(labels, return_inverse=True)
    k = uniq.size
    if k < 2:
        return 0.0
    counts = np.bincount(inverse).astype(np.float64)
    high = np.zeros((k, points.shape[1]))
    np.add.at(high, inverse, points)
    high /= counts[:, None]
    low = np.zeros((k, 2))
    np.add.at(low, inverse, x)
    low /= counts[:, None]
    iu, iv = np.triu_indices(k, k=1)
    dsel = np.linalg.norm(high[iu] - high[iv], axis=1)
    keep = dsel > 0
    if not np.all(keep):
        warnings.warn("skipping coincident cluster centroids", stacklevel=2)
    if not np.any(keep):
        return 0.0
    dsel = dsel[keep]
    esel = np.hypot(low[iu[keep], 0] - low[iv[keep], 0],
                    low[iu[keep], 1] - low[iv[keep], 1])
    s = optimal_scale(dsel, esel)
    return float(np.sum(((dsel - s * esel) / dsel) ** 2))


def load_points(path, labels_last: bool = False):
    """Read points from a text file, one row per line.

    Values are separated by commas or whitespace; blank lines and ``#``
    comments are skipped, and a single non-numeric first line is treated
    as a header.  With ``labels_last`` the final column holds integer
    cluster labels, which are remapped to 0..K-1 in sorted order.
    Returns ``(points, labels)`` with ``labels`` None when absent.
    """
    rows: list[list[float]] = []
    raw_labels: list[int] = []
    width: Optional[int] = None
    header_allowed = True
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.replace(",", " ").split()
            try:
                values = [float(t) for t in parts]
            except ValueError:
                if header_allowed:
                    header_allowed = False
                    continue
                raise PointFormatError(lineno, f"non-numeric value in {text!r}")
            header_allowed = False
            if labels_last:
                if len(values) < 2:
                    raise PointFormatError(lineno, "need at least one coordinate and a label")
                label = values[-1]
                if label != int(label):
                    raise PointFormatError(lineno, f"label {label!r} is not an integer")
                raw_labels.append(int(label))
                values = values[:-1]
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise PointFormatError(
                    lineno, f"expected {width} coordinates, found {len(values)}"
                )
            rows.append(values)
    if len(rows) < 2:
        raise ValueError("point file must contain at least two rows")
    points = np.array(rows, dtype=np.float64)
    if not labels_last:
        return points, None
    _, labels = np.unique(np.array(raw_labels), return_inverse=True)
    return points, labels.astype(np.int64)
