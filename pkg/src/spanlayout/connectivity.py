"""Walk-count similarity and neighborhood selection.

The similarity matrix sums decay-weighted adjacency powers: entry (i,j) of
sum_{i=1..c} s^i A^i counts walks of length up to c between the vertices,
shorter walks weighted more heavily for s < 1.  Each vertex's k most
connected peers under that score form its neighborhood; pairs selected by
either endpoint become the attractive set, all remaining pairs the
repulsive set.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .graph import Graph

__all__ = [
    "DEFAULT_WALK_CAP",
    "DEFAULT_DECAY",
    "DENSE_VERTEX_CAP",
    "NeighborhoodPairs",
    "power_sum",
    "connectivity_matrix",
    "connectivity_matrix_spectral",
    "select_neighborhoods",
    "pair_arrays",
    "condensed_index",
    "dump_connectivity_csv",
]

DEFAULT_WALK_CAP = 10
DEFAULT_DECAY = 0.1
DENSE_VERTEX_CAP = 20_000


# ---------------------------------------------------------------------------
# canonical pair order: all unordered pairs (i, j), i < j, row-major; matches
# scipy's condensed distance-vector layout

def pair_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Endpoint arrays of every unordered pair in condensed order."""
    iu, iv = np.triu_indices(n, k=1)
    return iu.astype(np.int32), iv.astype(np.int32)


def condensed_index(u, v, n: int):
    """Condensed position of pair (u, v), u < v elementwise."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    return n * u - u * (u + 1) // 2 + (v - u - 1)


# ---------------------------------------------------------------------------
# similarity matrices

def _validate(c: int, s: float) -> None:
    if c < 1:
        raise ValueError(f"walk cap must be >= 1, got {c}")
    if not 0.0 < s <= 1.0:
        raise ValueError(f"decay must be in (0, 1], got {s}")


def power_sum(a: np.ndarray, c: int, s: float) -> np.ndarray:
    """sum_{i=1..c} s^i a^i by iterated multiplication.  Diagonal untouched."""
    _validate(c, s)
    a = np.asarray(a, dtype=np.float64)
    power = a
    acc = s * a
    for i in range(2, c + 1):
        power = power @ a
        acc = acc + (s ** i) * power
    return acc


def connectivity_matrix(
    g: Graph, c: int = DEFAULT_WALK_CAP, s: float = DEFAULT_DECAY,
    max_n: int = DENSE_VERTEX_CAP,
) -> np.ndarray:
    """Walk-count similarity by iterated dense multiplication, diagonal zeroed."""
    if g.n > max_n:
        raise ValueError(
            f"graph has {g.n} vertices, above the dense-matrix cap of {max_n}"
        )
    m = power_sum(g.adjacency(), c, s)
    np.fill_diagonal(m, 0.0)
    return m


def connectivity_matrix_spectral(
    g: Graph, c: int = DEFAULT_WALK_CAP, s: float = DEFAULT_DECAY,
    max_n: int = DENSE_VERTEX_CAP,
) -> np.ndarray:
    """Same similarity through one symmetric eigendecomposition.

    With A = Q diag(lam) Q^T, every power shares the eigvectors, so the sum
    collapses to Q diag(sum s^i lam^i) Q^T.  Raises np.linalg.LinAlgError on
    non-convergence; callers fall back to connectivity_matrix.
    """
    if g.n > max_n:
        raise ValueError(
            f"graph has {g.n} vertices, above the dense-matrix cap of {max_n}"
        )
    _validate(c, s)
    lam, q = np.linalg.eigh(g.adjacency())
    lam_power = lam.copy()
    weights = s * lam
    for i in range(2, c + 1):
        lam_power = lam_power * lam
        weights = weights + (s ** i) * lam_power
    m = (q * weights) @ q.T
    m = (m + m.T) / 2.0  # dot-product rounding can leave ~1e-16 asymmetry
    np.fill_diagonal(m, 0.0)
    return m


# ---------------------------------------------------------------------------
# neighborhood selection

@dataclass(frozen=True)
class NeighborhoodPairs:
    """Partition of all unordered vertex pairs into attract and repel sets.

    attract_mask is a boolean vector over the condensed pair order; a pair is
    attractive iff either endpoint ranks the other among its top k.
    neighborhoods[v] lists v's selected peers in rank order.
    """

    n: int
    k: int
    neighborhoods: tuple[np.ndarray, ...]
    attract_mask: np.ndarray = field(repr=False)

    @property
    def pair_count(self) -> int:
        return self.n * (self.n - 1) // 2

    def attract_pairs(self) -> np.ndarray:
        """(m, 2) array of attractive pairs, condensed order."""
        iu, iv = pair_arrays(self.n)
        return np.column_stack([iu[self.attract_mask], iv[self.attract_mask]])

    def repel_pairs(self) -> np.ndarray:
        iu, iv = pair_arrays(self.n)
        keep = ~self.attract_mask
        return np.column_stack([iu[keep], iv[keep]])


def select_neighborhoods(m: np.ndarray, k: int) -> NeighborhoodPairs:
    """Top-k peers per row of a similarity matrix, ties to the smaller index.

    The diagonal is ignored (the similarity constructors zero it, and a
    vertex never selects itself).
    """
    m = np.asarray(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"similarity matrix must be square, got {m.shape}")
    if not 1 <= k <= n - 1:
        raise ValueError(f"neighborhood size must be in [1, n-1], got k={k} for n={n}")
    idx = np.arange(n)
    neighborhoods = []
    mask = np.zeros(n * (n - 1) // 2, dtype=bool)
    for i in range(n):
        order = np.lexsort((idx, -m[i]))
        order = order[order != i]
        chosen = order[:k]
        neighborhoods.append(chosen.astype(np.int32))
        u = np.minimum(i, chosen)
        v = np.maximum(i, chosen)
        mask[condensed_index(u, v, n)] = True
    return NeighborhoodPairs(
        n=n, k=k, neighborhoods=tuple(neighborhoods), attract_mask=mask
    )


def dump_connectivity_csv(
    m: np.ndarray, pairs: NeighborhoodPairs, directory: str | Path
) -> None:
    """Debug dump: similarity matrix and per-vertex neighborhoods as CSV."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    np.savetxt(directory / "similarity.csv", m, delimiter=",")
    with open(directory / "neighborhoods.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["vertex", "rank", "neighbor", "score"])
        for v, nbrs in enumerate(pairs.neighborhoods):
            for rank, u in enumerate(nbrs):
                writer.writerow([v, rank, int(u), repr(float(m[v, u]))])
