"""Embedding quality metrics and greedy modularity clustering.

Three complementary views of layout quality:

* normalized stress: how well embedded distances reproduce graph
  distances after the best uniform rescaling,
* neighborhood error: how well small graph neighborhoods survive as
  nearest-neighbor sets in the plane,
* cluster distortion: how well separation between graph clusters is
  reflected by the distances between their embedded centroids.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.distance import pdist

from .graph import Graph, apsp

__all__ = [
    "ClusterAssignment",
    "MetricReport",
    "cluster_delta_matrix",
    "cluster_distortion",
    "compute_metrics",
    "greedy_modularity_clusters",
    "modularity",
    "neighborhood_error",
    "normalized_stress",
    "optimal_scale",
]


def optimal_scale(target: np.ndarray, actual: np.ndarray) -> float:
    """Scale factor minimizing sum(((target - s*actual) / target)**2).

    Closed form: s = sum(actual/target) / sum(actual**2 / target**2).
    """
    target = np.asarray(target, dtype=np.float64)
    actual = np.asarray(actual, dtype=np.float64)
    if target.shape != actual.shape or target.ndim != 1:
        raise ValueError("target and actual must be 1-d arrays of equal length")
    if np.any(target <= 0):
        raise ValueError("target distances must be positive")
    denom = float(np.sum((actual / target) ** 2))
    if denom == 0.0:
        # all embedded distances zero; any scale gives the same residuals
        return 0.0
    return float(np.sum(actual / target)) / denom


def normalized_stress(x: np.ndarray, d: np.ndarray) -> float:
    """Scale-invariant stress of layout ``x`` against distance matrix ``d``.

    Sum over vertex pairs i < j of ((d_ij - s*e_ij) / d_ij)**2 where e is
    the embedded Euclidean distance and s is the optimal scale.
    """
    x = np.asarray(x, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    n = d.shape[0]
    if d.shape != (n, n):
        raise ValueError("d must be a square distance matrix")
    if x.shape != (n, 2):
        raise ValueError("x must have shape (n, 2) matching d")
    iu, iv = np.triu_indices(n, k=1)
    dc = d[iu, iv]
    if np.any(dc <= 0):
        raise ValueError("off-diagonal graph distances must be positive")
    e = pdist(x)
    s = optimal_scale(dc, e)
    return float(np.sum(((dc - s * e) / dc) ** 2))


def neighborhood_error(x: np.ndarray, d: np.ndarray, radius: float = 2) -> float:
    """Fraction of local structure lost in the layout, in [0, 1].

    For each vertex the graph neighborhood is every other vertex within
    ``radius`` hops (graph distance <= radius).  It is compared, by Jaccard
    similarity, against the equally many nearest vertices in the plane.
    Embedded-distance ties are broken toward the smaller vertex index so
    the result is deterministic.  Returns 1 - mean Jaccard similarity.
    """
    x = np.asarray(x, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    n = d.shape[0]
    if d.shape != (n, n):
        raise ValueError("d must be a square distance matrix")
    if x.shape != (n, 2):
        raise ValueError("x must have shape (n, 2) matching d")
    if radius <= 0:
        raise ValueError("radius must be positive")
    indices = np.arange(n)
    total = 0.0
    for i in range(n):
        ball = np.flatnonzero(d[i] <= radius)
        ball = ball[ball != i]
        if ball.size == 0:
            total += 1.0
            continue
        dx = x[:, 0] - x[i, 0]
        dy = x[:, 1] - x[i, 1]
        dist = np.hypot(dx, dy)
        order = np.lexsort((indices, dist))
        order = order[order != i]
        near = order[: ball.size]
        graph_set = set(ball.tolist())
        near_set = set(near.tolist())
        inter = len(graph_set & near_set)
        union = len(graph_set | near_set)
        total += inter / union
    return 1.0 - total / n


# ---------------------------------------------------------------------------
# clustering


@dataclass(frozen=True)
class ClusterAssignment:
    """A hard partition of the vertices with its modularity score."""

    labels: np.ndarray
    n_clusters: int
    modularity: float

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "labels", labels)
        if labels.ndim != 1:
            raise ValueError("labels must be a 1-d array")
        if self.n_clusters < 1:
            raise ValueError("n_clusters must be at least 1")
        if labels.size and (labels.min() < 0 or labels.max() >= self.n_clusters):
            raise ValueError("labels must lie in [0, n_clusters)")

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.n_clusters)


def modularity(g: Graph, labels: np.ndarray) -> float:
    """Newman modularity of a vertex partition.

    Q = sum over clusters of (L_c / m - (D_c / 2m)**2) with L_c the number
    of intra-cluster edges and D_c the total degree of the cluster.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (g.n,):
        raise ValueError("labels must assign one cluster per vertex")
    if g.m == 0:
        raise ValueError("modularity is undefined for an edgeless graph")
    m = g.m
    deg = g.degrees()
    k = int(labels.max()) + 1
    internal = np.zeros(k)
    for u, v, _ in g.edges:
        if labels[u] == labels[v]:
            internal[labels[u]] += 1.0
    degree_sum = np.zeros(k)
    np.add.at(degree_sum, labels, deg.astype(np.float64))
    return float(np.sum(internal / m - (degree_sum / (2.0 * m)) ** 2))


def greedy_modularity_clusters(g: Graph) -> ClusterAssignment:
    """Agglomerative modularity clustering.

    Starts from singleton clusters and repeatedly merges the pair of
    connected clusters with the largest modularity gain, stopping when no
    merge improves modularity.  Equal gains are resolved toward the
    lexicographically smallest cluster pair, so the result is
    deterministic.  Cluster ids are assigned by each cluster's smallest
    vertex.
    """
    if g.m == 0:
        raise ValueError("clustering is undefined for an edgeless graph")
    n = g.n
    two_m = 2.0 * g.m
    deg = g.degrees()
    # e[i][j]: fraction of edge endpoints joining clusters i and j
    e: list[dict[int, float]] = [dict() for _ in range(n)]
    for u, v, _ in g.edges:
        e[u][v] = e[u].get(v, 0.0) + 1.0 / two_m
        e[v][u] = e[v].get(u, 0.0) + 1.0 / two_m
    a = [deg[i] / two_m for i in range(n)]
    members: dict[int, list[int]] = {i: [i] for i in range(n)}
    active = sorted(members)
    while len(active) > 1:
        best_gain = 0.0
        best_pair: Optional[tuple[int, int]] = None
        for i in active:
            for j in sorted(e[i]):
                if j <= i:
                    continue
                gain = 2.0 * (e[i][j] - a[i] * a[j])
                if gain > best_gain:
                    best_gain = gain
                    best_pair = (i, j)
        if best_pair is None:
            break
        i, j = best_pair
        members[i].extend(members[j])
        del members[j]
        a[i] += a[j]
        for x, w in e[j].items():
            if x == i:
                continue
            e[i][x] = e[i].get(x, 0.0) + w
            e[x][i] = e[i][x]
            del e[x][j]
        e[i].pop(j, None)
        e[j].clear()
        active.remove(j)
    labels = np.empty(n, dtype=np.int64)
    for cluster_id, key in enumerate(sorted(members)):
        labels[members[key]] = cluster_id
    return ClusterAssignment(labels, len(members), modularity(g, labels))


def cluster_delta_matrix(g: Graph, labels: np.ndarray) -> np.ndarray:
    """Pairwise cluster separation: delta_ij = 1 - cross_edges(i, j) / m.

    A pair with no connecting edges gets the maximal separation 1; a pair
    joined by every edge of the graph gets 0.  The diagonal is zero.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (g.n,):
        raise ValueError("labels must assign one cluster per vertex")
    if g.m == 0:
        raise ValueError("cluster separation is undefined for an edgeless graph")
    k = int(labels.max()) + 1
    cross = np.zeros((k, k))
    for u, v, _ in g.edges:
        cu, cv = labels[u], labels[v]
        if cu != cv:
            cross[cu, cv] += 1.0
            cross[cv, cu] += 1.0
    delta = 1.0 - cross / g.m
    np.fill_diagonal(delta, 0.0)
    return delta


def cluster_distortion(x: np.ndarray, g: Graph, labels: np.ndarray) -> float:
    """Stress between cluster separations and embedded centroid distances.

    Cluster centroids play the role of vertices and the separation values
    from :func:`cluster_delta_matrix` play the role of graph distances;
    the optimal uniform scale is applied before summing squared relative
    residuals.  Pairs with non-positive separation carry no distance
    information and are skipped with a warning.  With fewer than two
    usable pairs the distortion is 0.
    """
    x = np.asarray(x, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if x.shape != (g.n, 2):
        raise ValueError("x must have shape (n, 2)")
    delta = cluster_delta_matrix(g, labels)
    k = delta.shape[0]
    if k < 2:
        return 0.0
    centers = np.zeros((k, 2))
    counts = np.bincount(labels, minlength=k).astype(np.float64)
    np.add.at(centers, labels, x)
    centers /= counts[:, None]
    iu, iv = np.triu_indices(k, k=1)
    dsel = delta[iu, iv]
    keep = dsel > 0
    if not np.all(keep):
        warnings.warn(
            "skipping cluster pairs with non-positive separation", stacklevel=2
        )
    if not np.any(keep):
        return 0.0
    dsel = dsel[keep]
    esel = np.hypot(
        centers[iu[keep], 0] - centers[iv[keep], 0],
        centers[iu[keep], 1] - centers[iv[keep], 1],
    )
    s = optimal_scale(dsel, esel)
    return float(np.sum(((dsel - s * esel) / dsel) ** 2))


# ---------------------------------------------------------------------------
# combined report


@dataclass(frozen=True)
class MetricReport:
    """All layout metrics for one embedding."""

    neighborhood_error: float
    stress: float
    cluster_distortion: Optional[float]
    n_clusters: Optional[int]
    radius: float

    def to_json_dict(self) -> dict:
        return {
            "neighborhood_error": self.neighborhood_error,
            "stress": self.stress,
            "cluster_distortion": self.cluster_distortion,
            "n_clusters": self.n_clusters,
            "radius": self.radius,
        }


def compute_metrics(
    g: Graph,
    x: np.ndarray,
    *,
    radius: float = 2,
    labels: Optional[np.ndarray] = None,
    cluster: bool = True,
    d: Optional[np.ndarray] = None,
) -> MetricReport:
    """Evaluate a layout of ``g``.

    ``labels`` supplies a known partition for the cluster distortion;
    without it one is computed by :func:`greedy_modularity_clusters`.
    Pass ``cluster=False`` to skip the cluster metric entirely.  ``d``
    accepts a precomputed all-pairs distance matrix.
    """
    if d is None:
        d = apsp(g)
    ne = neighborhood_error(x, d, radius=radius)
    stress = normalized_stress(x, d)
    cd: Optional[float] = None
    n_clusters: Optional[int] = None
    if cluster:
        if labels is None:
            assignment = greedy_modularity_clusters(g)
            labels = assignment.labels
            n_clusters = assignment.n_clusters
        else:
            labels = np.asarray(labels, dtype=np.int64)
            n_clusters = int(labels.max()) + 1
        cd = cluster_distortion(x, g, labels)
    return MetricReport(ne, stress, cd, n_clusters, float(radius))
