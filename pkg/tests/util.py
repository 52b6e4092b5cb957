"""Shared test helpers: graph samplers and small reference routines."""
import heapq

import numpy as np

from spanlayout.graph import Graph


def random_gnp(n: int, p: float, rng) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_connected_gnp(n: int, p: float, rng) -> Graph:
    from spanlayout.graph import apsp, DisconnectedGraphError

    while True:
        g = random_gnp(n, p, rng)
        try:
            apsp(g)
        except DisconnectedGraphError:
            continue
        return g


def random_tree(n: int, rng) -> set[tuple[int, int]]:
    """Uniform random labeled tree via a Pruefer sequence."""
    if n == 1:
        return set()
    if n == 2:
        return {(0, 1)}
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    deg = [1] * n
    for x in seq:
        deg[x] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    edges = set()
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.add((min(leaf, x), max(leaf, x)))
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.add((min(u, v), max(u, v)))
    return edges


def random_sparse_connected(n: int, avg_degree: float, rng) -> Graph:
    """Random spanning tree plus uniform chords up to the target mean degree.

    Connected by construction; low spectral radius, which keeps high matrix
    powers within float64 range for absolute-tolerance comparisons.
    """
    edges = random_tree(n, rng)
    extra = max(0, int(round(avg_degree * n / 2)) - len(edges))
    for _ in range(extra):
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(edges))


def grid_graph(rows: int, cols: int) -> Graph:
    """Axis-aligned lattice with unit edges."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def all_partitions(n: int):
    """Every partition of range(n) as a label vector, via growth strings.

    A restricted growth string satisfies a[0] = 0 and
    a[i] <= 1 + max(a[:i]), which enumerates set partitions exactly once.
    """
    if n == 0:
        yield []
        return
    labels = [0] * n
    def rec(i: int, top: int):
        if i == n:
            yield list(labels)
            return
        for v in range(top + 2):
            labels[i] = v
            yield from rec(i + 1, max(top, v))
    yield from rec(1, 0)


def adjusted_rand_index(a, b) -> float:
    """Pair-counting ARI between two label vectors."""
    a = np.asarray(a)
    b = np.asarray(b)
    n = a.size
    contingency = {}
    for x, y in zip(a.tolist(), b.tolist()):
        contingency[(x, y)] = contingency.get((x, y), 0) + 1
    def comb2(k):
        return k * (k - 1) // 2
    sum_ij = sum(comb2(c) for c in contingency.values())
    row = {}
    col = {}
    for (x, y), c in contingency.items():
        row[x] = row.get(x, 0) + c
        col[y] = col.get(y, 0) + c
    sum_a = sum(comb2(c) for c in row.values())
    sum_b = sum(comb2(c) for c in col.values())
    total = comb2(n)
    expected = sum_a * sum_b / total
    maximum = (sum_a + sum_b) / 2
    if maximum == expected:
        return 1.0
    return (sum_ij - expected) / (maximum - expected)
