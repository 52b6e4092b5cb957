"""Graph container, file ingestion, shortest paths, and synthetic generators.

Graphs are simple and undirected.  Edges are stored once with endpoints
ordered (u < v) and carry a positive weight, 1.0 for unweighted input.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

__all__ = [
    "Graph",
    "GraphFormatError",
    "DisconnectedGraphError",
    "load_graph",
    "loads_graph",
    "save_graph",
    "largest_component",
    "apsp",
    "generate_sbm_lattice",
    "generate_watts_strogatz",
    "watts_strogatz_edges",
]


class GraphFormatError(ValueError):
    """Raised when a graph file cannot be parsed.  Carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DisconnectedGraphError(ValueError):
    """Raised when an operation requires a connected graph.

    Carries two witness components whose mutual distance is infinite.
    """

    def __init__(self, component_a: list[int], component_b: list[int]):
        self.component_a = component_a
        self.component_b = component_b
        super().__init__(
            "graph is disconnected: no path joins "
            f"component {_abbrev(component_a)} and component {_abbrev(component_b)}"
        )


def _abbrev(vertices: list[int], limit: int = 8) -> str:
    shown = ", ".join(str(v) for v in vertices[:limit])
    if len(vertices) > limit:
        shown += f", ... ({len(vertices)} vertices)"
    return "{" + shown + "}"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    Parameters
    ----------
    n : int
        Vertex count, >= 1.  Vertices are the integers [0, n).
    edges : tuple of (u, v, w)
        Each undirected edge exactly once with u < v and weight w > 0.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be >= 1, got {self.n}")
        seen = set()
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                raise ValueError(f"edge ({u},{v}) not stored with u < v")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            if not w > 0:
                raise ValueError(f"edge ({u},{v}) has non-positive weight {w}")
            seen.add((u, v))

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        """Build a Graph from an iterable of (u, v) or (u, v, w), canonicalizing
        endpoint order and sorting; duplicates are an error."""
        canon = []
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = 1.0
            else:
                u, v, w = e
            if u > v:
                u, v = v, u
            canon.append((int(u), int(v), float(w)))
        canon.sort()
        return Graph(n=n, edges=tuple(canon))

    @property
    def m(self) -> int:
        """Edge count."""
        return len(self.edges)

    @property
    def weighted(self) -> bool:
        return any(w != 1.0 for _, _, w in self.edges)

    def adjacency(self) -> np.ndarray:
        """Dense symmetric weighted adjacency matrix."""
        a = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            a[u, v] = w
            a[v, u] = w
        return a

    def sparse_adjacency(self) -> csr_matrix:
        if not self.edges:
            return csr_matrix((self.n, self.n))
        us = np.fromiter((e[0] for e in self.edges), dtype=np.int64, count=self.m)
        vs = np.fromiter((e[1] for e in self.edges), dtype=np.int64, count=self.m)
        ws = np.fromiter((e[2] for e in self.edges), dtype=np.float64, count=self.m)
        rows = np.concatenate([us, vs])
        cols = np.concatenate([vs, us])
        data = np.concatenate([ws, ws])
        return csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


# ---------------------------------------------------------------------------
# file ingestion

def load_graph(path: str | Path, format: str = "auto", weighted: bool = False) -> Graph:
    """Load a graph from an edge-list or Matrix Market coordinate file.

    Parameters
    ----------
    path : file path
    format : {"auto", "edge-list", "matrix-market"}
        "auto" sniffs the Matrix Market banner, otherwise assumes edge list.
    weighted : bool
        Keep Matrix Market numeric values as edge weights.  Pattern files and
        the default discard values.  Edge-list weight columns are always kept.

    Self-loops and duplicate edges in the file are dropped.  Edge-list vertex
    labels may be arbitrary integers and are remapped to contiguous [0, n).
    """
    text = Path(path).read_text()
    return loads_graph(text, format=format, weighted=weighted)


def loads_graph(text: str, format: str = "auto", weighted: bool = False) -> Graph:
    """Parse graph file content from a string.  See load_graph."""
    if format == "auto":
        stripped = text.lstrip()
        format = "matrix-market" if stripped.startswith("%%MatrixMarket") else "edge-list"
    if format == "edge-list":
        return _parse_edge_list(text)
    if format == "matrix-market":
        return _parse_matrix_market(text, weighted=weighted)
    raise ValueError(f"unknown graph format {format!r}")


def _parse_edge_list(text: str) -> Graph:
    edges: dict[tuple[int, int], float] = {}
    labels: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphFormatError(
                f"expected 'u v' or 'u v w', got {len(parts)} fields", line=lineno
            )
        try:
            u = int(parts[0])
            v = int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex label in {line!r}", line=lineno)
        w = 1.0
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise GraphFormatError(f"non-numeric weight {parts[2]!r}", line=lineno)
            if not w > 0:
                raise GraphFormatError(f"non-positive weight {w}", line=lineno)
        if u == v:
            continue
        labels.add(u)
        labels.add(v)
        key = (min(u, v), max(u, v))
        edges.setdefault(key, w)
    if not edges:
        raise GraphFormatError("empty graph: no edges found")
    remap = {lab: i for i, lab in enumerate(sorted(labels))}
    return Graph.from_edges(
        len(remap), [(remap[u], remap[v], w) for (u, v), w in edges.items()]
    )


def _parse_matrix_market(text: str, weighted: bool = False) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError("empty file")
    header = lines[0].split()
    # banner: %%MatrixMarket matrix coordinate <field> <symmetry>
    if (
        len(header) != 5
        or header[0] != "%%MatrixMarket"
        or header[1].lower() != "matrix"
        or header[2].lower() != "coordinate"
    ):
        raise GraphFormatError(f"malformed Matrix Market header {lines[0]!r}", line=1)
    field = header[3].lower()
    symmetry = header[4].lower()
    if field not in ("pattern", "real", "integer"):
        raise GraphFormatError(f"unsupported field type {field!r}", line=1)
    if symmetry not in ("general", "symmetric"):
        raise GraphFormatError(f"unsupported symmetry {symmetry!r}", line=1)
    has_value = field != "pattern"

    dims = None
    edges: dict[tuple[int, int], float] = {}
    n = 0
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        parts = line.split()
        if dims is None:
            if len(parts) != 3:
                raise GraphFormatError("expected 'rows cols nnz' size line", line=lineno)
            try:
                rows, cols, _nnz = (int(p) for p in parts)
            except ValueError:
                raise GraphFormatError(f"non-integer size entry in {line!r}", line=lineno)
            if rows < 1 or cols < 1:
                raise GraphFormatError("matrix dimensions must be positive", line=lineno)
            dims = (rows, cols)
            n = max(rows, cols)
            continue
        want = 3 if has_value else 2
        if len(parts) < want:
            raise GraphFormatError(
                f"expected {want} fields per entry, got {len(parts)}", line=lineno
            )
        try:
            i = int(parts[0])
            j = int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer index in {line!r}", line=lineno)
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphFormatError(f"index ({i},{j}) outside 1..{n}", line=lineno)
        w = 1.0
        if has_value and weighted:
            try:
                w = float(parts[2])
            except ValueError:
                raise GraphFormatError(f"non-numeric value {parts[2]!r}", line=lineno)
            if not w > 0:
                raise GraphFormatError(f"non-positive weight {w}", line=lineno)
        if i == j:
            continue
        u, v = i - 1, j - 1
        key = (min(u, v), max(u, v))
        edges.setdefault(key, w)
    if dims is None:
        raise GraphFormatError("missing size line")
    if not edges:
        raise GraphFormatError("empty graph: no off-diagonal entries")
    return Graph.from_edges(n, [(u, v, w) for (u, v), w in edges.items()])


def save_graph(g: Graph, path: str | Path) -> None:
    """Write the canonical save format: a sorted edge list, one 'u v' (or
    'u v w' when weighted) per line."""
    Path(path).write_text(graph_to_text(g))


def graph_to_text(g: Graph) -> str:
    lines = []
    weighted = g.weighted
    for u, v, w in sorted(g.edges):
        if weighted:
            lines.append(f"{u} {v} {w!r}")
        else:
            lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# connectivity preprocessing

def _component_labels(g: Graph) -> tuple[int, np.ndarray]:
    ncomp, labels = connected_components(g.sparse_adjacency(), directed=False)
    return ncomp, labels


def largest_component(g: Graph) -> Graph:
    """Induced subgraph on the largest connected component, vertices relabeled
    to [0, n') preserving their original order.  Size ties go to the component
    containing the smallest original vertex index."""
    ncomp, labels = _component_labels(g)
    if ncomp == 1:
        return g
    sizes = np.bincount(labels, minlength=ncomp)
    best = max(range(ncomp), key=lambda c: (sizes[c], -int(np.min(np.where(labels == c)[0]))))
    keep = np.where(labels == best)[0]
    remap = {int(old): new for new, old in enumerate(keep)}
    edges = [
        (remap[u], remap[v], w)
        for u, v, w in g.edges
        if u in remap and v in remap
    ]
    return Graph.from_edges(len(keep), edges)


def apsp(g: Graph) -> np.ndarray:
    """All-pairs shortest-path distances as a dense float matrix.

    Unweighted graphs run one BFS per source, weighted graphs one Dijkstra
    per source (scipy's csgraph routines).  Raises DisconnectedGraphError
    with two witness components if any distance is infinite.
    """
    ncomp, labels = _component_labels(g)
    if ncomp > 1:
        comp_a = [int(v) for v in np.where(labels == labels[0])[0]]
        other = int(np.where(labels != labels[0])[0][0])
        comp_b = [int(v) for v in np.where(labels == labels[other])[0]]
        raise DisconnectedGraphError(comp_a, comp_b)
    adj = g.sparse_adjacency()
    d = shortest_path(adj, method="D", directed=False, unweighted=not g.weighted)
    return np.asarray(d, dtype=np.float64)


# ---------------------------------------------------------------------------
# synthetic generators

def generate_sbm_lattice(
    rows: int,
    cols: int,
    cluster_size: int,
    p_in: float,
    p_adj: float,
    p_far: float,
    seed: int,
) -> tuple[Graph, np.ndarray]:
    """Stochastic block model whose clusters sit on a rows x cols lattice.

    Within-cluster pairs are sampled with probability p_in, pairs between
    lattice-adjacent clusters (4-neighborhood, no diagonals) with p_adj, and
    all other cross-cluster pairs with p_far.  Returns the graph and the
    ground-truth per-vertex cluster ids.  Deterministic given seed: blocks
    are sampled in a fixed order (within-cluster blocks for cluster 0..m-1,
    then cross blocks in lexicographic (ci, cj) order) from one generator.
    """
    if rows < 1 or cols < 1 or cluster_size < 1:
        raise ValueError("rows, cols, cluster_size must all be >= 1")
    for name, p in (("p_in", p_in), ("p_adj", p_adj), ("p_far", p_far)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} must be in [0,1], got {p}")
    m = rows * cols
    n = m * cluster_size
    rng = np.random.default_rng(seed)
    labels = np.repeat(np.arange(m), cluster_size)

    us: list[np.ndarray] = []
    vs: list[np.ndarray] = []

    iu, iv = np.triu_indices(cluster_size, k=1)
    for ci in range(m):
        base = ci * cluster_size
        mask = rng.random(iu.shape[0]) < p_in
        us.append(base + iu[mask])
        vs.append(base + iv[mask])

    def lattice_adjacent(ci: int, cj: int) -> bool:
        ri, qi = divmod(ci, cols)
        rj, qj = divmod(cj, cols)
        return abs(ri - rj) + abs(qi - qj) == 1

    left = np.repeat(np.arange(cluster_size), cluster_size)
    right = np.tile(np.arange(cluster_size), cluster_size)
    for ci in range(m):
        for cj in range(ci + 1, m):
            p = p_adj if lattice_adjacent(ci, cj) else p_far
            mask = rng.random(cluster_size * cluster_size) < p
            us.append(ci * cluster_size + left[mask])
            vs.append(cj * cluster_size + right[mask])

    all_u = np.concatenate(us)
    all_v = np.concatenate(vs)
    edges = [(int(u), int(v)) for u, v in zip(all_u, all_v)]
    return Graph.from_edges(n, edges), labels


def watts_strogatz_edges(n: int, ring_degree: int, rewire_p: float, seed: int) -> list[tuple[int, int]]:
    """Edge list of the ring-rewire model before component extraction.

    Draw order (the reproducibility contract): ring edges are visited
    step-major, i.e. (i, i+1) for i = 0..n-1, then (i, i+2), and so on up to
    step ring_degree/2.  For each edge one uniform [0,1) variate decides
    rewiring; a rewired edge keeps endpoint i and redraws the other endpoint
    uniformly from [0, n) until it is neither i nor an existing neighbor of i.
    An edge whose source is already adjacent to every other vertex is kept.
    Edge count is always n * ring_degree / 2.
    """
    if ring_degree % 2 != 0:
        raise ValueError(f"ring_degree must be even, got {ring_degree}")
    if not 1 <= ring_degree < n:
        raise ValueError(f"ring_degree must be in [1, n), got {ring_degree} for n={n}")
    if not 0.0 <= rewire_p <= 1.0:
        raise ValueError(f"rewire_p must be in [0,1], got {rewire_p}")
    rng = np.random.default_rng(seed)
    adj: list[set[int]] = [set() for _ in range(n)]
    for step in range(1, ring_degree // 2 + 1):
        for i in range(n):
            j = (i + step) % n
            adj[i].add(j)
            adj[j].add(i)
    # ring_degree < n keeps every step below n/2, so each undirected ring edge
    # is visited exactly once here
    for step in range(1, ring_degree // 2 + 1):
        for i in range(n):
            j = (i + step) % n
            if rng.random() >= rewire_p:
                continue
            if len(adj[i]) >= n - 1:
                continue
            while True:
                cand = int(rng.integers(n))
                if cand != i and cand not in adj[i]:
                    break
            adj[i].discard(j)
            adj[j].discard(i)
            adj[i].add(cand)
            adj[cand].add(i)
    return sorted(_key(u, v) for u in range(n) for v in adj[u] if u < v)


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def generate_watts_strogatz(n: int, ring_degree: int, rewire_p: float, seed: int) -> Graph:
    """Ring-rewire small-world generator, post-processed to its largest
    connected component.  Deterministic given seed."""
    edges = watts_strogatz_edges(n, ring_degree, rewire_p, seed)
    return largest_component(Graph.from_edges(n, edges))
