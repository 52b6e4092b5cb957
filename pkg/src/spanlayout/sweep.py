"""Parameter sweeps over neighborhood sizes and seeds.

A sweep shares the expensive per-graph work (shortest paths, the
connectivity power sum, clustering) across all runs, then embeds each
(k, seed) combination and scores it.  The SGD kernel releases the GIL,
so runs execute in a thread pool.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .graph import Graph
from .metrics import (
    cluster_distortion,
    greedy_modularity_clusters,
    neighborhood_error,
    normalized_stress,
)
from .optimizer import EmbedParams, embed_prepared, prepare

__all__ = [
    "SweepError",
    "SweepRow",
    "median_by_k",
    "read_sweep_csv",
    "run_sweep",
    "write_sweep_csv",
    "write_sweep_errors_csv",
]

CSV_HEADER = "graph,k,seed,ne,stress,cd,epochs,objective"


@dataclass(frozen=True)
class SweepRow:
    """One scored embedding run."""

    graph: str
    k: int
    seed: int
    ne: float
    stress: float
    cd: Optional[float]
    epochs: int
    objective: float


@dataclass(frozen=True)
class SweepError:
    """A run that failed, with the reason it failed."""

    graph: str
    k: int
    seed: int
    message: str


def run_sweep(
    graphs: Mapping[str, Graph],
    ks: Sequence[int],
    seeds: Sequence[int],
    *,
    c: int = 10,
    s: float = 0.1,
    alpha: float = 0.2,
    max_epochs: int = 60,
    radius: float = 2,
    labels: Optional[Mapping[str, np.ndarray]] = None,
    workers: Optional[int] = None,
    progress=None,
) -> tuple[list[SweepRow], list[SweepError]]:
    """Embed every (graph, k, seed) combination and collect metrics.

    ``labels`` maps graph names to known cluster assignments; graphs
    without an entry are clustered greedily once and the result reused.
    Failed runs are reported in the second list instead of aborting the
    sweep.  Rows come back sorted by (graph, k, seed) regardless of
    completion order.
    """
    if not graphs:
        raise ValueError("no graphs to sweep")
    if not ks or not seeds:
        raise ValueError("ks and seeds must be non-empty")
    prepared: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    cluster_labels: dict[str, np.ndarray] = {}
    for name, g in graphs.items():
        prepared[name] = prepare(g, c=c, s=s)
        if labels is not None and name in labels:
            cluster_labels[name] = np.asarray(labels[name], dtype=np.int64)
        else:
            cluster_labels[name] = greedy_modularity_clusters(g).labels

    tasks = [(name, k, seed) for name in graphs for k in ks for seed in seeds]

    def run_one(name: str, k: int, seed: int) -> SweepRow:
        g = graphs[name]
        d, m = prepared[name]
        p = EmbedParams(
            k=k, c=c, s=s, alpha=alpha, max_epochs=max_epochs, seed=seed
        )
        e = embed_prepared(d, m, p)
        return SweepRow(
            graph=name,
            k=k,
            seed=seed,
            ne=neighborhood_error(e.coords, d, radius=radius),
            stress=normalized_stress(e.coords, d),
            cd=cluster_distortion(e.coords, g, cluster_labels[name]),
            epochs=e.epochs_run,
            objective=e.final_objective,
        )

    if workers is None:
        workers = min(len(tasks), os.cpu_count() or 1)
    rows: list[SweepRow] = []
    errors: list[SweepError] = []
    done = 0
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        futures = {
            pool.submit(run_one, name, k, seed): (name, k, seed)
            for name, k, seed in tasks
        }
        for future in as_completed(futures):
            name, k, seed = futures[future]
            try:
                rows.append(future.result())
            except Exception as exc:
                errors.append(SweepError(name, k, seed, f"{type(exc).__name__}: {exc}"))
            done += 1
            if progress is not None:
                progress(done, len(tasks))
    rows.sort(key=lambda r: (r.graph, r.k, r.seed))
    errors.sort(key=lambda r: (r.graph, r.k, r.seed))
    return rows, errors


def write_sweep_csv(rows: Sequence[SweepRow], path) -> None:
    """Write rows in the fixed column order, full float precision."""
    lines = [CSV_HEADER]
    for r in rows:
        cd = "" if r.cd is None else repr(r.cd)
        lines.append(
            f"{r.graph},{r.k},{r.seed},{r.ne!r},{r.stress!r},{cd},"
            f"{r.epochs},{r.objective!r}"
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def write_sweep_errors_csv(errors: Sequence[SweepError], path) -> None:
    """Sidecar listing for failed runs."""
    lines = ["graph,k,seed,message"]
    for e in errors:
        message = e.message.replace("\n", " ").replace(",", ";")
        lines.append(f"{e.graph},{e.k},{e.seed},{message}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_sweep_csv(path) -> list[SweepRow]:
    """Inverse of :func:`write_sweep_csv`."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected sweep header {header!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            graph, k, seed, ne, stress, cd, epochs, objective = line.split(",")
            rows.append(
                SweepRow(
                    graph=graph,
                    k=int(k),
                    seed=int(seed),
                    ne=float(ne),
                    stress=float(stress),
                    cd=None if cd == "" else float(cd),
                    epochs=int(epochs),
                    objective=float(objective),
                )
            )
    return rows


def median_by_k(rows: Sequence[SweepRow], field: str) -> dict[int, float]:
    """Median of one metric per neighborhood size, pooled over graphs/seeds."""
    buckets: dict[int, list[float]] = {}
    for r in rows:
        value = getattr(r, field)
        if value is None:
            continue
        buckets.setdefault(r.k, []).append(value)
    return {k: float(np.median(v)) for k, v in sorted(buckets.items())}
