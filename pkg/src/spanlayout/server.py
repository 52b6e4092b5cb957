"""HTTP API around the embedding pipeline.

Graphs are uploaded once and referenced by a content hash, so the same
graph text always maps to the same id.  Embedding jobs are likewise
content-addressed over (graph id, parameters): resubmitting identical
work returns the existing job unless the caller opts out of the cache,
which forces a fresh run whose payload must come out identical anyway.
Jobs run on a fixed pool of worker threads fed from a FIFO queue; the
SGD kernel releases the GIL, so workers overlap usefully.
"""

from __future__ import annotations

import hashlib
import json
import queue
import threading
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .graph import (
    DisconnectedGraphError,
    Graph,
    GraphFormatError,
    apsp,
    graph_to_text,
    loads_graph,
)
from .metrics import (
    cluster_distortion,
    greedy_modularity_clusters,
    neighborhood_error,
    normalized_stress,
)
from .optimizer import EmbedParams, embed_prepared, prepare
from .render import render_svg

__all__ = ["MAX_GRAPH_BYTES", "create_app"]

MAX_GRAPH_BYTES = 5_000_000


class GraphUpload(BaseModel):
    text: str
    format: str = "auto"
    weighted: bool = False


class JobRequest(BaseModel):
    k: int
    c: int = 10
    s: float = 0.1
    alpha: float = 0.2
    max_epochs: int = 60
    move_tol: float = 1e-7
    seed: int = 0
    radius: float = 2.0
    use_cache: bool = True


@dataclass
class _Job:
    id: str
    graph_id: str
    params: EmbedParams
    radius: float
    status: str = "queued"
    epoch: int = 0
    result: Optional[dict] = None
    error: Optional[str] = None


@dataclass
class _State:
    lock: threading.Lock = field(default_factory=threading.Lock)
    graphs: dict[str, Graph] = field(default_factory=dict)
    distances: dict[str, np.ndarray] = field(default_factory=dict)
    prepared: dict[tuple[str, int, float], tuple[np.ndarray, np.ndarray]] = field(
        default_factory=dict
    )
    clusters: dict[str, np.ndarray] = field(default_factory=dict)
    jobs: dict[str, _Job] = field(default_factory=dict)
    todo: "queue.Queue[str]" = field(default_factory=queue.Queue)


def _graph_id(g: Graph) -> str:
    return hashlib.sha256(graph_to_text(g).encode("utf-8")).hexdigest()[:16]


def _job_id(graph_id: str, params: EmbedParams, radius: float) -> str:
    payload = json.dumps(
        {"graph": graph_id, "params": params.to_dict(), "radius": radius},
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def _distances(state: _State, graph_id: str) -> np.ndarray:
    with state.lock:
        cached = state.distances.get(graph_id)
    if cached is not None:
        return cached
    d = apsp(state.graphs[graph_id])
    with state.lock:
        state.distances[graph_id] = d
    return d


def _prepared(state: _State, graph_id: str, c: int, s: float):
    key = (graph_id, c, s)
    with state.lock:
        cached = state.prepared.get(key)
    if cached is not None:
        return cached
    pair = prepare(state.graphs[graph_id], c=c, s=s)
    with state.lock:
        state.prepared[key] = pair
        state.distances.setdefault(graph_id, pair[0])
    return pair


def _cluster_labels(state: _State, graph_id: str) -> np.ndarray:
    with state.lock:
        cached = state.clusters.get(graph_id)
    if cached is not None:
        return cached
    labels = greedy_modularity_clusters(state.graphs[graph_id]).labels
    with state.lock:
        state.clusters[graph_id] = labels
    return labels


def _run_job(state: _State, job: _Job) -> None:
    g = state.graphs[job.graph_id]
    d, m = _prepared(state, job.graph_id, job.params.c, job.params.s)

    def progress(done: int, total: int) -> None:
        job.epoch = done

    e = embed_prepared(d, m, job.params, progress=progress)
    labels = _cluster_labels(state, job.graph_id)
    metrics = {
        "neighborhood_error": neighborhood_error(e.coords, d, radius=job.radius),
        "stress": normalized_stress(e.coords, d),
        "cluster_distortion": cluster_distortion(e.coords, g, labels),
        "n_clusters": int(labels.max()) + 1,
        "radius": job.radius,
    }
    result = e.to_json_dict()
    result["metrics"] = metrics
    with state.lock:
        job.result = result
        job.status = "done"


def _worker(state: _State) -> None:
    while True:
        job_id = state.todo.get()
        with state.lock:
            job = state.jobs.get(job_id)
            if job is None or job.status != "queued":
                state.todo.task_done()
                continue
            job.status = "running"
        try:
            _run_job(state, job)
        except Exception as exc:
            with state.lock:
                job.status = "failed"
                job.error = f"{type(exc).__name__}: {exc}"
        finally:
            state.todo.task_done()


def _job_payload(job: _Job) -> dict:
    return {
        "id": job.id,
        "graph_id": job.graph_id,
        "status": job.status,
        "progress": {"epoch": job.epoch, "max_epochs": job.params.max_epochs},
        "params": job.params.to_dict(),
        "radius": job.radius,
        "result": job.result,
        "error": job.error,
    }


def create_app(workers: int = 2) -> FastAPI:
    """Build the API application with its own isolated state and workers."""
    if workers < 1:
        raise ValueError("workers must be at least 1")
    state = _State()
    app = FastAPI(title="spanlayout")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    for _ in range(workers):
        threading.Thread(target=_worker, args=(state,), daemon=True).start()

    @app.post("/graphs", status_code=201)
    def upload_graph(upload: GraphUpload):
        if len(upload.text.encode("utf-8")) > MAX_GRAPH_BYTES:
            raise HTTPException(413, "graph text exceeds the size cap")
        try:
            g = loads_graph(upload.text, format=upload.format,
                            weighted=upload.weighted)
        except GraphFormatError as exc:
            raise HTTPException(400, str(exc))
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        try:
            _graph_connected_check(g)
        except DisconnectedGraphError as exc:
            raise HTTPException(400, f"graph is disconnected: {exc}")
        gid = _graph_id(g)
        with state.lock:
            state.graphs.setdefault(gid, g)
        return {"id": gid, "n": g.n, "m": g.m}

    def _graph_connected_check(g: Graph) -> None:
        from scipy.sparse.csgraph import connected_components

        count, _ = connected_components(g.sparse_adjacency(), directed=False)
        if count != 1:
            # reuse the detailed witness message from the distance path
            apsp(g)

    @app.get("/graphs/{graph_id}")
    def graph_info(graph_id: str):
        with state.lock:
            g = state.graphs.get(graph_id)
        if g is None:
            raise HTTPException(404, "unknown graph")
        d = _distances(state, graph_id)
        return {
            "id": graph_id,
            "n": g.n,
            "m": g.m,
            "diameter": float(d.max()),
        }

    @app.post("/graphs/{graph_id}/jobs", status_code=202)
    def submit_job(graph_id: str, request: JobRequest):
        with state.lock:
            g = state.graphs.get(graph_id)
        if g is None:
            raise HTTPException(404, "unknown graph")
        if request.k >= g.n:
            raise HTTPException(
                422, f"k must be below the vertex count {g.n}"
            )
        try:
            params = EmbedParams(
                k=request.k, c=request.c, s=request.s, alpha=request.alpha,
                max_epochs=request.max_epochs, move_tol=request.move_tol,
                seed=request.seed,
            )
        except ValueError as exc:
            raise HTTPException(422, str(exc))
        if request.radius <= 0:
            raise HTTPException(422, "radius must be positive")
        job_id = _job_id(graph_id, params, request.radius)
        with state.lock:
            job = state.jobs.get(job_id)
            if job is not None and request.use_cache:
                return {"job_id": job_id, "status": job.status}
            if job is not None and job.status == "running":
                # let the in-flight run finish; its output is identical
                return {"job_id": job_id, "status": job.status}
            job = _Job(id=job_id, graph_id=graph_id, params=params,
                       radius=request.radius)
            state.jobs[job_id] = job
        state.todo.put(job_id)
        return {"job_id": job_id, "status": "queued"}

    @app.get("/jobs/{job_id}")
    def job_info(job_id: str):
        with state.lock:
            job = state.jobs.get(job_id)
            if job is None:
                raise HTTPException(404, "unknown job")
            return _job_payload(job)

    @app.get("/jobs/{job_id}/svg")
    def job_svg(job_id: str):
        with state.lock:
            job = state.jobs.get(job_id)
            if job is None:
                raise HTTPException(404, "unknown job")
            if job.status != "done":
                raise HTTPException(409, f"job is {job.status}, not done")
            g = state.graphs[job.graph_id]
            coords = np.array(job.result["coordinates"])
        d = _distances(state, job.graph_id)
        svg = render_svg(g, coords, d)
        return Response(content=svg, media_type="image/svg+xml")

    return app
