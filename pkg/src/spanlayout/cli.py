"""Command line interface.

Subcommands cover the full pipeline: generate benchmark graphs, embed a
graph (or a point set), score a layout, render it to SVG, sweep the
neighborhood size, and serve the HTTP API.  Shared tuning flags can also
come from a TOML config file; explicit flags win over the file.  When
``--out`` is omitted, files land in the directory named by the
SPANLAYOUT_OUT environment variable (default: the working directory).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .graph import (
    DisconnectedGraphError,
    GraphFormatError,
    generate_sbm_lattice,
    generate_watts_strogatz,
    load_graph,
    save_graph,
)
from .highdim import embed_points, load_points, point_cluster_distortion, point_distance_matrix
from .metrics import compute_metrics, neighborhood_error, normalized_stress
from .optimizer import EmbedParams, embed, load_coords_csv
from .render import render_svg
from .sweep import median_by_k, run_sweep, write_sweep_csv, write_sweep_errors_csv

__all__ = ["main"]

_CONFIG_KEYS = {
    "k", "c", "s", "alpha", "max_epochs", "move_tol", "seed", "radius",
}


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        config = tomllib.load(fh)
    unknown = set(config) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return config


def _setting(args, config: dict, name: str, fallback):
    value = getattr(args, name, None)
    if value is not None:
        return value
    if name in config:
        return config[name]
    return fallback


def _params(args, config: dict) -> EmbedParams:
    return EmbedParams(
        k=_setting(args, config, "k", 16),
        c=_setting(args, config, "c", 10),
        s=_setting(args, config, "s", 0.1),
        alpha=_setting(args, config, "alpha", 0.2),
        max_epochs=_setting(args, config, "max_epochs", 60),
        move_tol=_setting(args, config, "move_tol", 1e-7),
        seed=_setting(args, config, "seed", 0),
    )


def _out_path(explicit: str | None, default_name: str) -> Path:
    if explicit is not None:
        return Path(explicit)
    base = os.environ.get("SPANLAYOUT_OUT", ".")
    return Path(base) / default_name


def _add_tuning_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, help="neighborhood size")
    p.add_argument("--c", type=int, help="walk length cap")
    p.add_argument("--s", type=float, help="walk decay factor")
    p.add_argument("--alpha", type=float, help="repulsion weight")
    p.add_argument("--max-epochs", type=int, dest="max_epochs")
    p.add_argument("--move-tol", type=float, dest="move_tol")
    p.add_argument("--seed", type=int)
    p.add_argument("--config", help="TOML file with default settings")


def _add_graph_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", help="graph file (edge list or Matrix Market)")
    p.add_argument("--format", choices=["auto", "edges", "mm"], default="auto")
    p.add_argument("--weighted", action="store_true",
                   help="keep edge weights as target distances")


def _read_graph(args):
    return load_graph(args.graph, format=args.format, weighted=args.weighted)


def _read_labels_csv(path: str) -> np.ndarray:
    lines = Path(path).read_text().strip().splitlines()
    start = 1 if lines and lines[0].strip() == "vertex,label" else 0
    pairs = []
    for line in lines[start:]:
        if not line.strip():
            continue
        v, label = line.split(",")
        pairs.append((int(v), int(label)))
    pairs.sort()
    if [v for v, _ in pairs] != list(range(len(pairs))):
        raise ValueError("label file must cover vertices 0..n-1")
    return np.array([label for _, label in pairs], dtype=np.int64)


def _write_labels_csv(labels: np.ndarray, path: Path) -> None:
    lines = ["vertex,label"]
    lines += [f"{v},{int(label)}" for v, label in enumerate(labels)]
    path.write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_generate(args) -> int:
    if args.model == "blocks":
        g, labels = generate_sbm_lattice(
            args.rows, args.cols, args.cluster_size,
            args.p_in, args.p_adj, args.p_far, seed=args.seed or 0,
        )
        out = _out_path(args.out, "graph.txt")
        save_graph(g, out)
        if args.labels_out is not None:
            _write_labels_csv(labels, Path(args.labels_out))
    else:
        g = generate_watts_strogatz(
            args.n, args.ring_degree, args.rewire_p, seed=args.seed or 0
        )
        out = _out_path(args.out, "graph.txt")
        save_graph(g, out)
    print(f"wrote {out} ({g.n} vertices, {g.m} edges)")
    return 0


def _cmd_embed(args) -> int:
    config = _load_config(args.config)
    params = _params(args, config)
    if args.points:
        points, _ = load_points(args.graph, labels_last=args.labels_last)
        e = embed_points(points, params, sigma2=args.sigma2)
    else:
        g = _read_graph(args)
        e = embed(g, params)
    out = _out_path(args.out, "coords.csv")
    if args.json:
        out = out.with_suffix(".json") if args.out is None else out
        out.write_text(json.dumps(e.to_json_dict(), indent=2, sort_keys=True) + "\n")
    else:
        e.to_csv(out)
    stopped = "converged" if e.converged else "epoch budget"
    print(f"wrote {out} ({e.epochs_run} epochs, {stopped}, "
          f"objective {e.final_objective:.6g})")
    return 0


def _cmd_metrics(args) -> int:
    config = _load_config(args.config)
    radius = _setting(args, config, "radius", 2.0)
    coords = load_coords_csv(args.coords)
    if args.points:
        points, labels = load_points(args.graph, labels_last=args.labels_last)
        d = point_distance_matrix(points)
        report = {
            "neighborhood_error": neighborhood_error(coords, d, radius=radius),
            "stress": normalized_stress(coords, d),
            "cluster_distortion": (
                point_cluster_distortion(points, coords, labels)
                if labels is not None else None
            ),
            "n_clusters": None if labels is None else int(labels.max()) + 1,
            "radius": float(radius),
        }
    else:
        g = _read_graph(args)
        labels = _read_labels_csv(args.labels) if args.labels else None
        report = compute_metrics(
            g, coords, radius=radius, labels=labels,
            cluster=not args.no_cluster,
        ).to_json_dict()
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def _cmd_render(args) -> int:
    g = _read_graph(args)
    coords = load_coords_csv(args.coords)
    svg = render_svg(g, coords, width=args.width,
                     show_vertices=not args.no_vertices)
    out = _out_path(args.out, "layout.svg")
    out.write_bytes(svg)
    print(f"wrote {out}")
    return 0


def _cmd_sweep(args) -> int:
    config = _load_config(args.config)
    graphs = {}
    for path in args.graphs:
        name = Path(path).stem
        if name in graphs:
            raise ValueError(f"duplicate graph name {name!r}")
        graphs[name] = load_graph(path, format=args.format,
                                  weighted=args.weighted)
    ks = [int(t) for t in args.ks.split(",")]
    seeds = [int(t) for t in args.seeds.split(",")]
    rows, errors = run_sweep(
        graphs, ks, seeds,
        c=_setting(args, config, "c", 10),
        s=_setting(args, config, "s", 0.1),
        alpha=_setting(args, config, "alpha", 0.2),
        max_epochs=_setting(args, config, "max_epochs", 60),
        radius=_setting(args, config, "radius", 2.0),
        workers=args.workers,
    )
    out = _out_path(args.out, "sweep.csv")
    write_sweep_csv(rows, out)
    print(f"wrote {out} ({len(rows)} rows)")
    for field in ("ne", "stress", "cd"):
        medians = median_by_k(rows, field)
        if medians:
            joined = "  ".join(f"k={k}: {v:.4f}" for k, v in medians.items())
            print(f"median {field}:  {joined}")
    if errors:
        err_path = out.with_name(out.stem + ".errors.csv")
        write_sweep_errors_csv(errors, err_path)
        print(f"{len(errors)} runs failed, see {err_path}", file=sys.stderr)
        return 1
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(workers=args.embed_workers)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spanlayout",
        description="Tunable local-to-global 2-d graph embedding",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a benchmark graph")
    gen_sub = p.add_subparsers(dest="model", required=True)
    blocks = gen_sub.add_parser("blocks", help="clustered block grid")
    blocks.add_argument("--rows", type=int, default=3)
    blocks.add_argument("--cols", type=int, default=3)
    blocks.add_argument("--cluster-size", type=int, default=100,
                        dest="cluster_size")
    blocks.add_argument("--p-in", type=float, default=0.2, dest="p_in")
    blocks.add_argument("--p-adj", type=float, default=0.01, dest="p_adj")
    blocks.add_argument("--p-far", type=float, default=0.001, dest="p_far")
    blocks.add_argument("--seed", type=int, default=0)
    blocks.add_argument("--out")
    blocks.add_argument("--labels-out", dest="labels_out",
                        help="also write the planted clusters")
    blocks.set_defaults(func=_cmd_generate)
    ring = gen_sub.add_parser("smallworld", help="rewired ring lattice")
    ring.add_argument("--n", type=int, default=300)
    ring.add_argument("--ring-degree", type=int, default=16,
                      dest="ring_degree")
    ring.add_argument("--rewire-p", type=float, default=0.05, dest="rewire_p")
    ring.add_argument("--seed", type=int, default=0)
    ring.add_argument("--out")
    ring.set_defaults(func=_cmd_generate)

    p = sub.add_parser("embed", help="compute a layout")
    _add_graph_input_flags(p)
    _add_tuning_flags(p)
    p.add_argument("--points", action="store_true",
                   help="input is a point CSV, not a graph")
    p.add_argument("--labels-last", action="store_true", dest="labels_last",
                   help="with --points: last column is a cluster label")
    p.add_argument("--sigma2", type=float, help="affinity kernel width")
    p.add_argument("--json", action="store_true",
                   help="write coordinates plus provenance as JSON")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("metrics", help="score a layout")
    _add_graph_input_flags(p)
    p.add_argument("coords", help="coordinate CSV from the embed command")
    p.add_argument("--radius", type=float)
    p.add_argument("--labels", help="vertex,label CSV with known clusters")
    p.add_argument("--no-cluster", action="store_true", dest="no_cluster")
    p.add_argument("--points", action="store_true")
    p.add_argument("--labels-last", action="store_true", dest="labels_last")
    p.add_argument("--config")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("render", help="draw a layout as SVG")
    _add_graph_input_flags(p)
    p.add_argument("coords")
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--no-vertices", action="store_true", dest="no_vertices")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("sweep", help="score a range of neighborhood sizes")
    p.add_argument("graphs", nargs="+", help="graph files")
    p.add_argument("--format", choices=["auto", "edges", "mm"], default="auto")
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--ks", required=True, help="comma-separated k values")
    p.add_argument("--seeds", default="0", help="comma-separated seeds")
    p.add_argument("--c", type=int)
    p.add_argument("--s", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--max-epochs", type=int, dest="max_epochs")
    p.add_argument("--radius", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--embed-workers", type=int, default=2,
                   dest="embed_workers")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, DisconnectedGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
