"""Sweep the neighborhood size on the small-world benchmark.

Runs a few seeds per k, prints the per-k medians of the local metric
(neighborhood error) and the global one (normalized stress), and writes the
raw rows as CSV.  The local column worsens as k grows while stress improves;
that monotone exchange is the whole point of the knob.

Usage: python3 demos/neighborhood_size_sweep.py [--out out_dir]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from spanlayout import generate_watts_strogatz, median_by_k, run_sweep
from spanlayout.sweep import write_sweep_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="demo_out", help="output directory")
    ap.add_argument("--ks", type=int, nargs="+", default=[16, 32, 64, 100, 200])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    g = generate_watts_strogatz(300, 16, 0.05, seed=0)
    rows, errors = run_sweep({"smallworld": g}, args.ks, args.seeds)
    if errors:
        raise SystemExit(f"{len(errors)} runs failed: {errors[0].message}")
    csv_path = out / "smallworld_sweep.csv"
    write_sweep_csv(rows, csv_path)

    ne = median_by_k(rows, "ne")
    stress = median_by_k(rows, "stress")
    print(f"{len(rows)} runs -> {csv_path}")
    print(f"{'k':>5s} {'ne (local)':>12s} {'stress (global)':>17s}")
    for k in sorted(ne):
        print(f"{k:5d} {ne[k]:12.4f} {stress[k]:17.1f}")


if __name__ == "__main__":
    main()
