import numpy as np
import pytest

from spanlayout.graph import Graph, generate_sbm_lattice
from spanlayout.sweep import (
    CSV_HEADER,
    SweepRow,
    median_by_k,
    read_sweep_csv,
    run_sweep,
    write_sweep_csv,
    write_sweep_errors_csv,
)


def small_graphs():
    ga, labels = generate_sbm_lattice(1, 2, 8, 0.8, 0.1, 0.1, seed=1)
    gb = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])
    return {"blocks": ga, "ring": gb}, {"blocks": labels}


def test_sweep_cardinality_and_ordering():
    graphs, labels = small_graphs()
    rows, errors = run_sweep(
        graphs, ks=[2, 4], seeds=[0, 1], max_epochs=10, labels=labels
    )
    assert errors == []
    assert len(rows) == 8
    keys = [(r.graph, r.k, r.seed) for r in rows]
    assert keys == sorted(keys)
    for r in rows:
        assert 0.0 <= r.ne <= 1.0
        assert r.stress >= 0.0
        assert r.epochs <= 10
        assert np.isfinite(r.objective)


def test_sweep_results_do_not_depend_on_worker_count():
    graphs, labels = small_graphs()
    rows1, _ = run_sweep(graphs, ks=[3], seeds=[0, 1, 2], max_epochs=8,
                         labels=labels, workers=1)
    rows3, _ = run_sweep(graphs, ks=[3], seeds=[0, 1, 2], max_epochs=8,
                         labels=labels, workers=3)
    assert rows1 == rows3


def test_sweep_csv_round_trip(tmp_path):
    graphs, labels = small_graphs()
    rows, _ = run_sweep(graphs, ks=[2], seeds=[0], max_epochs=5, labels=labels)
    path = tmp_path / "sweep.csv"
    write_sweep_csv(rows, path)
    text = path.read_text()
    assert text.splitlines()[0] == CSV_HEADER == "graph,k,seed,ne,stress,cd,epochs,objective"
    assert read_sweep_csv(path) == rows


def test_sweep_collects_errors_instead_of_raising(tmp_path):
    graphs, _ = small_graphs()
    bad_labels = {"blocks": np.zeros(3, dtype=np.int64)}  # wrong length
    rows, errors = run_sweep(
        graphs, ks=[2], seeds=[0, 1], max_epochs=5, labels=bad_labels
    )
    assert len(rows) == 2  # the ring still succeeds
    assert all(r.graph == "ring" for r in rows)
    assert len(errors) == 2
    assert all(e.graph == "blocks" and "ValueError" in e.message for e in errors)
    path = tmp_path / "errors.csv"
    write_sweep_errors_csv(errors, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "graph,k,seed,message"
    assert len(lines) == 3


def test_sweep_validation():
    graphs, _ = small_graphs()
    with pytest.raises(ValueError, match="no graphs"):
        run_sweep({}, ks=[2], seeds=[0])
    with pytest.raises(ValueError, match="non-empty"):
        run_sweep(graphs, ks=[], seeds=[0])


def test_median_by_k_hand_case():
    rows = [
        SweepRow("g", 2, 0, 0.5, 1.0, 0.1, 5, 1.0),
        SweepRow("g", 2, 1, 0.3, 2.0, None, 5, 1.0),
        SweepRow("g", 4, 0, 0.2, 3.0, 0.4, 5, 1.0),
    ]
    assert median_by_k(rows, "ne") == {2: 0.4, 4: 0.2}
    # None entries are left out rather than poisoning the median
    assert median_by_k(rows, "cd") == {2: 0.1, 4: 0.4}
    assert list(median_by_k(rows, "stress")) == [2, 4]
