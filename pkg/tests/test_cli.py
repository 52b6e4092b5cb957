import json

import numpy as np
import pytest

from spanlayout.cli import main
from spanlayout.graph import load_graph, generate_sbm_lattice
from spanlayout.optimizer import EmbedParams, embed, load_coords_csv
from spanlayout.render import render_svg


@pytest.fixture()
def graph_file(tmp_path):
    g, labels = generate_sbm_lattice(1, 2, 10, 0.7, 0.08, 0.08, seed=2)
    path = tmp_path / "g.txt"
    from spanlayout.graph import save_graph

    save_graph(g, path)
    return path, g, labels


def test_generate_blocks_with_labels(tmp_path, capsys):
    out = tmp_path / "blocks.txt"
    labels_out = tmp_path / "labels.csv"
    code = main([
        "generate", "blocks", "--rows", "1", "--cols", "2",
        "--cluster-size", "8", "--p-in", "0.8", "--p-adj", "0.2",
        "--p-far", "0.1", "--seed", "5",
        "--out", str(out), "--labels-out", str(labels_out),
    ])
    assert code == 0
    g = load_graph(out)
    assert g.n <= 16  # largest component of a 16-vertex draw
    lines = labels_out.read_text().splitlines()
    assert lines[0] == "vertex,label"
    assert len(lines) == g.n + 1
    assert "vertices" in capsys.readouterr().out


def test_generate_smallworld_deterministic(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    for out in (a, b):
        assert main([
            "generate", "smallworld", "--n", "40", "--ring-degree", "4",
            "--rewire-p", "0.1", "--seed", "7", "--out", str(out),
        ]) == 0
    assert a.read_bytes() == b.read_bytes()
    g = load_graph(a)
    assert g.n <= 40


def test_embed_matches_library_call(graph_file, tmp_path, capsys):
    path, g, _ = graph_file
    out = tmp_path / "coords.csv"
    code = main([
        "embed", str(path), "--k", "4", "--seed", "3",
        "--max-epochs", "12", "--out", str(out),
    ])
    assert code == 0
    want = embed(g, EmbedParams(k=4, seed=3, max_epochs=12))
    assert np.array_equal(load_coords_csv(out), want.coords)
    assert "epochs" in capsys.readouterr().out


def test_embed_json_provenance(graph_file, tmp_path):
    path, _, _ = graph_file
    out = tmp_path / "coords.json"
    assert main([
        "embed", str(path), "--k", "3", "--max-epochs", "5",
        "--json", "--out", str(out),
    ]) == 0
    payload = json.loads(out.read_text())
    assert set(payload) == {"coordinates", "provenance"}
    assert payload["provenance"]["seed"] == 0
    assert len(payload["coordinates"][0]) == 2


def test_embed_config_file_and_flag_precedence(graph_file, tmp_path):
    path, g, _ = graph_file
    config = tmp_path / "settings.toml"
    config.write_text("k = 3\nseed = 9\nmax_epochs = 6\n")
    out1 = tmp_path / "c1.csv"
    assert main(["embed", str(path), "--config", str(config),
                 "--out", str(out1)]) == 0
    want = embed(g, EmbedParams(k=3, seed=9, max_epochs=6))
    assert np.array_equal(load_coords_csv(out1), want.coords)
    # explicit flag beats the file
    out2 = tmp_path / "c2.csv"
    assert main(["embed", str(path), "--config", str(config),
                 "--seed", "1", "--out", str(out2)]) == 0
    override = embed(g, EmbedParams(k=3, seed=1, max_epochs=6))
    assert np.array_equal(load_coords_csv(out2), override.coords)


def test_unknown_config_key_fails(graph_file, tmp_path, capsys):
    path, _, _ = graph_file
    config = tmp_path / "bad.toml"
    config.write_text("k = 3\nwavelength = 2\n")
    assert main(["embed", str(path), "--config", str(config)]) == 1
    assert "unknown config keys" in capsys.readouterr().err


def test_out_dir_env_var(graph_file, tmp_path, monkeypatch):
    path, _, _ = graph_file
    target = tmp_path / "results"
    target.mkdir()
    monkeypatch.setenv("SPANLAYOUT_OUT", str(target))
    assert main(["embed", str(path), "--k", "3", "--max-epochs", "4"]) == 0
    assert (target / "coords.csv").exists()


def test_metrics_reports_json(graph_file, tmp_path, capsys):
    path, g, labels = graph_file
    coords = tmp_path / "coords.csv"
    assert main(["embed", str(path), "--k", "4", "--max-epochs", "10",
                 "--out", str(coords)]) == 0
    labels_csv = tmp_path / "labels.csv"
    lines = ["vertex,label"] + [f"{v},{l}" for v, l in enumerate(labels)]
    labels_csv.write_text("\n".join(lines) + "\n")
    capsys.readouterr()
    assert main(["metrics", str(path), str(coords),
                 "--labels", str(labels_csv)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert set(report) == {
        "neighborhood_error", "stress", "cluster_distortion",
        "n_clusters", "radius",
    }
    assert report["n_clusters"] == 2
    assert 0 <= report["neighborhood_error"] <= 1


def test_metrics_without_clustering(graph_file, tmp_path, capsys):
    path, _, _ = graph_file
    coords = tmp_path / "coords.csv"
    main(["embed", str(path), "--k", "4", "--max-epochs", "5",
          "--out", str(coords)])
    capsys.readouterr()
    assert main(["metrics", str(path), str(coords), "--no-cluster"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["cluster_distortion"] is None


def test_render_writes_expected_bytes(graph_file, tmp_path):
    path, g, _ = graph_file
    coords = tmp_path / "coords.csv"
    main(["embed", str(path), "--k", "4", "--max-epochs", "8",
          "--out", str(coords)])
    out = tmp_path / "layout.svg"
    assert main(["render", str(path), str(coords), "--out", str(out)]) == 0
    assert out.read_bytes() == render_svg(g, load_coords_csv(coords))


def test_sweep_command_writes_csv_and_medians(graph_file, tmp_path, capsys):
    path, _, _ = graph_file
    out = tmp_path / "sweep.csv"
    code = main(["sweep", str(path), "--ks", "2,4", "--seeds", "0,1",
                 "--max-epochs", "6", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "graph,k,seed,ne,stress,cd,epochs,objective"
    assert len(lines) == 5
    printed = capsys.readouterr().out
    assert "median ne:" in printed
    assert "k=2" in printed


def test_points_pipeline(tmp_path, capsys):
    rng = np.random.default_rng(70)
    pts = np.vstack([rng.normal(size=(8, 3)), rng.normal(size=(8, 3)) + 10])
    rows = [
        ",".join(repr(float(v)) for v in row) + f",{i // 8}"
        for i, row in enumerate(pts)
    ]
    data = tmp_path / "points.csv"
    data.write_text("\n".join(rows) + "\n")
    coords = tmp_path / "coords.csv"
    assert main(["embed", str(data), "--points", "--labels-last",
                 "--k", "6", "--max-epochs", "10", "--out", str(coords)]) == 0
    assert load_coords_csv(coords).shape == (16, 2)
    capsys.readouterr()
    assert main(["metrics", str(data), str(coords), "--points",
                 "--labels-last", "--radius", "5"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["n_clusters"] == 2
    assert report["cluster_distortion"] is not None


def test_disconnected_graph_exits_nonzero(tmp_path, capsys):
    path = tmp_path / "broken.txt"
    path.write_text("0 1\n2 3\n")
    assert main(["embed", str(path), "--k", "2"]) == 1
    assert "error:" in capsys.readouterr().err


def test_malformed_graph_exits_nonzero(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("0 1\n0 x\n")
    coords = tmp_path / "coords.csv"
    coords.write_text("vertex,x,y\n0,0.0,0.0\n1,1.0,0.0\n")
    assert main(["metrics", str(path), str(coords)]) == 1
    err = capsys.readouterr().err
    assert "line 2" in err
