import time

import numpy as np
import pytest
from fastapi.testclient import TestClient

from spanlayout.graph import apsp, generate_watts_strogatz, graph_to_text
from spanlayout.optimizer import load_coords_csv
from spanlayout.render import render_svg
from spanlayout.server import MAX_GRAPH_BYTES, create_app


@pytest.fixture()
def client():
    return TestClient(create_app(workers=2))


def upload(client, text, **kwargs):
    return client.post("/graphs", json={"text": text, **kwargs})


def small_graph_text():
    return "0 1\n1 2\n2 3\n0 3\n0 2\n"


def wait_done(client, job_id, timeout=60.0):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        payload = client.get(f"/jobs/{job_id}").json()
        if payload["status"] in ("done", "failed"):
            return payload
        time.sleep(0.02)
    raise AssertionError("job did not finish in time")


def test_upload_is_content_addressed(client):
    a = upload(client, small_graph_text())
    assert a.status_code == 201
    body = a.json()
    assert body["n"] == 4 and body["m"] == 5
    # same graph, different whitespace and edge order: same id
    b = upload(client, "0 2\n2 3\n1 2\n\n0 3\n0 1\n")
    assert b.json()["id"] == body["id"]


def test_upload_rejects_malformed_text(client):
    r = upload(client, "0 1\n0 x\n")
    assert r.status_code == 400
    assert "line 2" in r.json()["detail"]


def test_upload_rejects_disconnected_graph(client):
    r = upload(client, "0 1\n2 3\n")
    assert r.status_code == 400
    assert "disconnected" in r.json()["detail"]


def test_upload_rejects_oversized_text(client):
    line = "0 1\n"
    text = line * (MAX_GRAPH_BYTES // len(line) + 2)
    r = upload(client, text)
    assert r.status_code == 413


def test_graph_info_reports_diameter(client):
    gid = upload(client, small_graph_text()).json()["id"]
    info = client.get(f"/graphs/{gid}").json()
    assert info["n"] == 4
    assert info["m"] == 5
    assert info["diameter"] == 2.0
    assert client.get("/graphs/feedfacedeadbeef").status_code == 404


def test_job_validation(client):
    gid = upload(client, small_graph_text()).json()["id"]
    assert client.post(f"/graphs/{gid}/jobs", json={"k": 4}).status_code == 422
    assert client.post(f"/graphs/{gid}/jobs", json={"k": 2, "alpha": -1}).status_code == 422
    assert client.post(f"/graphs/{gid}/jobs", json={"k": 2, "radius": 0}).status_code == 422
    assert client.post("/graphs/feedfacedeadbeef/jobs", json={"k": 2}).status_code == 404


def test_job_lifecycle_and_result_payload(client):
    gid = upload(client, small_graph_text()).json()["id"]
    r = client.post(f"/graphs/{gid}/jobs", json={"k": 2, "max_epochs": 20})
    assert r.status_code == 202
    job_id = r.json()["job_id"]
    payload = wait_done(client, job_id)
    assert payload["status"] == "done"
    assert payload["error"] is None
    assert payload["progress"]["epoch"] <= 20
    result = payload["result"]
    assert set(result) == {"coordinates", "provenance", "metrics"}
    assert len(result["coordinates"]) == 4
    metrics = result["metrics"]
    assert set(metrics) == {
        "neighborhood_error", "stress", "cluster_distortion",
        "n_clusters", "radius",
    }
    assert 0 <= metrics["neighborhood_error"] <= 1
    assert payload["params"]["k"] == 2


def test_identical_submissions_share_a_job(client):
    gid = upload(client, small_graph_text()).json()["id"]
    body = {"k": 2, "max_epochs": 10, "seed": 4}
    first = client.post(f"/graphs/{gid}/jobs", json=body).json()
    wait_done(client, first["job_id"])
    second = client.post(f"/graphs/{gid}/jobs", json=body).json()
    assert second["job_id"] == first["job_id"]
    assert second["status"] == "done"
    # different seed: different job
    third = client.post(f"/graphs/{gid}/jobs", json={**body, "seed": 5}).json()
    assert third["job_id"] != first["job_id"]


def test_cache_bypass_reproduces_identical_bytes(client):
    g = generate_watts_strogatz(60, 6, 0.1, seed=3)
    gid = upload(client, graph_to_text(g)).json()["id"]
    body = {"k": 8, "max_epochs": 15, "seed": 2}
    job_id = client.post(f"/graphs/{gid}/jobs", json=body).json()["job_id"]
    wait_done(client, job_id)
    baseline = client.get(f"/jobs/{job_id}").content
    rerun = client.post(
        f"/graphs/{gid}/jobs", json={**body, "use_cache": False}
    ).json()
    assert rerun["job_id"] == job_id
    wait_done(client, job_id)
    assert client.get(f"/jobs/{job_id}").content == baseline


def test_svg_endpoint_matches_library_render(client):
    g = generate_watts_strogatz(40, 4, 0.05, seed=1)
    gid = upload(client, graph_to_text(g)).json()["id"]
    job_id = client.post(
        f"/graphs/{gid}/jobs", json={"k": 5, "max_epochs": 10}
    ).json()["job_id"]
    payload = wait_done(client, job_id)
    r = client.get(f"/jobs/{job_id}/svg")
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("image/svg+xml")
    coords = np.array(payload["result"]["coordinates"])
    assert r.content == render_svg(g, coords, apsp(g))


def test_svg_for_unfinished_job_conflicts(client):
    g = generate_watts_strogatz(300, 10, 0.05, seed=2)
    gid = upload(client, graph_to_text(g)).json()["id"]
    job_id = client.post(
        f"/graphs/{gid}/jobs", json={"k": 20, "max_epochs": 60}
    ).json()["job_id"]
    r = client.get(f"/jobs/{job_id}/svg")
    assert r.status_code in (409,)  # queued or running at this point
    wait_done(client, job_id, timeout=120)
    assert client.get(f"/jobs/{job_id}/svg").status_code == 200


def test_unknown_job_routes(client):
    assert client.get("/jobs/feedfacedeadbeef").status_code == 404
    assert client.get("/jobs/feedfacedeadbeef/svg").status_code == 404
