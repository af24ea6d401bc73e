"""HTTP surface: every endpoint, happy paths and the structured error body."""

import pytest
from fastapi.testclient import TestClient

from isoreduce.service.app import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


TWO_CYCLE = {
    "version": 1,
    "vertices": ["v1", "v2"],
    "edges": [
        {"from": "v1", "to": "v2", "weight": "1"},
        {"from": "v2", "to": "v1", "weight": "1"},
    ],
}


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"


def test_validate_endpoint(client):
    r = client.post("/validate", json={"graph": TWO_CYCLE, "subset": ["v1"]})
    assert r.status_code == 200
    assert r.json() == {"structural": True, "cycle_witness": None,
                        "lambda_loop_witness": None}


def test_validate_reports_witness(client):
    doc = {
        "version": 1,
        "vertices": ["v1", "a", "b"],
        "edges": [
            {"from": "v1", "to": "a", "weight": "1"},
            {"from": "a", "to": "b", "weight": "1"},
            {"from": "b", "to": "a", "weight": "1"},
        ],
    }
    body = client.post("/validate", json={"graph": doc, "subset": ["v1"]}).json()
    assert body["structural"] is False
    assert set(body["cycle_witness"]) == {"a", "b"}


def test_reduce_endpoint_full_report(client):
    r = client.post("/reduce", json={"graph": TWO_CYCLE, "keep": ["v1"]})
    assert r.status_code == 200
    body = r.json()
    assert body["match"] is True
    assert body["reduced"]["edges"] == [{"from": "v1", "to": "v1", "weight": "1/l"}]
    assert body["correction"] == [{"re": 0.0, "im": 0.0}]
    values = sorted(e["value"]["re"] for e in body["spectrum_input"])
    assert values == [-1.0, 1.0]
    assert body["spectrum_input"] == body["spectrum_reduced"]


def test_reduce_report_audits_sequential_loss_with_stepwise_corrections(client):
    # keeping only the isolated vertex drops a 2-cycle; its eigenvalues +-1
    # appear as fixed points of an intermediate loop, not as original loop
    # weights, and the report must still verify the reduction
    doc = {
        "version": 1,
        "vertices": ["v1", "u", "w"],
        "edges": [
            {"from": "u", "to": "w", "weight": "1"},
            {"from": "w", "to": "u", "weight": "1"},
        ],
    }
    body = client.post("/reduce", json={"graph": doc, "keep": ["v1"]}).json()
    assert body["match"] is True
    correction = sorted(round(c["re"]) for c in body["correction"])
    assert correction == [-1, 0, 1]


def test_reduce_structural_only_rejects_bad_set(client):
    doc = {
        "version": 1,
        "vertices": ["v1", "a", "b"],
        "edges": [
            {"from": "v1", "to": "a", "weight": "1"},
            {"from": "a", "to": "b", "weight": "1"},
            {"from": "b", "to": "a", "weight": "1"},
        ],
    }
    r = client.post("/reduce", json={"graph": doc, "keep": ["v1"],
                                     "structural_only": True})
    assert r.status_code == 422
    assert r.json()["error"] == "NotStructural"


def test_spectrum_endpoint(client):
    r = client.post("/spectrum", json={"graph": TWO_CYCLE})
    entries = r.json()["entries"]
    assert [e["multiplicity"] for e in entries] == [1, 1]


def test_equiv_endpoint(client):
    relabeled = {
        "version": 1,
        "vertices": ["x", "y"],
        "edges": [
            {"from": "x", "to": "y", "weight": "1"},
            {"from": "y", "to": "x", "weight": "1"},
        ],
    }
    r = client.post("/equiv", json={"graph_a": TWO_CYCLE, "graph_b": relabeled,
                                    "rule": "min-out-degree"})
    body = r.json()
    assert body["equivalent"] is True
    assert body["witness"] in ({"v1": "x", "v2": "y"}, {"v1": "y", "v2": "x"})


def test_fixed_reduce_endpoint(client):
    doc = {
        "version": 1,
        "vertices": ["v1", "a", "b", "v2"],
        "edges": [
            {"from": "v1", "to": "a", "weight": "1"},
            {"from": "a", "to": "v2", "weight": "1"},
            {"from": "v1", "to": "b", "weight": "1"},
            {"from": "b", "to": "v2", "weight": "1"},
            {"from": "v2", "to": "v1", "weight": "1"},
        ],
    }
    body = client.post("/fixed-reduce", json={"graph": doc, "subset": ["v1", "v2"]}).json()
    assert body["closure_ok"] is True
    assert body["vertex_reduced"] is True
    weights = {e["weight"] for e in body["reduced"]["edges"]}
    assert weights == {"1", "2"}


def test_sparsify_endpoint(client):
    doc = {
        "version": 1,
        "vertices": ["v1", "u", "w"],
        "edges": [
            {"from": "v1", "to": "u", "weight": "1"},
            {"from": "u", "to": "v1", "weight": "1"},
            {"from": "v1", "to": "w", "weight": "1"},
            {"from": "w", "to": "u", "weight": "1"},
        ],
    }
    body = client.post("/sparsify", json={"graph": doc, "subset": ["v1"]}).json()
    assert body["added_vertices"] == 1
    assert body["delta"] == [{"re": 0.0, "im": 0.0}]
    assert body["sparsifiable_input"] is True


def test_dot_endpoint(client):
    body = client.post("/dot", json={"graph": TWO_CYCLE}).json()
    assert body["dot"].startswith("digraph reduced {")


def test_error_body_shape(client):
    bad = {"version": 1, "vertices": ["v1"],
           "edges": [{"from": "v1", "to": "ghost", "weight": "1"}]}
    r = client.post("/spectrum", json={"graph": bad})
    assert r.status_code == 422
    body = r.json()
    assert body["error"] == "UnknownVertex"
    assert body["detail"]["vertex"] == "ghost"


def test_malformed_weight_error(client):
    bad = {"version": 1, "vertices": ["v1"],
           "edges": [{"from": "v1", "to": "v1", "weight": "1/(l-3"}]}
    r = client.post("/spectrum", json={"graph": bad})
    assert r.status_code == 422
    assert r.json()["error"] == "MalformedWeight"
