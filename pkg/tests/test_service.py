import json

import pytest
from fastapi.testclient import TestClient

from hhrect.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_chain_endpoint(client):
    response = client.post("/chain", json={"function": "x^2+y^2"})
    assert response.status_code == 200
    body = response.json()
    assert body["command"] == "chain"
    assert body["results"]["L1"] == pytest.approx(0.5)
    assert body["results"]["L5"] == pytest.approx(1.0)
    assert all(v["pass"] for v in body["verdicts"])
    assert {"name", "pass", "lhs", "rhs", "slack"} <= set(body["verdicts"][0])


def test_identity_endpoint(client):
    response = client.post("/identity", json={
        "function": "exp(x+y)",
        "rect": {"a": -1, "b": 2, "c": 0, "d": 3}})
    assert response.status_code == 200
    body = response.json()
    assert body["verdicts"][0]["pass"]
    assert body["results"]["abs_difference"] < 1e-8


def test_bounds_endpoint(client):
    response = client.post("/bounds", json={
        "function": "x^2*y^2", "p_list": [2.0]})
    body = response.json()
    assert response.status_code == 200
    assert body["results"]["bound21"] == pytest.approx(0.0625)
    assert body["results"]["holder"][0]["bound22"] == pytest.approx(1 / 6)
    assert all(v["pass"] for v in body["verdicts"])


def test_convexity_endpoint_counterexample(client):
    response = client.post("/convexity", json={
        "function": "-(x^2)-y^2", "samples": 2000})
    body = response.json()
    assert response.status_code == 200
    assert not body["results"]["passed"]
    assert body["results"]["counterexample"] is not None


def test_integrate_endpoint(client):
    response = client.post("/integrate", json={
        "function": "x^2*y^2", "m": 1, "n": 1})
    body = response.json()
    assert response.status_code == 200
    assert body["results"]["estimate"] == pytest.approx(1 / 12)
    assert body["results"]["error_bound"] == pytest.approx(1 / 16)


def test_integrate_convergence_table(client):
    response = client.post("/integrate", json={
        "function": "exp(x+y)", "levels": 3})
    body = response.json()
    assert response.status_code == 200
    assert len(body["results"]["table"]) == 3
    assert all(v["pass"] for v in body["verdicts"])


def test_sweep_p_endpoint(client):
    response = client.post("/sweep-p", json={
        "function": "x^2*y^2", "p_grid": [1.5, 2.0]})
    body = response.json()
    assert response.status_code == 200
    rows = body["results"]["rows"]
    assert len(rows) == 2
    for row in rows:
        assert 0.25 < row["coefficient"] < 1.0
        assert row["bound23"] <= row["bound22"]


def test_parse_error_maps_to_422(client):
    response = client.post("/chain", json={"function": "x + * y"})
    assert response.status_code == 422
    body = response.json()
    assert body["error"] == "parse"
    assert body["position"] == 4


def test_evaluation_error_maps_to_400(client):
    response = client.post("/chain", json={
        "function": "log(x-5)"})
    assert response.status_code == 400
    assert response.json()["error"] == "evaluation"


def test_invalid_rectangle_rejected(client):
    response = client.post("/chain", json={
        "function": "x*y", "rect": {"a": 1, "b": 0, "c": 0, "d": 1}})
    assert response.status_code == 422


def test_json_floats_round_trip(client):
    response = client.post("/identity", json={"function": "x^2*y^2"})
    lhs = response.json()["results"]["lhs"]
    assert lhs == json.loads(json.dumps(lhs))
    assert lhs == pytest.approx(1 / 36, rel=1e-12)
