import pytest
from fastapi.testclient import TestClient

import pinbrauer.api.main as api_main
from pinbrauer.api.main import app


@pytest.fixture
def client():
    return TestClient(app)


class FakeTask:
    def __init__(self):
        self.calls = []

    def delay(self, **kwargs):
        self.calls.append(kwargs)
        return type("Submitted", (), {"id": "task-1"})()


def test_dims(client):
    response = client.get("/dims", params={"k": 2, "n": 2})
    assert response.status_code == 200
    body = response.json()
    assert body["dim_cpk"] == 10
    assert body["gb_count"] == 10
    assert {"partition": [], "count": 2} in body["walks"]


def test_dims_rejects_bad_dimension(client):
    response = client.get("/dims", params={"k": 1, "n": 2, "N": 7})
    assert response.status_code == 400
    assert "2n or 2n+1" in response.json()["detail"]
    assert client.get("/dims", params={"k": 9}).status_code == 422


def test_multiply(client):
    response = client.post("/multiply", json={"lhs": "y5", "rhs": "y8"})
    assert response.status_code == 200
    body = response.json()
    assert (body["lhs"], body["rhs"], body["family"]) == ("y5", "y8", "odd")
    assert {t["alias"] for t in body["product"]["terms"]} == {"y3", "y8"}


def test_multiply_with_diagram_dicts(client):
    identity = {"k": 1, "l": 1, "edges": [["U1", "L1"]]}
    response = client.post("/multiply", json={"lhs": identity, "rhs": identity, "family": "even"})
    assert response.status_code == 200
    assert len(response.json()["product"]["terms"]) == 1


def test_multiply_unknown_alias(client):
    response = client.post("/multiply", json={"lhs": "y42", "rhs": "y1"})
    assert response.status_code == 400


def test_decompose(client):
    payload = {
        "left": {"kind": "DELTA", "parts": [], "n": 2, "N": 5},
        "right": {"kind": "SO", "parts": [1], "n": 2, "N": 5},
    }
    response = client.post("/decompose", json=payload)
    assert response.status_code == 200
    body = response.json()
    assert body["agrees_with_characters"] is True
    assert [r["multiplicity"] for r in body["rule"]] == [1, 1]


def test_verify_submits_a_task(client, monkeypatch):
    fake = FakeTask()
    monkeypatch.setattr(api_main, "run_verification_suite", fake)
    response = client.post("/verify", json={"suite": "walks", "n": 2})
    assert response.status_code == 202
    assert response.json() == {"task_id": "task-1", "status": "SUBMITTED"}
    assert fake.calls == [{"suite": "walks", "n": 2, "N": 5, "seed": 0}]


def test_verify_rejects_unknown_suite(client, monkeypatch):
    fake = FakeTask()
    monkeypatch.setattr(api_main, "run_verification_suite", fake)
    assert client.post("/verify", json={"suite": "nope"}).status_code == 422
    assert client.post("/verify", json={"suite": "walks", "n": 2, "N": 3}).status_code == 422
    assert fake.calls == []
