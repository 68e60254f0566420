import pytest
from fastapi.testclient import TestClient

import api.app as api_app
from runtime.generators import gen_fgn


@pytest.fixture
def client():
    api_app.egraph = None
    api_app._engines.clear()
    return TestClient(api_app.app)


def test_status_before_loading(client):
    assert client.get("/status").json() == {"loaded": False}


def test_match_requires_an_egraph(client):
    response = client.post("/match", json={"pattern": "(f ?a ?b)"})
    assert response.status_code == 400


def test_load_and_match(client):
    dump = gen_fgn(4).to_dict()
    loaded = client.post("/egraph", json={"egraph": dump})
    assert loaded.status_code == 200
    assert loaded.json() == {"nodes": 12, "classes": 6}

    status = client.get("/status").json()
    assert status["loaded"] and status["nodes"] == 12

    relational = client.post("/match", json={"pattern": "(f ?a (g ?a))"}).json()
    backtracking = client.post("/match", json={"pattern": "(f ?a (g ?a))", "engine": "em"}).json()
    assert relational["count"] == 4
    assert relational["head"] == ["root", "?a"]
    assert relational["rows"] == backtracking["rows"]


def test_bad_requests_are_422(client):
    client.post("/egraph", json={"egraph": gen_fgn(2).to_dict()})
    assert client.post("/match", json={"pattern": "(f ?a"}).status_code == 422
    assert client.post("/match", json={"pattern": "(f ?a)"}).status_code == 422
    assert client.post("/match", json={"pattern": "(f ?a ?b)", "engine": "nope"}).status_code == 422
    assert client.post("/match", json={"pattern": "(f ?a (g ?a))", "ordering": "?a"}).status_code == 422
    assert client.post("/egraph", json={"egraph": {"nodes": [["f", [3]]]}}).status_code == 422
