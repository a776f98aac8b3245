import pytest
from fastapi.testclient import TestClient

from app.main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["status"] == "running"


def test_health(client):
    assert client.get("/health").json() == {"status": "healthy"}


def test_mutate(client):
    response = client.post("/mutate", json={"quiver": "kronecker", "directions": [2]})
    assert response.status_code == 200
    data = response.json()
    assert data["cluster"][0] == "x1"
    assert data["terms"][1] == [["1", [0, -1]], ["1", [2, -1]]]


def test_mutate_bad_direction(client):
    response = client.post("/mutate", json={"quiver": "a2", "directions": [5]})
    assert response.status_code == 400
    assert "InvalidInput" in response.json()["detail"]


def test_explore(client):
    response = client.post("/explore", json={"quiver": "a2"})
    assert response.status_code == 200
    assert response.json()["nodes"] == 5
    assert response.json()["labeled_seeds"] == 10


def test_explore_truncated(client):
    response = client.post("/explore", json={"quiver": "kronecker", "max_seeds": 10})
    assert response.status_code == 200
    assert response.json()["complete"] is False


def test_ccmap_object(client):
    response = client.post("/ccmap", json={"quiver": "kronecker", "object": "kronecker:W:1"})
    assert response.status_code == 200
    assert response.json()["denominator"] == [1, 1]


def test_ccmap_root(client):
    response = client.post("/ccmap", json={"quiver": "a2", "root": [1, 1]})
    assert response.status_code == 200
    assert response.json()["object"]["module_dims"] == [1, 1]


def test_ccmap_needs_exactly_one_target(client):
    response = client.post("/ccmap", json={"quiver": "a2", "object": "SP:1", "root": [1, 0]})
    assert response.status_code == 422


def test_unknown_preset(client):
    response = client.post("/ccmap", json={"quiver": "e9", "object": "SP:1"})
    assert response.status_code == 400


def test_verify(client):
    response = client.post("/verify", json={"suite": "bijection", "quiver": "a1"})
    assert response.status_code == 200
    assert response.json()["status"] == "pass"


def test_verify_unknown_suite(client):
    response = client.post("/verify", json={"suite": "everything"})
    assert response.status_code == 422
