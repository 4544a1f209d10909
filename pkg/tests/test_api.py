import numpy as np
import pytest
from fastapi.testclient import TestClient

from dslab.main import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def _inline_config(output_dir: str) -> dict:
    return {
        "name": "api_tiny",
        "grid": {"D": 2.0, "N": 32},
        "initial_data": {"kind": "gaussian", "amplitude": 0.5},
        "schedule": [{"n_steps": 10, "dt": 1e-3}],
        "analysis": {"fit": False, "trace": False},
        "output_dir": output_dir,
    }


class TestApi:
    def test_health(self, client):
        body = client.get("/").json()
        assert body["code"] == 200
        assert body["data"]["status"] == "ok"

    def test_list_experiments(self, client):
        body = client.get("/api/v1/experiments").json()
        assert "ozawa_validation" in body["data"]

    def test_fit(self, client):
        t = np.linspace(0.1, 0.24, 200)
        response = client.post(
            "/api/v1/analysis/fit",
            json={"t": t.tolist(), "linf": (1.0 / (0.25 - t)).tolist(), "window_size": 200},
        )
        assert response.status_code == 200
        assert response.json()["data"]["t_star"] == pytest.approx(0.25, abs=1e-6)

    def test_fit_length_mismatch(self, client):
        response = client.post("/api/v1/analysis/fit", json={"t": [0.0, 1.0], "linf": [1.0]})
        assert response.status_code == 422
        assert response.json()["message"] == "Validation Error"

    def test_degenerate_fit(self, client):
        response = client.post("/api/v1/analysis/fit", json={"t": list(range(20)), "linf": [1.0] * 20})
        assert response.status_code == 422
        assert "constant" in response.json()["message"]

    def test_run_and_fetch(self, client, tmp_path):
        response = client.post("/api/v1/experiments/run", json={"config": _inline_config(str(tmp_path))})
        assert response.status_code == 200, response.text
        report = response.json()["data"]
        assert report["stop_reason"] == "completed"
        assert report["last_valid_step"] == 10

        fetched = client.get(f"/api/v1/experiments/results/{report['run_id']}").json()
        assert fetched["data"]["name"] == "api_tiny"
        listed = client.get("/api/v1/experiments/results").json()["data"]
        assert report["run_id"] in [r["run_id"] for r in listed]

    def test_run_with_overrides(self, client, tmp_path):
        request = {"config": _inline_config(str(tmp_path)), "overrides": {"name": "renamed"}}
        assert client.post("/api/v1/experiments/run", json=request).json()["data"]["name"] == "renamed"

    def test_run_needs_one_source(self, client, tmp_path):
        request = {"config_name": "lump_validation", "config": _inline_config(str(tmp_path))}
        assert client.post("/api/v1/experiments/run", json=request).status_code == 422

    def test_unknown_config_name(self, client):
        response = client.post("/api/v1/experiments/run", json={"config_name": "no_such_config"})
        assert response.status_code == 422
        assert "bundled" in response.json()["data"]

    def test_missing_result(self, client):
        response = client.get("/api/v1/experiments/results/does-not-exist")
        assert response.status_code == 404
        assert response.json()["code"] == 404
