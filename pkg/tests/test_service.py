import numpy as np
import pytest
from fastapi.testclient import TestClient

from fixtures import galaxy_scene, two_blobs
from helpers import make_connection

from torquecluster import Dataset, TorqueResult
from torquecluster.service import create_app


@pytest.fixture
def client():
    return TestClient(create_app())


def create_points_session(client, points, **options):
    body = {"points": np.asarray(points).tolist(), **options}
    response = client.post("/v1/sessions", json=body)
    assert response.status_code == 201, response.text
    return response.json()


class TestCreateSession:
    def test_two_blobs_auto_cut(self, client):
        pts, _ = two_blobs(seed=4, sizes=(30, 30))
        summary = create_points_session(client, pts)
        assert summary["n"] == 60
        assert summary["k"] == 2  # initial cut is automatic
        assert summary["projection_available"] is True
        assert summary["version"] == 0

    def test_single_sample(self, client):
        summary = create_points_session(client, [[1.0, 2.0]])
        assert summary["k"] == 1
        graph = client.get(f"/v1/sessions/{summary['session_id']}/graph").json()
        assert graph["connections"] == []

    def test_malformed_csv_body(self, client):
        response = client.post("/v1/sessions", json={"points_csv": "1,2\n3\n"})
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "invalid_input"
        assert "line 2" in body["message"]

    def test_csv_body(self, client):
        response = client.post("/v1/sessions", json={"points_csv": "0,0\n9,9\n"})
        assert response.status_code == 201
        assert response.json()["n"] == 2

    def test_matrix_body(self, client):
        response = client.post("/v1/sessions",
                               json={"matrix": [[0, 1, 9], [1, 0, 9], [9, 9, 0]]})
        assert response.status_code == 201
        body = response.json()
        assert body["projection_available"] is False

    def test_no_input(self, client):
        response = client.post("/v1/sessions", json={})
        assert response.status_code == 422
        assert response.json()["code"] == "validation_error"

    def test_approx_on_matrix_conflicts(self, client):
        response = client.post(
            "/v1/sessions", json={"matrix": [[0, 1], [1, 0]], "approx": True})
        assert response.status_code == 409
        assert response.json()["code"] == "unsupported_mode"


class TestGraph:
    def test_galaxy_late_rounds(self, client):
        points, expected = galaxy_scene()
        summary = create_points_session(client, points)
        graph = client.get(f"/v1/sessions/{summary['session_id']}/graph").json()
        late = sorted(c["mass_product"] for c in graph["connections"]
                      if c["round"] >= 1)
        assert late == expected["late_mass_products"]
        assert graph["rounds"] == list(expected["rounds"])

    def test_two_samples_single_record(self, client):
        summary = create_points_session(client, [[0.0], [3.0]])
        graph = client.get(f"/v1/sessions/{summary['session_id']}/graph").json()
        assert len(graph["connections"]) == 1
        assert graph["connections"][0]["square_distance"] == 9.0

    def test_repeated_call_identical(self, client):
        pts, _ = two_blobs(seed=4, sizes=(15, 15))
        summary = create_points_session(client, pts)
        url = f"/v1/sessions/{summary['session_id']}/graph"
        assert client.get(url).content == client.get(url).content

    def test_unknown_session(self, client):
        response = client.get("/v1/sessions/nope/graph")
        assert response.status_code == 404
        assert response.json()["code"] == "not_found"

    def test_ordering_stable_by_id(self, client):
        points, _ = galaxy_scene()
        summary = create_points_session(client, points)
        graph = client.get(f"/v1/sessions/{summary['session_id']}/graph").json()
        ids = [c["id"] for c in graph["connections"]]
        assert ids == sorted(ids)


class TestCut:
    def test_auto_on_galaxy(self, client):
        points, expected = galaxy_scene()
        summary = create_points_session(client, points)
        sid = summary["session_id"]
        response = client.post(f"/v1/sessions/{sid}/cut", json={"mode": "auto"})
        assert response.status_code == 200
        body = response.json()
        assert body["k"] == 3
        graph = client.get(f"/v1/sessions/{sid}/graph").json()
        by_id = {c["id"]: c for c in graph["connections"]}
        assert {by_id[i]["mass_product"] for i in body["removed"]} \
            == expected["heavy_mass_products"]

    def test_toggle_top_torque_on_two_blobs(self, client):
        pts, _ = two_blobs(seed=4, sizes=(25, 25))
        summary = create_points_session(client, pts)
        sid = summary["session_id"]
        # start from an empty removal set: one cluster
        body = client.post(f"/v1/sessions/{sid}/cut",
                           json={"mode": "set", "ids": []}).json()
        assert body["k"] == 1
        graph = client.get(f"/v1/sessions/{sid}/graph").json()
        top = max(graph["connections"], key=lambda c: c["torque"])
        body = client.post(f"/v1/sessions/{sid}/cut",
                           json={"mode": "toggle", "id": top["id"]}).json()
        assert body["k"] == 2
        # toggling back restores one cluster
        body = client.post(f"/v1/sessions/{sid}/cut",
                           json={"mode": "toggle", "id": top["id"]}).json()
        assert body["k"] == 1

    def test_set_empty_is_one_cluster(self, client):
        pts, _ = two_blobs(seed=4, sizes=(10, 10))
        summary = create_points_session(client, pts)
        body = client.post(f"/v1/sessions/{summary['session_id']}/cut",
                           json={"mode": "set", "ids": []}).json()
        assert body["k"] == 1

    def test_set_is_idempotent(self, client):
        points, _ = galaxy_scene()
        summary = create_points_session(client, points)
        sid = summary["session_id"]
        removed = summary["removed"]
        first = client.post(f"/v1/sessions/{sid}/cut",
                            json={"mode": "set", "ids": removed}).json()
        second = client.post(f"/v1/sessions/{sid}/cut",
                             json={"mode": "set", "ids": removed}).json()
        assert first["labels"] == second["labels"]
        assert first["k"] == second["k"]
        assert second["version"] == first["version"] + 1  # versions still move

    def test_unknown_id_named(self, client):
        pts, _ = two_blobs(seed=4, sizes=(5, 5))
        summary = create_points_session(client, pts)
        response = client.post(f"/v1/sessions/{summary['session_id']}/cut",
                               json={"mode": "toggle", "id": 424242})
        assert response.status_code == 400
        assert "424242" in response.json()["message"]

    def test_topk(self, client):
        points, _ = galaxy_scene()
        summary = create_points_session(client, points)
        body = client.post(f"/v1/sessions/{summary['session_id']}/cut",
                           json={"mode": "topk", "k": 7}).json()
        assert body["k"] == 7

    def test_toggle_redundant_warns_and_keeps_k(self, client):
        # synthetic log with one redundant edge, injected into the store
        connections = (
            make_connection(0, 0, 0, 1, 1, 1, 1.0, sample_a=0, sample_b=1),
            make_connection(1, 0, 0, 2, 1, 1, 1.0, sample_a=0, sample_b=2),
            make_connection(2, 0, 1, 2, 1, 1, 1.0, redundant=True,
                            sample_a=1, sample_b=2),
        )
        result = TorqueResult(3, connections, (3, 1))
        app = create_app()
        session = app.state.store.create(result, None)
        local = TestClient(app)
        local.post(f"/v1/sessions/{session.id}/cut",
                   json={"mode": "set", "ids": []})
        before = local.get(f"/v1/sessions/{session.id}/partition").json()
        response = local.post(f"/v1/sessions/{session.id}/cut",
                              json={"mode": "toggle", "id": 2})
        body = response.json()
        assert body["k"] == before["k"] == 1
        assert body["warnings"] and "redundant" in body["warnings"][0]


class TestConcurrentCuts:
    def test_parallel_toggles_serialize(self, client):
        import threading
        points, _ = galaxy_scene()
        summary = create_points_session(client, points)
        sid = summary["session_id"]
        client.post(f"/v1/sessions/{sid}/cut", json={"mode": "set", "ids": []})
        graph = client.get(f"/v1/sessions/{sid}/graph").json()
        ids = [c["id"] for c in graph["connections"][:10]]

        def toggle(connection_id):
            response = client.post(f"/v1/sessions/{sid}/cut",
                                   json={"mode": "toggle", "id": connection_id})
            assert response.status_code == 200

        threads = [threading.Thread(target=toggle, args=(i,)) for i in ids]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        final = client.get(f"/v1/sessions/{sid}/partition").json()
        # distinct ids each toggled once: all end up removed, version counts all
        assert set(final["removed"]) == set(ids)
        assert final["version"] == 1 + len(ids)


class TestPartitionEndpoint:
    def test_matches_cut_state(self, client):
        points, _ = galaxy_scene()
        summary = create_points_session(client, points)
        sid = summary["session_id"]
        partition = client.get(f"/v1/sessions/{sid}/partition").json()
        assert partition["k"] == summary["k"] == 3
        assert sorted(partition["cluster_sizes"]) == [16, 17, 17]
        assert len(partition["labels"]) == 50

    def test_labels_overflow_to_file(self, tmp_path):
        app = create_app(inline_labels_max=5, labels_dir=str(tmp_path))
        local = TestClient(app)
        pts, _ = two_blobs(seed=4, sizes=(5, 5))
        response = local.post("/v1/sessions", json={"points": pts.tolist()})
        sid = response.json()["session_id"]
        partition = local.get(f"/v1/sessions/{sid}/partition").json()
        assert partition["labels"] is None
        assert partition["labels_path"]
        from torquecluster.io import load_labels
        assert len(load_labels(partition["labels_path"])) == 10


class TestProjection:
    def test_2d_passthrough(self, client):
        pts, _ = two_blobs(seed=4, sizes=(5, 5))
        summary = create_points_session(client, pts)
        body = client.get(f"/v1/sessions/{summary['session_id']}/projection").json()
        assert np.asarray(body["points"]) == pytest.approx(pts)

    def test_high_dimensional_pca(self, client, rng):
        pts = rng.random((12, 5))
        summary = create_points_session(client, pts)
        body = client.get(f"/v1/sessions/{summary['session_id']}/projection").json()
        from torquecluster import project_2d
        want = project_2d(Dataset(pts))
        assert np.asarray(body["points"]) == pytest.approx(want, abs=1e-12)

    def test_precomputed_session_409(self, client):
        response = client.post("/v1/sessions",
                               json={"matrix": [[0, 1], [1, 0]]})
        sid = response.json()["session_id"]
        projection = client.get(f"/v1/sessions/{sid}/projection")
        assert projection.status_code == 409
        assert projection.json()["code"] == "unsupported_mode"


class TestGammaEndpoint:
    def test_ranking_descends(self, client):
        points, _ = galaxy_scene()
        summary = create_points_session(client, points)
        body = client.get(f"/v1/sessions/{summary['session_id']}/gamma").json()
        torques = [r["torque"] for r in body["ranking"]]
        assert torques == sorted(torques, reverse=True)
        assert [r["rank"] for r in body["ranking"]][:3] == [1, 2, 3]


class TestSessionListing:
    def test_lists_created_sessions(self, client):
        pts, _ = two_blobs(seed=4, sizes=(5, 5))
        created = create_points_session(client, pts)
        listed = client.get("/v1/sessions").json()
        assert any(s["session_id"] == created["session_id"] for s in listed)
