import threading
import time
import xml.etree.ElementTree as ET

import pytest
from fastapi.testclient import TestClient

import scripted_model as sm
from conftest import replay_gateway

from uidraft.ir import GuiDocument, validate_document
from uidraft.service import create_app


@pytest.fixture()
def app(tmp_path, catalog):
    return create_app(data_dir=tmp_path / "data", catalog=catalog,
                      gateway=replay_gateway("todo_app.jsonl"))


@pytest.fixture()
def client(app):
    return TestClient(app)


@pytest.fixture()
def edge_client(tmp_path, catalog):
    app = create_app(data_dir=tmp_path / "edge-data", catalog=catalog,
                     gateway=replay_gateway("edge_paths.jsonl"))
    return TestClient(app)


def make_project(client, description=sm.TODO_DESCRIPTION):
    resp = client.post("/projects", json={"description": description,
                                          "frame": {"width": 390, "height": 844}})
    assert resp.status_code == 201
    return resp.json()["project_id"]


def ready_project(client):
    """Project with decomposed features and a fully generated document."""
    pid = make_project(client)
    assert client.post(f"/projects/{pid}/decompose").status_code == 200
    resp = client.post(f"/projects/{pid}/generate")
    assert resp.status_code == 200
    return pid, resp.json()


# --- project lifecycle -----------------------------------------------------------


def test_create_project_empty_description_is_400(client):
    resp = client.post("/projects", json={"description": "  ",
                                          "frame": {"width": 390, "height": 844}})
    assert resp.status_code == 400
    assert resp.json()["code"] == "bad_request"


def test_create_and_fetch_project(client, catalog):
    pid = make_project(client)
    resp = client.get(f"/projects/{pid}")
    assert resp.status_code == 200
    body = resp.json()
    assert body["document"]["description"] == sm.TODO_DESCRIPTION
    doc = GuiDocument.from_dict(body["document"])
    assert validate_document(doc, catalog).valid


def test_missing_project_is_404(client):
    assert client.get("/projects/nope").status_code == 404
    assert client.post("/projects/nope/decompose").status_code == 404


def test_decompose_returns_feature_list(client):
    pid = make_project(client)
    resp = client.post(f"/projects/{pid}/decompose")
    assert resp.status_code == 200
    features = resp.json()["features"]
    assert len(features) == 5
    assert {f["status"] for f in features} == {"pending"}
    assert any(f["name"] == "Task List" for f in features)


def test_generate_implements_pending_features(client, catalog):
    pid, body = ready_project(client)
    doc = GuiDocument.from_dict(body["document"])
    assert all(f.status.value == "implemented" for f in doc.features)
    assert validate_document(doc, catalog).valid
    assert body["traces"]


def test_feature_edit_add_delete(client):
    pid, body = ready_project(client)
    features = body["document"]["features"]
    target = next(f for f in features if f["name"] == "Task List")

    resp = client.put(f"/projects/{pid}/features/{target['id']}",
                      json={"name": "Chore List"})
    assert resp.status_code == 200
    updated = next(f for f in resp.json()["document"]["features"]
                   if f["id"] == target["id"])
    assert updated["name"] == "Chore List"
    assert updated["status"] == "stale"

    resp = client.post(f"/projects/{pid}/features",
                       json={"name": "Dark mode toggle",
                             "description": "Switch between light and dark."})
    assert resp.status_code == 201
    added = next(f for f in resp.json()["document"]["features"]
                 if f["name"] == "Dark mode toggle")
    assert added["status"] == "pending" and added["origin"] == "user_added"

    resp = client.delete(f"/projects/{pid}/features/{added['id']}")
    assert resp.status_code == 200
    assert all(f["id"] != added["id"]
               for f in resp.json()["document"]["features"])


def test_edit_validations(client):
    pid, body = ready_project(client)
    fid = body["document"]["features"][0]["id"]
    assert client.put(f"/projects/{pid}/features/{fid}",
                      json={"name": " "}).status_code == 400
    assert client.put(f"/projects/{pid}/features/ghost",
                      json={"name": "x"}).status_code == 404
    assert client.post(f"/projects/{pid}/features",
                       json={"name": "", "description": "d"}).status_code == 400


# --- regeneration ------------------------------------------------------------------


def _search_feature(body):
    return next(f for f in body["document"]["features"]
                if f["name"] == "Search Tasks")


def test_regenerate_edited_feature_changes_one_preview_group(client):
    pid, body = ready_project(client)
    search = _search_feature(body)

    before = client.get(f"/projects/{pid}/preview.svg").text
    resp = client.put(f"/projects/{pid}/features/{search['id']}",
                      json={"description": sm.EDITED_SEARCH_DESCRIPTION})
    assert resp.status_code == 200

    resp = client.post(f"/projects/{pid}/features/{search['id']}/regenerate")
    assert resp.status_code == 200
    after = client.get(f"/projects/{pid}/preview.svg").text

    groups_before = _groups(before)
    groups_after = _groups(after)
    assert set(groups_before) == set(groups_after)
    changed = [gid for gid in groups_before if groups_before[gid] != groups_after[gid]]
    assert changed == [search["id"]]


def _groups(svg_text):
    root = ET.fromstring(svg_text)
    out = {}
    for el in root.iter():
        if el.tag.endswith("}g") and el.get("class") == "feature":
            out[el.get("id")] = ET.tostring(el)
    return out


def test_regenerate_unknown_feature_404(client):
    pid, _ = ready_project(client)
    assert client.post(f"/projects/{pid}/features/ghost/regenerate").status_code == 404


def test_failed_regeneration_is_502_and_document_survives(edge_client):
    pid = make_project(edge_client, sm.EDGE_DESCRIPTION)
    edge_client.post(f"/projects/{pid}/decompose")
    edge_client.post(f"/projects/{pid}/generate")
    body = edge_client.get(f"/projects/{pid}").json()
    never = next(f for f in body["document"]["features"]
                 if f["name"] == "Never Valid Demo")
    before_rev = body["document"]["revision"]

    resp = edge_client.post(f"/projects/{pid}/features/{never['id']}/regenerate")
    assert resp.status_code == 502
    assert resp.json()["code"] == "upstream_llm"

    after = edge_client.get(f"/projects/{pid}").json()
    assert after["document"]["revision"] == before_rev


def test_concurrent_regenerations_conflict(tmp_path, catalog, app):
    class SlowGateway:
        def __init__(self, inner):
            self.inner = inner

        def complete(self, parts, **kwargs):
            time.sleep(0.5)
            return self.inner.complete(parts, **kwargs)

    slow_app = create_app(data_dir=tmp_path / "slow-data", catalog=catalog,
                          gateway=SlowGateway(replay_gateway("todo_app.jsonl")))
    client = TestClient(slow_app)
    pid = make_project(client)
    client.post(f"/projects/{pid}/decompose")
    client.post(f"/projects/{pid}/generate")
    body = client.get(f"/projects/{pid}").json()
    fid = _search_feature(body)["id"]

    statuses = []
    barrier = threading.Barrier(2)

    def hit():
        local = TestClient(slow_app)
        barrier.wait()
        statuses.append(local.post(f"/projects/{pid}/features/{fid}/regenerate").status_code)

    threads = [threading.Thread(target=hit) for _ in range(2)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(statuses) == [200, 409]


def test_revision_precondition_header(client):
    pid, body = ready_project(client)
    fid = body["document"]["features"][0]["id"]
    resp = client.put(f"/projects/{pid}/features/{fid}",
                      json={"name": "Renamed"},
                      headers={"If-Match-Revision": "999"})
    assert resp.status_code == 409
    resp = client.put(
        f"/projects/{pid}/features/{fid}", json={"name": "Renamed"},
        headers={"If-Match-Revision": str(body["document"]["revision"])})
    assert resp.status_code == 200


# --- previews and catalog ------------------------------------------------------------


def test_preview_svg(client):
    pid, _ = ready_project(client)
    resp = client.get(f"/projects/{pid}/preview.svg")
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("image/svg+xml")
    assert resp.text.startswith("<?xml")


def test_layout_report_endpoint(client):
    pid, _ = ready_project(client)
    resp = client.get(f"/projects/{pid}/layout-report")
    assert resp.status_code == 200
    assert resp.json() == {"out_of_frame": [], "overlaps": [], "zero_area": []}


def test_catalog_simplified(client, catalog):
    resp = client.get("/catalog/simplified")
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["entries"]) >= 25
    assert body["serialized_form"].startswith("Button:")


def test_catalog_component_lookup(client):
    resp = client.get("/catalog/components/FloatingActionButton")
    assert resp.status_code == 200
    assert resp.json()["group"] == "Button"
    assert client.get("/catalog/components/HoloPanel").status_code == 404


def test_catalog_stats_endpoint(client):
    body = client.get("/catalog/stats").json()
    assert body["ratio"] >= 0.5


# --- consistency / persistence -------------------------------------------------------


def test_all_mutating_2xx_bodies_validate(client, catalog):
    pid, body = ready_project(client)
    mutations = [body]
    search = _search_feature(body)
    responses = [
        client.put(f"/projects/{pid}/features/{search['id']}",
                   json={"description": sm.EDITED_SEARCH_DESCRIPTION}),
        client.post(f"/projects/{pid}/features/{search['id']}/regenerate"),
        client.post(f"/projects/{pid}/features",
                    json={"name": "Extra", "description": "More stuff."}),
    ]
    for resp in responses:
        assert 200 <= resp.status_code < 300
        mutations.append(resp.json())
    for body in mutations:
        doc = GuiDocument.from_dict(body["document"])
        assert validate_document(doc, catalog).valid


def test_restart_preserves_accepted_mutations(tmp_path, catalog):
    data_dir = tmp_path / "persist-data"
    first = TestClient(create_app(data_dir=data_dir, catalog=catalog,
                                  gateway=replay_gateway("todo_app.jsonl")))
    pid, body = ready_project(first)

    second = TestClient(create_app(data_dir=data_dir, catalog=catalog,
                                   gateway=replay_gateway("todo_app.jsonl")))
    resp = second.get(f"/projects/{pid}")
    assert resp.status_code == 200
    assert resp.json()["document"] == body["document"]


def test_openapi_lists_documented_endpoints(app):
    paths = set(app.openapi()["paths"])
    for expected in (
        "/projects",
        "/projects/{project_id}",
        "/projects/{project_id}/decompose",
        "/projects/{project_id}/features",
        "/projects/{project_id}/features/{feature_id}",
        "/projects/{project_id}/generate",
        "/projects/{project_id}/features/{feature_id}/regenerate",
        "/projects/{project_id}/preview.svg",
        "/projects/{project_id}/layout-report",
        "/catalog/simplified",
        "/catalog/components/{type_name}",
    ):
        assert expected in paths
