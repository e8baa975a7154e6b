#!/usr/bin/env python3
"""Record a real service session for the frontend contract tests.

Drives the live FastAPI app (replay-mode gateway, fixtures from tests/)
through the same flow the web UI performs, and stores every request and
response under frontend/tests/fixtures/session.json. The frontend test
suite replays these responses through a stubbed fetch, so the UI is tested
against genuine backend payloads without running Python.

Run from the repo root:

    python3 scripts/record_ui_session.py
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "tests"))

import scripted_model as sm  # noqa: E402
from fastapi.testclient import TestClient  # noqa: E402

from uidraft.catalog import bundled_catalog  # noqa: E402
from uidraft.llm import Gateway, GatewayConfig  # noqa: E402
from uidraft.service import create_app  # noqa: E402

OUT = REPO / "frontend" / "tests" / "fixtures" / "session.json"

recorded = []


def call(client, method, path, body=None):
    resp = client.request(method, path, json=body)
    recorded.append({
        "request": {"method": method, "path": path, "body": body},
        "response": {
            "status": resp.status_code,
            "contentType": resp.headers.get("content-type", ""),
            "text": resp.text,
        },
    })
    assert resp.status_code < 500, f"{method} {path} -> {resp.status_code}"
    return resp


def main():
    gateway = Gateway(GatewayConfig(model_id=sm.MODEL_ID), mode="replay",
                      fixture_path=REPO / "tests" / "fixtures" / "todo_app.jsonl")
    with tempfile.TemporaryDirectory() as data_dir:
        app = create_app(data_dir=data_dir, catalog=bundled_catalog(), gateway=gateway)
        client = TestClient(app)

        resp = call(client, "POST", "/projects",
                    {"description": sm.TODO_DESCRIPTION,
                     "frame": {"width": 390, "height": 844}})
        pid = resp.json()["project_id"]

        call(client, "POST", f"/projects/{pid}/decompose")
        resp = call(client, "POST", f"/projects/{pid}/generate")
        features = resp.json()["document"]["features"]
        search = next(f for f in features if f["name"] == "Search Tasks")

        call(client, "GET", f"/projects/{pid}")
        call(client, "GET", f"/projects/{pid}/preview.svg")
        call(client, "GET", f"/projects/{pid}/layout-report")

        call(client, "PUT", f"/projects/{pid}/features/{search['id']}",
             {"description": sm.EDITED_SEARCH_DESCRIPTION})
        call(client, "POST", f"/projects/{pid}/features/{search['id']}/regenerate")
        call(client, "GET", f"/projects/{pid}/preview.svg")
        call(client, "GET", f"/projects/{pid}/layout-report")

        resp = call(client, "POST", f"/projects/{pid}/features",
                    {"name": "Dark mode toggle",
                     "description": "Switch between light and dark themes."})
        added = next(f for f in resp.json()["document"]["features"]
                     if f["name"] == "Dark mode toggle")
        call(client, "DELETE", f"/projects/{pid}/features/{added['id']}")

        call(client, "GET", "/catalog/simplified")
        # An error path the UI must surface rather than swallow.
        call(client, "POST", "/projects",
             {"description": "  ", "frame": {"width": 390, "height": 844}})

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"exchanges": recorded}, indent=2) + "\n",
                   encoding="utf-8")
    print(f"wrote {OUT} ({len(recorded)} exchanges)")


if __name__ == "__main__":
    main()
