#!/usr/bin/env python3
"""Regenerate the committed replay fixtures under tests/fixtures/.

Runs the real pipeline in record mode against the scripted model (fixed
clock, deterministic ids), so re-running this script must produce
byte-identical files. Run from the repo root:

    python3 scripts/record_fixtures.py
"""

from __future__ import annotations

import sys
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "tests"))

import scripted_model as sm  # noqa: E402

from uidraft.catalog import bundled_catalog  # noqa: E402
from uidraft.engine import PipelineConfig, decompose, edit_feature, regenerate_feature, run_pipeline  # noqa: E402
from uidraft.ir import Frame  # noqa: E402
from uidraft.llm import Gateway, GatewayConfig  # noqa: E402

FIXTURE_DIR = REPO / "tests" / "fixtures"
FRAME = Frame(width=390, height=844)


def recording_gateway(path: Path) -> Gateway:
    return Gateway(
        GatewayConfig(model_id=sm.MODEL_ID),
        mode="record",
        fixture_path=path,
        transport=sm.scripted_transport,
        clock=sm.FIXED_CLOCK,
    )


def record_todo_app(catalog, cfg):
    path = FIXTURE_DIR / "todo_app.jsonl"
    path.unlink(missing_ok=True)
    gw = recording_gateway(path)
    doc, traces = run_pipeline(sm.TODO_DESCRIPTION, catalog, FRAME, cfg, gw)
    assert all(t.outcome.value != "failed" for t in traces), "todo pipeline must be clean"
    # The regeneration scenario: the user rewrites the search feature, then
    # regenerates it, which records the amended selection/implementation.
    search = next(f for f in doc.features if f.name == "Search Tasks")
    edited = edit_feature(doc, search.id, description=sm.EDITED_SEARCH_DESCRIPTION)
    regenerated, regen_traces = regenerate_feature(edited, search.id, catalog, cfg, gw)
    assert regenerated.revision > edited.revision, "regeneration must succeed"
    print(f"recorded {path.name}: {len(doc.features)} features, "
          f"{len(regenerated.instances)} instances after regen")


def record_login(catalog, cfg):
    path = FIXTURE_DIR / "login.jsonl"
    path.unlink(missing_ok=True)
    gw = recording_gateway(path)
    doc, _ = run_pipeline(sm.LOGIN_DESCRIPTION, catalog, FRAME, cfg, gw)
    assert len(doc.instances) == 3
    print(f"recorded {path.name}: {len(doc.instances)} instances")


def record_edge_paths(catalog, cfg):
    path = FIXTURE_DIR / "edge_paths.jsonl"
    path.unlink(missing_ok=True)
    gw = recording_gateway(path)
    doc, traces = run_pipeline(sm.EDGE_DESCRIPTION, catalog, FRAME, cfg, gw)
    failed = [t for t in traces if t.outcome.value == "failed"]
    assert len(failed) == 2, f"expected 2 failing features, got {len(failed)}"
    # Decompose-level repair: first reply is malformed JSON, the retry parses.
    features, trace = decompose(sm.BROKEN_JSON_DESCRIPTION, cfg, gw)
    assert trace.outcome.value == "repaired" and trace.attempts == 2
    # A description that decomposes into zero features.
    empty_doc, empty_traces = run_pipeline(sm.EMPTY_DESCRIPTION, catalog, FRAME, cfg, gw)
    assert empty_doc.features == () and len(empty_traces) == 1
    print(f"recorded {path.name}: {len(doc.features)} features, "
          f"{len(failed)} failed stages, decompose repair ok")


def main():
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    catalog = bundled_catalog()
    cfg = PipelineConfig()
    record_todo_app(catalog, cfg)
    record_login(catalog, cfg)
    record_edge_paths(catalog, cfg)


if __name__ == "__main__":
    main()
