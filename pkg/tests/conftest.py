from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
REPO_DIR = TESTS_DIR.parent
FIXTURE_DIR = TESTS_DIR / "fixtures"

sys.path.insert(0, str(TESTS_DIR))

import scripted_model as sm  # noqa: E402

from uidraft.catalog import bundled_catalog  # noqa: E402
from uidraft.engine import PipelineConfig, run_pipeline  # noqa: E402
from uidraft.ir import Frame  # noqa: E402
from uidraft.llm import ChatExchange, Gateway, GatewayConfig, fixture_key  # noqa: E402

FRAME = Frame(width=390, height=844)


@pytest.fixture(scope="session")
def catalog():
    return bundled_catalog()


@pytest.fixture(scope="session")
def pipeline_cfg():
    return PipelineConfig()


def replay_gateway(fixture_name: str) -> Gateway:
    return Gateway(
        GatewayConfig(model_id=sm.MODEL_ID),
        mode="replay",
        fixture_path=FIXTURE_DIR / fixture_name,
    )


@pytest.fixture()
def todo_gateway():
    return replay_gateway("todo_app.jsonl")


@pytest.fixture()
def edge_gateway():
    return replay_gateway("edge_paths.jsonl")


@pytest.fixture()
def login_gateway():
    return replay_gateway("login.jsonl")


@pytest.fixture()
def todo_doc(catalog, pipeline_cfg, todo_gateway):
    doc, traces = run_pipeline(sm.TODO_DESCRIPTION, catalog, FRAME, pipeline_cfg, todo_gateway)
    return doc, traces


class SyntheticGateway:
    """Deterministic no-network gateway for property tests.

    Answers any selection prompt with a small valid type list and any
    implementation prompt with geometry derived from the prompt hash, so
    regenerating the same feature twice gives identical output while two
    different features get different output.
    """

    def __init__(self, frame: Frame = FRAME):
        self.frame = frame
        self.exchanges: list[ChatExchange] = []

    def complete(self, prompt_parts, max_output_tokens=None, temperature=None):
        text = "\n".join(t for _, t in prompt_parts)
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        if "Select the component types" in text:
            response = json.dumps({"components": ["Label", "ElevatedButton"]})
        elif "implementing one feature" in text:
            seed = int(digest[:8], 16)
            x = 8 + seed % max(1, int(self.frame.width / 2))
            y = 8 + (seed >> 8) % max(1, int(self.frame.height / 2))
            response = json.dumps({"components": [
                {"type_name": "Label", "posX": x, "posY": y, "width": 120, "height": 20,
                 "attributes": {"text": f"text-{digest[:6]}"}},
                {"type_name": "ElevatedButton", "posX": x, "posY": y + 28, "width": 100,
                 "height": 36, "attributes": {"label": f"act-{digest[:4]}"}},
            ]})
        elif "Break this description down" in text:
            response = json.dumps([
                {"name": "Alpha Panel", "description": "First generated feature."},
                {"name": "Beta Panel", "description": "Second generated feature."},
            ])
        else:
            raise AssertionError("unclassifiable prompt")
        exchange = ChatExchange(
            exchange_id="syn-" + fixture_key(tuple(prompt_parts))[:12],
            prompt_parts=tuple(prompt_parts),
            response_text=response,
            prompt_tokens=0,
            completion_tokens=0,
            mode="replay",
            model_id="synthetic",
            timestamp="2025-01-01T00:00:00Z",
        )
        self.exchanges.append(exchange)
        return exchange


@pytest.fixture()
def synthetic_gateway():
    return SyntheticGateway()
