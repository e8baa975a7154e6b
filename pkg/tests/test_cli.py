import json

import pytest
from click.testing import CliRunner

import scripted_model as sm
from conftest import FIXTURE_DIR

from uidraft.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def _write_description(tmp_path, text):
    path = tmp_path / "description.txt"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_generate_replay_writes_doc_and_svg(runner, tmp_path):
    desc = _write_description(tmp_path, sm.TODO_DESCRIPTION)
    out = tmp_path / "doc.json"
    svg = tmp_path / "preview.svg"
    result = runner.invoke(main, [
        "generate", "--description-file", desc,
        "--out", str(out), "--svg", str(svg),
        "--mode", "replay", "--fixtures", str(FIXTURE_DIR / "todo_app.jsonl"),
    ])
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_text())
    assert len(doc["features"]) == 5
    assert svg.read_text().startswith("<?xml")
    assert "5 features" in result.output


def test_generate_replay_requires_fixtures(runner, tmp_path):
    desc = _write_description(tmp_path, sm.TODO_DESCRIPTION)
    result = runner.invoke(main, ["generate", "--description-file", desc,
                                  "--mode", "replay"])
    assert result.exit_code == 2
    assert "--fixtures" in result.output


def test_generate_fixture_miss_fails_cleanly(runner, tmp_path):
    desc = _write_description(tmp_path, "a description nobody recorded")
    result = runner.invoke(main, [
        "generate", "--description-file", desc,
        "--out", str(tmp_path / "doc.json"),
        "--mode", "replay", "--fixtures", str(FIXTURE_DIR / "todo_app.jsonl"),
    ])
    assert result.exit_code == 1
    assert "generation failed" in result.output


def test_generate_bad_frame_is_usage_error(runner, tmp_path):
    desc = _write_description(tmp_path, sm.TODO_DESCRIPTION)
    result = runner.invoke(main, [
        "generate", "--description-file", desc, "--frame", "bananas",
        "--mode", "replay", "--fixtures", str(FIXTURE_DIR / "todo_app.jsonl"),
    ])
    assert result.exit_code == 2


def test_catalog_stats_reports_reduction(runner):
    result = runner.invoke(main, ["catalog", "stats"])
    assert result.exit_code == 0, result.output
    ratio = float(result.output.strip().splitlines()[-1].split()[-1])
    assert ratio >= 0.5


def test_validate_valid_doc_exits_zero(runner, tmp_path, todo_doc):
    doc, _ = todo_doc
    path = tmp_path / "doc.json"
    path.write_text(doc.to_json())
    result = runner.invoke(main, ["validate", str(path)])
    assert result.exit_code == 0
    assert "valid" in result.output


def test_validate_broken_doc_exits_one(runner, tmp_path, todo_doc):
    doc, _ = todo_doc
    payload = doc.to_dict()
    payload["instances"][0]["type_name"] = "NoSuchWidget"
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(payload))
    result = runner.invoke(main, ["validate", str(path)])
    assert result.exit_code == 1
    assert "unknown-type" in result.output
