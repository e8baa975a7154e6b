import dataclasses
import xml.etree.ElementTree as ET

import pytest

import scripted_model as sm
from conftest import FRAME, replay_gateway

from uidraft.engine import run_pipeline
from uidraft.errors import InvalidDocument
from uidraft.ir import ComponentInstance, FeatureStatus, Frame, GuiDocument, GuiFeature
from uidraft.render import LayoutReport, RenderOptions, layout_report, render_svg


def _local(tag):
    return tag.rsplit("}", 1)[-1]


def _parse_instances(svg_text):
    """instance id -> (x, y, w, h) recovered from each instance's bbox rect."""
    root = ET.fromstring(svg_text)
    out = {}
    for el in root.iter():
        if _local(el.tag) == "g" and el.get("class") == "instance":
            rect = next(c for c in el if _local(c.tag) == "rect")
            out[el.get("data-instance-id")] = tuple(
                float(rect.get(k)) for k in ("x", "y", "width", "height"))
    return out


def _group_ids(svg_text):
    root = ET.fromstring(svg_text)
    return {el.get("id") for el in root.iter()
            if _local(el.tag) == "g" and el.get("class") == "feature"}


def empty_doc():
    return GuiDocument(doc_id="d", frame=Frame(200, 100), description="x")


def button_doc():
    feature = GuiFeature(id="f1", name="Action", description="one button",
                         status=FeatureStatus.IMPLEMENTED)
    inst = ComponentInstance(
        instance_id="i1", type_name="ElevatedButton", pos_x=10, pos_y=20,
        width=120, height=40, feature_id="f1", attributes={"label": "Press me"},
    )
    return GuiDocument(doc_id="d", frame=Frame(390, 200), description="x",
                       features=(feature,), instances=(inst,))


# --- render_svg --------------------------------------------------------------


def test_empty_document_renders_frame_only(catalog):
    svg = render_svg(empty_doc(), catalog)
    root = ET.fromstring(svg)
    rects = [el for el in root.iter() if _local(el.tag) == "rect"]
    assert len(rects) == 1 and rects[0].get("class") == "frame"
    assert rects[0].get("width") == "200" and rects[0].get("height") == "100"
    assert _group_ids(svg) == set()


def test_button_renders_at_scaled_coordinates(catalog):
    svg = render_svg(button_doc(), catalog, RenderOptions(scale=2.0))
    geometry = _parse_instances(svg)
    assert geometry["i1"] == (20.0, 40.0, 240.0, 80.0)
    assert "Press me" in svg


def test_render_is_deterministic(catalog, todo_doc):
    doc, _ = todo_doc
    assert render_svg(doc, catalog) == render_svg(doc, catalog)


def test_invalid_document_rejected(catalog):
    bad_inst = dataclasses.replace(button_doc().instances[0], type_name="Nope")
    bad = dataclasses.replace(button_doc(), instances=(bad_inst,))
    with pytest.raises(InvalidDocument):
        render_svg(bad, catalog)


def test_bad_scale_rejected():
    with pytest.raises(ValueError):
        RenderOptions(scale=0)
    with pytest.raises(ValueError):
        RenderOptions(scale=float("inf"))


@pytest.mark.parametrize("fixture,description", [
    ("todo_app.jsonl", sm.TODO_DESCRIPTION),
    ("login.jsonl", sm.LOGIN_DESCRIPTION),
    ("edge_paths.jsonl", sm.EDGE_DESCRIPTION),
])
@pytest.mark.parametrize("scale", [1.0, 2.5])
def test_geometry_fidelity_parse_back(catalog, pipeline_cfg, fixture, description, scale):
    doc, _ = run_pipeline(description, catalog, FRAME, pipeline_cfg,
                          replay_gateway(fixture))
    svg = render_svg(doc, catalog, RenderOptions(scale=scale))
    geometry = _parse_instances(svg)

    def check(inst):
        x, y, w, h = geometry[inst.instance_id]
        assert x == pytest.approx(inst.pos_x * scale, abs=1e-3)
        assert y == pytest.approx(inst.pos_y * scale, abs=1e-3)
        assert w == pytest.approx(inst.width * scale, abs=1e-3)
        assert h == pytest.approx(inst.height * scale, abs=1e-3)
        for child in inst.children:
            check(child)

    assert geometry
    for inst in doc.instances:
        check(inst)


def test_feature_groups_match_implemented_features(catalog, pipeline_cfg, edge_gateway):
    doc, _ = run_pipeline(sm.EDGE_DESCRIPTION, catalog, FRAME, pipeline_cfg,
                          edge_gateway)
    implemented = {f.id for f in doc.features if f.status is FeatureStatus.IMPLEMENTED}
    assert _group_ids(render_svg(doc, catalog)) == implemented


def test_feature_outlines_toggle(catalog, todo_doc):
    doc, _ = todo_doc
    plain = render_svg(doc, catalog)
    outlined = render_svg(doc, catalog, RenderOptions(show_feature_outlines=True))
    assert "feature-outline" not in plain
    assert outlined.count('class="feature-outline"') == len(
        {f.id for f in doc.features if doc.instances_of(f.id)})


def test_every_fixture_document_renders(catalog, todo_doc):
    doc, _ = todo_doc
    svg = render_svg(doc, catalog)
    ET.fromstring(svg)  # well-formed XML
    assert svg.startswith("<?xml")


# --- layout_report -------------------------------------------------------------


def _doc_with_boxes(boxes):
    """boxes: list of (feature_id, instance_id, x, y, w, h)."""
    fids = {b[0] for b in boxes}
    features = tuple(
        GuiFeature(id=fid, name=fid, description="x", status=FeatureStatus.IMPLEMENTED)
        for fid in sorted(fids))
    instances = tuple(
        ComponentInstance(instance_id=iid, type_name="Label", pos_x=x, pos_y=y,
                          width=w, height=h, feature_id=fid,
                          attributes={"text": "t"})
        for fid, iid, x, y, w, h in boxes)
    return GuiDocument(doc_id="d", frame=Frame(390, 844), description="x",
                       features=features, instances=instances)


def test_disjoint_instances_clean_report():
    doc = _doc_with_boxes([("fa", "a", 0, 0, 50, 20), ("fb", "b", 100, 100, 50, 20)])
    assert layout_report(doc) == LayoutReport()


def test_cross_feature_overlap_reported():
    doc = _doc_with_boxes([
        ("fa", "a", 0, 0, 100, 100),
        ("fb", "b", 50, 50, 100, 100),
    ])
    assert layout_report(doc).overlaps == (("a", "b"),)


def test_same_feature_overlap_not_reported():
    doc = _doc_with_boxes([
        ("fa", "a", 0, 0, 100, 100),
        ("fa", "b", 50, 50, 100, 100),
    ])
    assert layout_report(doc).overlaps == ()


def test_out_of_frame_reported():
    doc = _doc_with_boxes([("fa", "a", 380, 0, 50, 20)])
    assert layout_report(doc).out_of_frame == ("a",)


def test_zero_area_reported():
    doc = _doc_with_boxes([("fa", "a", 10, 10, 0, 20)])
    report = layout_report(doc)
    assert report.zero_area == ("a",)


def test_touching_edges_do_not_overlap():
    doc = _doc_with_boxes([
        ("fa", "a", 0, 0, 50, 50),
        ("fb", "b", 50, 0, 50, 50),
    ])
    assert layout_report(doc).overlaps == ()


def test_todo_document_layout_is_clean(todo_doc):
    doc, _ = todo_doc
    assert layout_report(doc) == LayoutReport()
