"""Pipeline orchestration: feature generation, component selection, and
per-feature implementation, with bounded JSON repair and incremental
regeneration.

The engine is stateless between calls; all state lives in documents and
traces. Regeneration for the same document must be serialized by the caller
(the service holds a per-project write lock).
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

from .catalog import (
    Catalog,
    ComponentSpec,
    IconDef,
    SimplifiedCatalogView,
    lookup_full_specs,
    render_full_spec,
    simplify,
)
from .errors import LlmUnavailable, RepairExhausted, UnknownFeature, UnknownTypeName, ValidationFailed
from .ir import (
    ComponentInstance,
    FeatureOrigin,
    FeatureStatus,
    Frame,
    GuiDocument,
    GuiFeature,
    Violation,
    merge_feature_implementation,
    validate_document,
    validate_fragment,
)
from .llm import ChatExchange, DEFAULT_MAX_OUTPUT_TOKENS
from .prompts import render_template, template_exists
from .schemas import (
    FEATURE_IMPLEMENTATION,
    FEATURE_IMPLEMENTATION_SCHEMA,
    FEATURE_LIST,
    FEATURE_LIST_SCHEMA,
    SELECTION_LIST,
    SELECTION_LIST_SCHEMA,
    dump_schema,
)


class Stage(str, Enum):
    DECOMPOSE = "decompose"
    SELECT = "select"
    IMPLEMENT = "implement"
    REPAIR = "repair"


class StageOutcome(str, Enum):
    OK = "ok"
    REPAIRED = "repaired"
    FAILED = "failed"


@dataclass(frozen=True)
class PipelineConfig:
    max_repair_retries: int = 2
    max_output_tokens: int = DEFAULT_MAX_OUTPUT_TOKENS
    temperature: float | None = None
    feature_prompt_template: str = "decompose_features"
    selection_prompt_template: str = "select_components"
    implementation_prompt_template: str = "implement_feature"

    def __post_init__(self):
        if self.max_repair_retries < 0:
            raise ValueError("max_repair_retries must be >= 0")
        if self.max_output_tokens <= 0:
            raise ValueError("max_output_tokens must be positive")
        for tid in (self.feature_prompt_template, self.selection_prompt_template,
                    self.implementation_prompt_template):
            if not template_exists(tid):
                raise ValueError(f"prompt template {tid!r} does not resolve")


@dataclass(frozen=True)
class StageTrace:
    stage: Stage
    outcome: StageOutcome
    attempts: int
    exchanges: tuple[ChatExchange, ...] = ()
    feature_id: str | None = None
    warnings: tuple[str, ...] = ()
    error: str | None = None

    @property
    def exchange(self) -> ChatExchange | None:
        return self.exchanges[-1] if self.exchanges else None

    def to_dict(self) -> dict[str, Any]:
        return {
            "stage": self.stage.value,
            "outcome": self.outcome.value,
            "attempts": self.attempts,
            "feature_id": self.feature_id,
            "warnings": list(self.warnings),
            "error": self.error,
            "exchanges": [e.to_dict() for e in self.exchanges],
        }


_EMPTY_CATALOG = Catalog(components=(), icons=(), version="scoped")

_SLUG_RE = re.compile(r"[^a-z0-9]+")
_FENCE_RE = re.compile(r"^```[a-zA-Z0-9]*\s*|```\s*$")


def _slugify(name: str) -> str:
    slug = _SLUG_RE.sub("-", name.lower()).strip("-")
    return slug or "feature"


def _short_hash(seed: str) -> str:
    return hashlib.sha1(seed.encode("utf-8")).hexdigest()[:6]


def make_feature_id(name: str, ordinal: int) -> str:
    """Slugified name plus a short content-derived suffix.

    The suffix is derived from name and position rather than drawn randomly
    so that replaying the same fixture reproduces the same document bytes.
    """
    slug = _slugify(name)
    return f"{slug}-{_short_hash(f'{slug}:{ordinal}')}"


def make_doc_id(description: str) -> str:
    return "doc-" + hashlib.sha256(description.strip().encode("utf-8")).hexdigest()[:12]


def _strip_fences(text: str) -> str:
    text = text.strip()
    if text.startswith("```"):
        lines = text.splitlines()
        if len(lines) >= 2:
            body = lines[1:]
            if body and body[-1].strip() == "```":
                body = body[:-1]
            text = "\n".join(body).strip()
    return text


def _parse_json(raw: str) -> tuple[Any, list[Violation]]:
    try:
        return json.loads(_strip_fences(raw)), []
    except json.JSONDecodeError as exc:
        return None, [Violation(path="", rule="invalid-json", message=str(exc))]


def _repair_message(attempt: int, violations: list[Violation]) -> str:
    serialized = json.dumps([v.to_dict() for v in violations], ensure_ascii=False, indent=2)
    return (
        f"Your reply for attempt {attempt} failed validation.\n"
        f"Violations:\n{serialized}\n"
        "Reply again with corrected JSON only, matching the schema from the "
        "original request. No prose, no code fences."
    )


def _validated_json(
    llm,
    base_parts: tuple[tuple[str, str], ...],
    schema_id: str,
    scope_catalog: Catalog,
    cfg: PipelineConfig,
    extra_check: Callable[[Any], list[Violation]] | None = None,
) -> tuple[Any, list[ChatExchange]]:
    """Run the bounded validate/re-prompt loop around one completion.

    Hallucinated names (every violation rule == unknown-type) get exactly one
    amended retry; everything else consumes the normal repair budget.
    """
    parts = base_parts
    exchanges: list[ChatExchange] = []
    violations: list[Violation] = []
    raw = ""
    unknown_name_retries = 0
    for attempt in range(1 + cfg.max_repair_retries):
        exchange = llm.complete(parts, max_output_tokens=cfg.max_output_tokens,
                                temperature=cfg.temperature)
        exchanges.append(exchange)
        raw = exchange.response_text
        parsed, violations = _parse_json(raw)
        if not violations:
            report = validate_fragment(parsed, schema_id, scope_catalog)
            violations = list(report.violations)
            if not violations and extra_check is not None:
                violations = extra_check(parsed)
        if not violations:
            return parsed, exchanges
        if violations and all(v.rule == "unknown-type" for v in violations):
            unknown_name_retries += 1
            if unknown_name_retries > 1:
                break
        if attempt >= cfg.max_repair_retries:
            break
        parts = base_parts + (
            ("assistant", raw),
            ("user", _repair_message(attempt + 1, violations)),
        )
    raise RepairExhausted(raw, violations)


def _trace(stage: Stage, exchanges: list[ChatExchange], feature_id: str | None = None,
           warnings: tuple[str, ...] = (), error: str | None = None) -> StageTrace:
    if error is not None:
        outcome = StageOutcome.FAILED
    elif len(exchanges) > 1:
        outcome = StageOutcome.REPAIRED
    else:
        outcome = StageOutcome.OK
    return StageTrace(
        stage=stage,
        outcome=outcome,
        attempts=len(exchanges),
        exchanges=tuple(exchanges),
        feature_id=feature_id,
        warnings=warnings,
        error=error,
    )


# --- stage operations --------------------------------------------------------


def decompose(description: str, cfg: PipelineConfig, llm) -> tuple[list[GuiFeature], StageTrace]:
    """Turn a high-level description into pending GUI features."""
    if not description or not description.strip():
        raise ValueError("description must be non-empty")
    prompt = render_template(
        cfg.feature_prompt_template,
        description=description.strip(),
        schema=dump_schema(FEATURE_LIST_SCHEMA),
    )
    base_parts = (("user", prompt),)
    parsed, exchanges = _validated_json(llm, base_parts, FEATURE_LIST, _EMPTY_CATALOG, cfg)
    features = [
        GuiFeature(
            id=make_feature_id(item["name"], i),
            name=item["name"],
            description=item["description"],
            origin=FeatureOrigin.GENERATED,
            status=FeatureStatus.PENDING,
        )
        for i, item in enumerate(parsed)
    ]
    return features, _trace(Stage.DECOMPOSE, exchanges)


def _view_scope_catalog(view: SimplifiedCatalogView) -> Catalog:
    """Name-resolution catalog limited to the simplified view's type names."""
    specs = tuple(
        ComponentSpec(group=group, type_name=name, description="",
                      attributes=(), slots=(), schema_fragment={})
        for group, names in view.entries
        for name in names
    )
    return Catalog(components=specs, icons=(), version="view-scope")


def select_components(
    feature: GuiFeature,
    view: SimplifiedCatalogView,
    cfg: PipelineConfig,
    llm,
) -> tuple[list[str], StageTrace]:
    """Pick the component types needed to implement one feature.

    Returned names are validated against the view; hallucinated names get one
    amended retry with the violation list appended to the prompt.
    """
    if not view.entries:
        raise ValueError("simplified catalog view must be non-empty")
    prompt = render_template(
        cfg.selection_prompt_template,
        description=f"{feature.name}: {feature.description}",
        library_view=view.serialized_form,
        schema=dump_schema(SELECTION_LIST_SCHEMA),
    )
    base_parts = (("user", prompt),)
    parsed, exchanges = _validated_json(
        llm, base_parts, SELECTION_LIST, _view_scope_catalog(view), cfg,
    )
    return list(parsed["components"]), _trace(Stage.SELECT, exchanges, feature_id=feature.id)


@dataclass(frozen=True)
class Region:
    """Band of the frame a feature may occupy, communicated in the prompt."""
    x: float
    y: float
    width: float
    height: float

    def describe(self) -> str:
        return (f"x={_fmt(self.x)}, y={_fmt(self.y)}, "
                f"width={_fmt(self.width)}, height={_fmt(self.height)}")


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else f"{v:g}"


def feature_region(frame: Frame, index: int, count: int) -> Region:
    """Horizontal band assigned to feature `index` of `count`, in frame order."""
    if count <= 1:
        return Region(0, 0, frame.width, frame.height)
    band = frame.height / count
    return Region(0, round(band * index, 2), frame.width, round(band, 2))


def _norm_num(v):
    if isinstance(v, float) and v.is_integer():
        return int(v)
    return v


def _scoped_catalog(specs: list[ComponentSpec], icons: tuple[IconDef, ...]) -> Catalog:
    return Catalog(components=tuple(specs), icons=tuple(icons), version="selection-scope")


def _build_instances(
    items: list[dict],
    feature_id: str,
    frame: Frame,
    warnings: list[str],
    counter: list[int],
) -> tuple[ComponentInstance, ...]:
    built = []
    for item in items:
        counter[0] += 1
        x, y = item["posX"], item["posY"]
        w, h = item["width"], item["height"]
        cx, cy, cw, ch = _clamp_geometry(x, y, w, h, frame)
        if (cx, cy, cw, ch) != (x, y, w, h):
            warnings.append(
                f"{item['type_name']} geometry clamped from "
                f"({_fmt(x)},{_fmt(y)},{_fmt(w)},{_fmt(h)}) to "
                f"({_fmt(cx)},{_fmt(cy)},{_fmt(cw)},{_fmt(ch)})"
            )
        built.append(ComponentInstance(
            instance_id=f"{feature_id}-c{counter[0]}",
            type_name=item["type_name"],
            pos_x=_norm_num(cx),
            pos_y=_norm_num(cy),
            width=_norm_num(cw),
            height=_norm_num(ch),
            feature_id=feature_id,
            attributes=dict(item.get("attributes", {})),
            icon=item.get("icon"),
            slot=item.get("slot"),
            children=_build_instances(item.get("children", []), feature_id, frame,
                                      warnings, counter),
        ))
    return tuple(built)


def _clamp_geometry(x, y, w, h, frame: Frame):
    w = max(1.0, min(float(w), frame.width))
    h = max(1.0, min(float(h), frame.height))
    x = min(max(float(x), 0.0), frame.width - w)
    y = min(max(float(y), 0.0), frame.height - h)
    return x, y, w, h


def implement_feature(
    feature: GuiFeature,
    specs: list[ComponentSpec],
    icons: tuple[IconDef, ...],
    frame: Frame,
    cfg: PipelineConfig,
    llm,
    region: Region | None = None,
) -> tuple[list[ComponentInstance], StageTrace]:
    """Generate positioned instances for one feature from its retrieved specs.

    The prompt carries only the selected specs, the icon collection, and the
    fragment schema; never the whole catalog. Out-of-frame geometry is clamped
    and recorded as a warning rather than rejected.
    """
    if not specs:
        raise ValueError("specs must be non-empty (run selection and lookup first)")
    if frame.width <= 0 or frame.height <= 0:
        raise ValueError("frame dimensions must be positive")
    region = region or Region(0, 0, frame.width, frame.height)
    prompt = render_template(
        cfg.implementation_prompt_template,
        description=f"{feature.name}: {feature.description}",
        component_specs="\n\n".join(render_full_spec(s) for s in specs),
        icons=", ".join(i.name for i in icons) or "none",
        region=region.describe(),
        schema=dump_schema(FEATURE_IMPLEMENTATION_SCHEMA),
    )
    base_parts = (("user", prompt),)
    parsed, exchanges = _validated_json(
        llm, base_parts, FEATURE_IMPLEMENTATION, _scoped_catalog(specs, icons), cfg,
    )
    warnings: list[str] = []
    instances = _build_instances(parsed["components"], feature.id, frame, warnings, [0])
    trace = _trace(Stage.IMPLEMENT, exchanges, feature_id=feature.id,
                   warnings=tuple(warnings))
    return list(instances), trace


# --- document-level operations ------------------------------------------------


def _implement_into(
    doc: GuiDocument,
    feature: GuiFeature,
    catalog: Catalog,
    view: SimplifiedCatalogView,
    region: Region,
    cfg: PipelineConfig,
    llm,
) -> tuple[GuiDocument, list[StageTrace]]:
    """Select, retrieve, implement, and merge one feature. Raises on failure."""
    traces: list[StageTrace] = []
    names, select_trace = select_components(feature, view, cfg, llm)
    traces.append(select_trace)
    specs = lookup_full_specs(catalog, names)
    instances, impl_trace = implement_feature(
        feature, specs, catalog.icons, doc.frame, cfg, llm, region=region,
    )
    traces.append(impl_trace)
    merged = merge_feature_implementation(doc, feature.id, instances, catalog)
    return merged, traces


def _failed_trace(stage: Stage, feature_id: str, exc: Exception) -> StageTrace:
    return _trace(stage, [], feature_id=feature_id, error=f"{type(exc).__name__}: {exc}")


def run_pipeline(
    description: str,
    catalog: Catalog,
    frame: Frame,
    cfg: PipelineConfig,
    llm,
) -> tuple[GuiDocument, list[StageTrace]]:
    """Full decomposition pipeline over a fresh document.

    A failure while implementing one feature marks that feature failed in its
    trace and leaves it pending; the other features still complete.
    """
    features, decompose_trace = decompose(description, cfg, llm)
    traces: list[StageTrace] = [decompose_trace]
    doc = GuiDocument(
        doc_id=make_doc_id(description),
        frame=frame,
        description=description.strip(),
        features=tuple(features),
    )
    doc, feature_traces = generate_pending(doc, catalog, cfg, llm)
    traces.extend(feature_traces)
    report = validate_document(doc, catalog)
    if not report.valid:
        raise ValidationFailed(report)
    return doc, traces


def generate_pending(
    doc: GuiDocument,
    catalog: Catalog,
    cfg: PipelineConfig,
    llm,
) -> tuple[GuiDocument, list[StageTrace]]:
    """Implement every pending feature of the document, one at a time."""
    view = simplify(catalog)
    traces: list[StageTrace] = []
    count = len(doc.features)
    for index, feature in enumerate(list(doc.features)):
        if feature.status is not FeatureStatus.PENDING:
            continue
        region = feature_region(doc.frame, index, count)
        try:
            doc, feature_traces = _implement_into(doc, feature, catalog, view, region, cfg, llm)
            traces.extend(feature_traces)
        except (RepairExhausted, UnknownTypeName, ValidationFailed, LlmUnavailable) as exc:
            traces.append(_failed_trace(Stage.IMPLEMENT, feature.id, exc))
    return doc, traces


def regenerate_feature(
    doc: GuiDocument,
    feature_id: str,
    catalog: Catalog,
    cfg: PipelineConfig,
    llm,
) -> tuple[GuiDocument, list[StageTrace]]:
    """Re-run selection and implementation for exactly one feature.

    On any failure the input document is returned unchanged (same revision);
    on success only this feature's instances differ.
    """
    feature = doc.feature_by_id(feature_id)
    if feature is None:
        raise UnknownFeature(feature_id)
    view = simplify(catalog)
    index = next(i for i, f in enumerate(doc.features) if f.id == feature_id)
    region = feature_region(doc.frame, index, len(doc.features))
    try:
        new_doc, traces = _implement_into(doc, feature, catalog, view, region, cfg, llm)
    except (RepairExhausted, UnknownTypeName, ValidationFailed, LlmUnavailable) as exc:
        return doc, [_failed_trace(Stage.IMPLEMENT, feature_id, exc)]
    return new_doc, traces


# --- manual feature editing ----------------------------------------------------


def _unique_feature_id(doc: GuiDocument, name: str) -> str:
    existing = {f.id for f in doc.features}
    ordinal = len(doc.features)
    while True:
        fid = make_feature_id(name, ordinal)
        if fid not in existing:
            return fid
        ordinal += 1


def add_feature(doc: GuiDocument, name: str, description: str) -> GuiDocument:
    """Append a user-authored pending feature."""
    if not name.strip() or not description.strip():
        raise ValueError("feature name and description must be non-empty")
    feature = GuiFeature(
        id=_unique_feature_id(doc, name),
        name=name.strip(),
        description=description.strip(),
        origin=FeatureOrigin.USER_ADDED,
        status=FeatureStatus.PENDING,
    )
    return GuiDocument(
        doc_id=doc.doc_id,
        frame=doc.frame,
        description=doc.description,
        features=doc.features + (feature,),
        instances=doc.instances,
        revision=doc.revision + 1,
        ir_version=doc.ir_version,
    )


def edit_feature(
    doc: GuiDocument,
    feature_id: str,
    name: str | None = None,
    description: str | None = None,
) -> GuiDocument:
    """Edit a feature's text; an implemented feature goes stale, keeping its
    instances until regeneration replaces them."""
    feature = doc.feature_by_id(feature_id)
    if feature is None:
        raise UnknownFeature(feature_id)
    if name is not None and not name.strip():
        raise ValueError("feature name must be non-empty")
    if description is not None and not description.strip():
        raise ValueError("feature description must be non-empty")
    new_status = feature.status
    if feature.status is FeatureStatus.IMPLEMENTED:
        new_status = FeatureStatus.STALE
    updated = GuiFeature(
        id=feature.id,
        name=(name or feature.name).strip(),
        description=(description or feature.description).strip(),
        origin=FeatureOrigin.USER_EDITED,
        status=new_status,
    )
    return GuiDocument(
        doc_id=doc.doc_id,
        frame=doc.frame,
        description=doc.description,
        features=tuple(updated if f.id == feature_id else f for f in doc.features),
        instances=doc.instances,
        revision=doc.revision + 1,
        ir_version=doc.ir_version,
    )


def delete_feature(doc: GuiDocument, feature_id: str) -> GuiDocument:
    """Remove a feature and every instance it owns."""
    if doc.feature_by_id(feature_id) is None:
        raise UnknownFeature(feature_id)
    return GuiDocument(
        doc_id=doc.doc_id,
        frame=doc.frame,
        description=doc.description,
        features=tuple(f for f in doc.features if f.id != feature_id),
        instances=tuple(i for i in doc.instances if i.feature_id != feature_id),
        revision=doc.revision + 1,
        ir_version=doc.ir_version,
    )
