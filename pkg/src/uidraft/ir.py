"""Render-ready GUI prototype representation and its validation.

Documents are immutable values; every mutation returns a new document with
an incremented revision. Validation never repairs anything: it reports every
violation and leaves correction to the caller.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Iterator

from .catalog import Catalog
from .errors import DocumentMismatch, UnknownFeature, UnknownSchemaId, ValidationFailed
from .schemas import (
    DOCUMENT_SCHEMA,
    FEATURE_IMPLEMENTATION,
    FRAGMENT_SCHEMAS,
    IR_VERSION,
    SELECTION_LIST,
    schema_violations,
)


class FeatureOrigin(str, Enum):
    GENERATED = "generated"
    USER_ADDED = "user_added"
    USER_EDITED = "user_edited"


class FeatureStatus(str, Enum):
    PENDING = "pending"
    IMPLEMENTED = "implemented"
    STALE = "stale"


@dataclass(frozen=True)
class GuiFeature:
    id: str
    name: str
    description: str
    origin: FeatureOrigin = FeatureOrigin.GENERATED
    status: FeatureStatus = FeatureStatus.PENDING

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "name": self.name,
            "description": self.description,
            "origin": self.origin.value,
            "status": self.status.value,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "GuiFeature":
        return cls(
            id=d["id"],
            name=d["name"],
            description=d["description"],
            origin=FeatureOrigin(d["origin"]),
            status=FeatureStatus(d["status"]),
        )


@dataclass(frozen=True)
class Frame:
    width: float
    height: float

    def to_dict(self) -> dict[str, float]:
        return {"width": self.width, "height": self.height}


@dataclass(frozen=True)
class ComponentInstance:
    instance_id: str
    type_name: str
    pos_x: float
    pos_y: float
    width: float
    height: float
    feature_id: str
    attributes: dict[str, Any] = field(default_factory=dict)
    icon: str | None = None
    slot: str | None = None
    children: tuple["ComponentInstance", ...] = ()

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "instance_id": self.instance_id,
            "feature_id": self.feature_id,
            "type_name": self.type_name,
            "posX": self.pos_x,
            "posY": self.pos_y,
            "width": self.width,
            "height": self.height,
        }
        if self.attributes:
            d["attributes"] = self.attributes
        if self.icon is not None:
            d["icon"] = self.icon
        if self.slot is not None:
            d["slot"] = self.slot
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ComponentInstance":
        return cls(
            instance_id=d["instance_id"],
            feature_id=d["feature_id"],
            type_name=d["type_name"],
            pos_x=d["posX"],
            pos_y=d["posY"],
            width=d["width"],
            height=d["height"],
            attributes=dict(d.get("attributes", {})),
            icon=d.get("icon"),
            slot=d.get("slot"),
            children=tuple(cls.from_dict(c) for c in d.get("children", [])),
        )


@dataclass(frozen=True)
class GuiDocument:
    doc_id: str
    frame: Frame
    description: str
    features: tuple[GuiFeature, ...] = ()
    instances: tuple[ComponentInstance, ...] = ()
    revision: int = 0
    ir_version: str = IR_VERSION

    def feature_by_id(self, feature_id: str) -> GuiFeature | None:
        for f in self.features:
            if f.id == feature_id:
                return f
        return None

    def instances_of(self, feature_id: str) -> tuple[ComponentInstance, ...]:
        return tuple(i for i in self.instances if i.feature_id == feature_id)

    def to_dict(self) -> dict[str, Any]:
        return {
            "ir_version": self.ir_version,
            "doc_id": self.doc_id,
            "frame": self.frame.to_dict(),
            "description": self.description,
            "revision": self.revision,
            "features": [f.to_dict() for f in self.features],
            "instances": [i.to_dict() for i in self.instances],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "GuiDocument":
        return cls(
            doc_id=d["doc_id"],
            frame=Frame(width=d["frame"]["width"], height=d["frame"]["height"]),
            description=d["description"],
            features=tuple(GuiFeature.from_dict(f) for f in d["features"]),
            instances=tuple(ComponentInstance.from_dict(i) for i in d["instances"]),
            revision=d["revision"],
            ir_version=d["ir_version"],
        )

    @classmethod
    def from_json(cls, text: str) -> "GuiDocument":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Violation:
    path: str
    rule: str
    message: str

    def to_dict(self) -> dict[str, str]:
        return {"path": self.path, "rule": self.rule, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict[str, Any]:
        return {"valid": self.valid, "violations": [v.to_dict() for v in self.violations]}


def _walk_instances(instances, pointer_prefix: str) -> Iterator[tuple[ComponentInstance, str]]:
    for i, inst in enumerate(instances):
        pointer = f"{pointer_prefix}/{i}"
        yield inst, pointer
        yield from _walk_instances(inst.children, pointer + "/children")


def _instance_violations(inst: ComponentInstance, pointer: str, catalog: Catalog) -> list[Violation]:
    found: list[Violation] = []
    spec = catalog.spec_for(inst.type_name)
    if spec is None:
        found.append(Violation(
            path=f"{pointer}/type_name",
            rule="unknown-type",
            message=f"component type {inst.type_name!r} is not in the catalog",
        ))
        return found
    for raw in schema_violations(inst.to_dict(), spec.schema_fragment, base_pointer=pointer):
        found.append(Violation(**raw))
    if inst.icon is not None and inst.icon not in catalog.icon_names():
        found.append(Violation(
            path=f"{pointer}/icon",
            rule="unknown-icon",
            message=f"icon {inst.icon!r} is not in the catalog",
        ))
    if inst.children and not spec.slots:
        found.append(Violation(
            path=f"{pointer}/children",
            rule="no-slots",
            message=f"{inst.type_name} declares no slots but has children",
        ))
    for j, child in enumerate(inst.children):
        if child.slot is not None and child.slot not in spec.slots:
            found.append(Violation(
                path=f"{pointer}/children/{j}/slot",
                rule="unknown-slot",
                message=f"slot {child.slot!r} not declared by {inst.type_name}",
            ))
    return found


def validate_document(doc: GuiDocument, catalog: Catalog) -> ValidationReport:
    """Check structure, referential integrity, and per-instance schemas.

    Every violation is reported; nothing short-circuits.
    """
    found: list[Violation] = []
    d = doc.to_dict()
    for raw in schema_violations(d, DOCUMENT_SCHEMA):
        found.append(Violation(**raw))

    seen_feature_ids: set[str] = set()
    for i, f in enumerate(doc.features):
        if f.id in seen_feature_ids:
            found.append(Violation(
                path=f"/features/{i}/id",
                rule="duplicate-id",
                message=f"feature id {f.id!r} is not unique",
            ))
        seen_feature_ids.add(f.id)

    seen_instance_ids: set[str] = set()
    for inst, pointer in _walk_instances(doc.instances, "/instances"):
        if inst.instance_id in seen_instance_ids:
            found.append(Violation(
                path=f"{pointer}/instance_id",
                rule="duplicate-id",
                message=f"instance id {inst.instance_id!r} is not unique",
            ))
        seen_instance_ids.add(inst.instance_id)
        if inst.feature_id not in seen_feature_ids:
            found.append(Violation(
                path=f"{pointer}/feature_id",
                rule="unknown-feature",
                message=f"instance references missing feature {inst.feature_id!r}",
            ))
        found.extend(_instance_violations(inst, pointer, catalog))

    owners = {i.feature_id for i in doc.instances}
    for i, f in enumerate(doc.features):
        if f.status is FeatureStatus.IMPLEMENTED and f.id not in owners:
            found.append(Violation(
                path=f"/features/{i}/status",
                rule="feature-without-instances",
                message=f"implemented feature {f.id!r} owns no instances",
            ))

    return ValidationReport(violations=tuple(found))


def _raw_instance_violations(raw: Any, pointer: str, catalog: Catalog) -> list[Violation]:
    """Catalog-aware checks for one raw (un-identified) instance dict."""
    found: list[Violation] = []
    if not isinstance(raw, dict):
        return found
    type_name = raw.get("type_name")
    if not isinstance(type_name, str):
        return found
    spec = catalog.spec_for(type_name)
    if spec is None:
        found.append(Violation(
            path=f"{pointer}/type_name",
            rule="unknown-type",
            message=f"component type {type_name!r} is not in the catalog",
        ))
        return found
    for v in schema_violations(raw, spec.schema_fragment, base_pointer=pointer):
        found.append(Violation(**v))
    icon = raw.get("icon")
    if isinstance(icon, str) and icon not in catalog.icon_names():
        found.append(Violation(
            path=f"{pointer}/icon",
            rule="unknown-icon",
            message=f"icon {icon!r} is not in the catalog",
        ))
    children = raw.get("children")
    if isinstance(children, list):
        for j, child in enumerate(children):
            if isinstance(child, dict):
                slot = child.get("slot")
                if isinstance(slot, str) and slot not in spec.slots:
                    found.append(Violation(
                        path=f"{pointer}/children/{j}/slot",
                        rule="unknown-slot",
                        message=f"slot {slot!r} not declared by {type_name}",
                    ))
            found.extend(_raw_instance_violations(child, f"{pointer}/children/{j}", catalog))
    return found


def validate_fragment(raw: Any, expected: str, catalog: Catalog) -> ValidationReport:
    """Validate raw model output against one of the fragment schemas.

    `expected` is one of feature-list, selection-list, feature-implementation.
    Beyond the schema itself, catalog references (type names, icons, slots)
    are resolved so the repair loop can report hallucinated names.
    """
    if expected not in FRAGMENT_SCHEMAS:
        raise UnknownSchemaId(expected)
    found = [Violation(**v) for v in schema_violations(raw, FRAGMENT_SCHEMAS[expected])]

    if expected == SELECTION_LIST and isinstance(raw, dict):
        names = raw.get("components")
        if isinstance(names, list):
            for i, name in enumerate(names):
                if isinstance(name, str) and catalog.spec_for(name) is None:
                    found.append(Violation(
                        path=f"/components/{i}",
                        rule="unknown-type",
                        message=f"component type {name!r} is not in the catalog",
                    ))
    elif expected == FEATURE_IMPLEMENTATION and isinstance(raw, dict):
        items = raw.get("components")
        if isinstance(items, list):
            for i, inst in enumerate(items):
                found.extend(_raw_instance_violations(inst, f"/components/{i}", catalog))

    return ValidationReport(violations=tuple(found))


def merge_feature_implementation(
    doc: GuiDocument,
    feature_id: str,
    instances: list[ComponentInstance],
    catalog: Catalog,
) -> GuiDocument:
    """Replace one feature's instances, mark it implemented, bump revision.

    All other features' instances are carried over untouched. The incoming
    instances must validate against the catalog and must be non-empty (an
    implemented feature owns at least one instance).
    """
    feature = doc.feature_by_id(feature_id)
    if feature is None:
        raise UnknownFeature(feature_id)

    found: list[Violation] = []
    if not instances:
        found.append(Violation(
            path="/instances",
            rule="feature-without-instances",
            message="an implemented feature must own at least one instance",
        ))
    for i, inst in enumerate(instances):
        if inst.feature_id != feature_id:
            found.append(Violation(
                path=f"/instances/{i}/feature_id",
                rule="wrong-feature",
                message=f"instance tagged {inst.feature_id!r}, expected {feature_id!r}",
            ))
    for inst, pointer in _walk_instances(instances, "/instances"):
        found.extend(_instance_violations(inst, pointer, catalog))
    if found:
        raise ValidationFailed(ValidationReport(violations=tuple(found)))

    kept = tuple(i for i in doc.instances if i.feature_id != feature_id)
    new_features = tuple(
        replace(f, status=FeatureStatus.IMPLEMENTED) if f.id == feature_id else f
        for f in doc.features
    )
    return replace(
        doc,
        features=new_features,
        instances=kept + tuple(instances),
        revision=doc.revision + 1,
    )


def _instance_fingerprint(inst: ComponentInstance) -> str:
    return json.dumps(inst.to_dict(), sort_keys=True, separators=(",", ":"))


def diff_documents(a: GuiDocument, b: GuiDocument) -> set[str]:
    """Feature ids whose owned instance sets differ structurally between a and b."""
    if a.doc_id != b.doc_id:
        raise DocumentMismatch(f"documents {a.doc_id!r} and {b.doc_id!r} are unrelated")
    ids = {f.id for f in a.features} | {f.id for f in b.features}
    ids |= {i.feature_id for i in a.instances} | {i.feature_id for i in b.instances}
    changed = set()
    for fid in ids:
        fp_a = sorted(_instance_fingerprint(i) for i in a.instances_of(fid))
        fp_b = sorted(_instance_fingerprint(i) for i in b.instances_of(fid))
        if fp_a != fp_b:
            changed.add(fid)
    return changed


def resolve_pointer(value: Any, pointer: str) -> Any:
    """Resolve an RFC 6901 JSON pointer against `value` (raises KeyError/IndexError)."""
    if pointer == "":
        return value
    current = value
    for part in pointer.lstrip("/").split("/"):
        part = part.replace("~1", "/").replace("~0", "~")
        if isinstance(current, list):
            current = current[int(part)]
        elif isinstance(current, dict):
            current = current[part]
        else:
            raise KeyError(part)
    return current
