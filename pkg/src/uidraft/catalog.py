"""Component library: loading, the simplified selection view, and full-spec lookup.

The library ships as a single JSON document (see docs/catalog-format.md).
Loading is strict: malformed entries are rejected, never repaired. After
loading, the catalog is immutable and safe for concurrent reads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, BinaryIO

from jsonschema import Draft202012Validator
from jsonschema.exceptions import SchemaError

from .errors import DuplicateTypeName, EmptyCatalog, InvalidSchemaFragment, ParseError, UnknownTypeName
from .tokens import TokenEstimator, default_estimator

ATTRIBUTE_KINDS = ("string", "number", "boolean", "enum", "color", "icon-ref")

_TOP_LEVEL_KEYS = {"version", "icons", "components"}
_COMPONENT_KEYS = {"group", "type", "description", "attributes", "slots", "schema"}
_ATTRIBUTE_KEYS = {"name", "kind", "required", "allowed_values", "default"}

_KIND_PYTYPES: dict[str, tuple[type, ...]] = {
    "string": (str,),
    "number": (int, float),
    "boolean": (bool,),
    "enum": (str, int, float),
    "color": (str,),
    "icon-ref": (str,),
}


@dataclass(frozen=True)
class AttributeDef:
    name: str
    kind: str
    required: bool = False
    allowed_values: tuple[Any, ...] | None = None
    default: Any = None

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"name": self.name, "kind": self.kind, "required": self.required}
        if self.allowed_values is not None:
            d["allowed_values"] = list(self.allowed_values)
        if self.default is not None:
            d["default"] = self.default
        return d


@dataclass(frozen=True)
class ComponentSpec:
    group: str
    type_name: str
    description: str
    attributes: tuple[AttributeDef, ...]
    slots: tuple[str, ...]
    schema_fragment: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": self.group,
            "type": self.type_name,
            "description": self.description,
            "attributes": [a.to_dict() for a in self.attributes],
            "slots": list(self.slots),
            "schema": self.schema_fragment,
        }


@dataclass(frozen=True)
class IconDef:
    name: str
    glyph: str


@dataclass(frozen=True)
class Catalog:
    components: tuple[ComponentSpec, ...]
    icons: tuple[IconDef, ...]
    version: str
    warnings: tuple[str, ...] = ()

    def spec_for(self, type_name: str) -> ComponentSpec | None:
        return self._by_type().get(type_name)

    def icon_names(self) -> frozenset[str]:
        return frozenset(i.name for i in self.icons)

    def _by_type(self) -> dict[str, ComponentSpec]:
        # Built lazily once; the catalog is immutable after load.
        cache = getattr(self, "_type_index", None)
        if cache is None:
            cache = {c.type_name: c for c in self.components}
            object.__setattr__(self, "_type_index", cache)
        return cache


@dataclass(frozen=True)
class SimplifiedCatalogView:
    entries: tuple[tuple[str, tuple[str, ...]], ...]
    serialized_form: str


@dataclass(frozen=True)
class ReductionReport:
    full_tokens: int
    simplified_tokens: int
    ratio: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "full_tokens": self.full_tokens,
            "simplified_tokens": self.simplified_tokens,
            "ratio": self.ratio,
        }


def _require_keys(obj: dict, expected: set[str], where: str) -> None:
    keys = set(obj)
    if keys != expected:
        missing = expected - keys
        extra = keys - expected
        parts = []
        if missing:
            parts.append(f"missing {sorted(missing)}")
        if extra:
            parts.append(f"unexpected {sorted(extra)}")
        raise ParseError(f"{where}: {', '.join(parts)}")


def _parse_attribute(raw: Any, where: str) -> AttributeDef:
    if not isinstance(raw, dict):
        raise ParseError(f"{where}: attribute entry must be an object")
    extra = set(raw) - _ATTRIBUTE_KEYS
    if extra:
        raise ParseError(f"{where}: unexpected attribute keys {sorted(extra)}")
    name = raw.get("name")
    kind = raw.get("kind")
    if not isinstance(name, str) or not name:
        raise ParseError(f"{where}: attribute name must be a non-empty string")
    if kind not in ATTRIBUTE_KINDS:
        raise ParseError(f"{where}: attribute {name!r} has unknown kind {kind!r}")
    required = raw.get("required", False)
    if not isinstance(required, bool):
        raise ParseError(f"{where}: attribute {name!r} 'required' must be boolean")
    allowed = raw.get("allowed_values")
    if allowed is not None:
        if not isinstance(allowed, list):
            raise ParseError(f"{where}: attribute {name!r} allowed_values must be a list")
        allowed = tuple(allowed)
    if kind == "enum" and not allowed:
        raise ParseError(f"{where}: enum attribute {name!r} needs at least one allowed value")
    default = raw.get("default")
    if default is not None:
        pytypes = _KIND_PYTYPES[kind]
        if not isinstance(default, pytypes) or (kind == "number" and isinstance(default, bool)):
            raise ParseError(f"{where}: default for {name!r} does not satisfy kind {kind!r}")
        if allowed is not None and default not in allowed:
            raise ParseError(f"{where}: default for {name!r} not among allowed values")
    return AttributeDef(name=name, kind=kind, required=required, allowed_values=allowed, default=default)


def _parse_component(raw: Any, index: int) -> ComponentSpec:
    where = f"components[{index}]"
    if not isinstance(raw, dict):
        raise ParseError(f"{where}: must be an object")
    _require_keys(raw, _COMPONENT_KEYS, where)
    group = raw["group"]
    type_name = raw["type"]
    description = raw["description"]
    if not isinstance(group, str) or not group:
        raise ParseError(f"{where}: group must be a non-empty string")
    if not isinstance(type_name, str) or not type_name:
        raise ParseError(f"{where}: type must be a non-empty string")
    if not isinstance(description, str):
        raise ParseError(f"{where}: description must be a string")
    if not isinstance(raw["attributes"], list):
        raise ParseError(f"{where}: attributes must be a list")
    attributes = tuple(_parse_attribute(a, f"{where}.attributes[{i}]") for i, a in enumerate(raw["attributes"]))
    seen_attrs: set[str] = set()
    for a in attributes:
        if a.name in seen_attrs:
            raise ParseError(f"{where}: duplicate attribute name {a.name!r}")
        seen_attrs.add(a.name)
    slots = raw["slots"]
    if not isinstance(slots, list) or not all(isinstance(s, str) and s for s in slots):
        raise ParseError(f"{where}: slots must be a list of non-empty strings")
    schema = raw["schema"]
    if not isinstance(schema, dict):
        raise ParseError(f"{where}: schema must be an object")
    try:
        Draft202012Validator.check_schema(schema)
    except SchemaError as exc:
        raise InvalidSchemaFragment(type_name, exc.message) from exc
    return ComponentSpec(
        group=group,
        type_name=type_name,
        description=description,
        attributes=attributes,
        slots=tuple(slots),
        schema_fragment=schema,
    )


def load_catalog(source: str | bytes | Path | BinaryIO) -> Catalog:
    """Load and strictly validate a catalog file.

    `source` may be a path, raw JSON text/bytes, or a readable binary stream.
    """
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"catalog is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("catalog top level must be an object")
    _require_keys(doc, _TOP_LEVEL_KEYS, "catalog")
    version = doc["version"]
    if not isinstance(version, str) or not version:
        raise ParseError("catalog version must be a non-empty string")
    if not isinstance(doc["components"], list):
        raise ParseError("catalog components must be a list")
    if not isinstance(doc["icons"], list):
        raise ParseError("catalog icons must be a list")

    components = []
    seen_types: set[str] = set()
    for i, raw in enumerate(doc["components"]):
        spec = _parse_component(raw, i)
        if spec.type_name in seen_types:
            raise DuplicateTypeName(spec.type_name)
        seen_types.add(spec.type_name)
        components.append(spec)

    icons = []
    seen_icons: set[str] = set()
    for i, raw in enumerate(doc["icons"]):
        where = f"icons[{i}]"
        if not isinstance(raw, dict) or set(raw) != {"name", "glyph"}:
            raise ParseError(f"{where}: must be an object with keys name, glyph")
        name, glyph = raw["name"], raw["glyph"]
        if not isinstance(name, str) or not name:
            raise ParseError(f"{where}: name must be a non-empty string")
        if not isinstance(glyph, str):
            raise ParseError(f"{where}: glyph must be a string")
        if name in seen_icons:
            raise ParseError(f"{where}: duplicate icon name {name!r}")
        seen_icons.add(name)
        icons.append(IconDef(name=name, glyph=glyph))

    warnings = []
    if not components:
        warnings.append("catalog contains no components")
    return Catalog(
        components=tuple(components),
        icons=tuple(icons),
        version=version,
        warnings=tuple(warnings),
    )


def bundled_catalog_path() -> Path:
    return Path(str(resources.files("uidraft").joinpath("data/catalog.json")))


def bundled_catalog() -> Catalog:
    return load_catalog(bundled_catalog_path())


def simplify(catalog: Catalog) -> SimplifiedCatalogView:
    """Project the catalog down to (group, type names) for the selection prompt.

    Group order follows first appearance in the catalog; within a group, type
    order is catalog order. The serialized form is what gets injected into the
    prompt, one line per group.
    """
    groups: dict[str, list[str]] = {}
    for spec in catalog.components:
        groups.setdefault(spec.group, []).append(spec.type_name)
    entries = tuple((g, tuple(names)) for g, names in groups.items())
    lines = [f"{g}: {', '.join(names)}" for g, names in entries]
    return SimplifiedCatalogView(entries=entries, serialized_form="\n".join(lines))


def lookup_full_specs(catalog: Catalog, type_names: list[str]) -> list[ComponentSpec]:
    """Resolve type names to full specs, preserving request order, de-duplicated.

    Unknown names raise UnknownTypeName carrying every unresolved name; the
    caller decides whether to retry the selection stage.
    """
    unresolved = []
    out: list[ComponentSpec] = []
    seen: set[str] = set()
    for name in type_names:
        spec = catalog.spec_for(name)
        if spec is None:
            unresolved.append(name)
        elif name not in seen:
            seen.add(name)
            out.append(spec)
    if unresolved:
        raise UnknownTypeName(unresolved)
    return out


def render_full_spec(spec: ComponentSpec) -> str:
    """Render one component spec as the text block injected into prompts.

    Empty sections are omitted so the rendering carries no boilerplate: a
    bare component reduces to its `Group: Type` header. The instance schema
    line is included whenever the component declares attributes or slots.
    """
    header = f"{spec.group}: {spec.type_name}"
    if spec.description:
        header += f" — {spec.description}"
    lines = [header]
    for a in spec.attributes:
        bits = [a.kind]
        if a.required:
            bits.append("required")
        if a.allowed_values:
            bits.append("values: " + " | ".join(str(v) for v in a.allowed_values))
        if a.default is not None:
            bits.append(f"default: {json.dumps(a.default)}")
        lines.append(f"  - {a.name} ({', '.join(bits)})")
    if spec.slots:
        lines.append(f"  slots: {', '.join(spec.slots)}")
    if spec.attributes or spec.slots:
        lines.append(f"  instance schema: {json.dumps(spec.schema_fragment, ensure_ascii=False)}")
    return "\n".join(lines)


def serialize_catalog_full(catalog: Catalog) -> str:
    """Full-library serialization used by the token reduction measurement."""
    return "\n\n".join(render_full_spec(c) for c in catalog.components)


def measure_token_reduction(catalog: Catalog, estimator: TokenEstimator | None = None) -> ReductionReport:
    """Compare prompt cost of the full library against the simplified view."""
    fn = estimator or default_estimator
    full = fn(serialize_catalog_full(catalog))
    if full <= 0:
        raise EmptyCatalog("full catalog serialization has no measurable tokens")
    simplified = fn(simplify(catalog).serialized_form)
    ratio = 1.0 - simplified / full
    return ReductionReport(full_tokens=full, simplified_tokens=simplified, ratio=ratio)
