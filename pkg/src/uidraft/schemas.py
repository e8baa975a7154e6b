"""JSON schemas for the prototype IR and the three model-output fragments.

All schemas use draft 2020-12 semantics. The fragment schemas are embedded
verbatim into prompts and published under docs/, so they must stay compact
and self-contained.
"""

from __future__ import annotations

import json
from typing import Any

from jsonschema import Draft202012Validator

IR_VERSION = "1"

FEATURE_LIST = "feature-list"
SELECTION_LIST = "selection-list"
FEATURE_IMPLEMENTATION = "feature-implementation"

FEATURE_LIST_SCHEMA: dict[str, Any] = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {
            "name": {"type": "string", "minLength": 1},
            "description": {"type": "string", "minLength": 1},
        },
        "required": ["name", "description"],
        "additionalProperties": False,
    },
}

SELECTION_LIST_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "components": {
            "type": "array",
            "items": {"type": "string", "minLength": 1},
            "minItems": 1,
        },
    },
    "required": ["components"],
    "additionalProperties": False,
}

_RAW_INSTANCE = {
    "type": "object",
    "properties": {
        "type_name": {"type": "string", "minLength": 1},
        "posX": {"type": "number"},
        "posY": {"type": "number"},
        "width": {"type": "number", "exclusiveMinimum": 0},
        "height": {"type": "number", "exclusiveMinimum": 0},
        "attributes": {"type": "object"},
        "icon": {"type": "string"},
        "slot": {"type": "string"},
        "children": {"type": "array", "items": {"$ref": "#/$defs/instance"}},
    },
    "required": ["type_name", "posX", "posY", "width", "height"],
    "additionalProperties": False,
}

FEATURE_IMPLEMENTATION_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "components": {
            "type": "array",
            "items": {"$ref": "#/$defs/instance"},
            "minItems": 1,
        },
    },
    "required": ["components"],
    "additionalProperties": False,
    "$defs": {"instance": _RAW_INSTANCE},
}

# Document instances additionally carry engine-assigned identity.
_DOC_INSTANCE = {
    "type": "object",
    "properties": {
        "instance_id": {"type": "string", "minLength": 1},
        "feature_id": {"type": "string", "minLength": 1},
        **{k: v for k, v in _RAW_INSTANCE["properties"].items() if k != "children"},
        "children": {"type": "array", "items": {"$ref": "#/$defs/instance"}},
    },
    "required": ["instance_id", "feature_id", "type_name", "posX", "posY", "width", "height"],
    "additionalProperties": False,
}

DOCUMENT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "ir_version": {"const": IR_VERSION},
        "doc_id": {"type": "string", "minLength": 1},
        "frame": {
            "type": "object",
            "properties": {
                "width": {"type": "number", "exclusiveMinimum": 0},
                "height": {"type": "number", "exclusiveMinimum": 0},
            },
            "required": ["width", "height"],
            "additionalProperties": False,
        },
        "description": {"type": "string"},
        "revision": {"type": "integer", "minimum": 0},
        "features": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "name": {"type": "string", "minLength": 1},
                    "description": {"type": "string", "minLength": 1},
                    "origin": {"enum": ["generated", "user_added", "user_edited"]},
                    "status": {"enum": ["pending", "implemented", "stale"]},
                },
                "required": ["id", "name", "description", "origin", "status"],
                "additionalProperties": False,
            },
        },
        "instances": {"type": "array", "items": {"$ref": "#/$defs/instance"}},
    },
    "required": ["ir_version", "doc_id", "frame", "description", "revision", "features", "instances"],
    "additionalProperties": False,
    "$defs": {"instance": _DOC_INSTANCE},
}

FRAGMENT_SCHEMAS: dict[str, dict[str, Any]] = {
    FEATURE_LIST: FEATURE_LIST_SCHEMA,
    SELECTION_LIST: SELECTION_LIST_SCHEMA,
    FEATURE_IMPLEMENTATION: FEATURE_IMPLEMENTATION_SCHEMA,
}

# Map jsonschema keywords to the rule names reported in violations.
_RULE_NAMES = {
    "required": "required-attribute",
    "type": "wrong-type",
    "const": "invalid-value",
    "enum": "invalid-value",
    "pattern": "invalid-value",
    "minLength": "empty-value",
    "minItems": "too-few-items",
    "maxItems": "too-many-items",
    "exclusiveMinimum": "out-of-range",
    "minimum": "out-of-range",
    "additionalProperties": "unknown-attribute",
}


def rule_name(validator_keyword: str) -> str:
    return _RULE_NAMES.get(validator_keyword, validator_keyword)


def json_pointer(parts) -> str:
    """Build a JSON pointer from path segments (RFC 6901 escaping)."""
    out = []
    for p in parts:
        if isinstance(p, int):
            out.append(str(p))
        else:
            out.append(str(p).replace("~", "~0").replace("/", "~1"))
    return "/" + "/".join(out) if out else ""


# Validators are cached by schema object identity; schemas are immutable
# after load so identity is a safe key.
_VALIDATOR_CACHE: dict[int, tuple[dict, Draft202012Validator]] = {}


def _validator_for(schema: dict[str, Any]) -> Draft202012Validator:
    entry = _VALIDATOR_CACHE.get(id(schema))
    if entry is None or entry[0] is not schema:
        entry = (schema, Draft202012Validator(schema))
        _VALIDATOR_CACHE[id(schema)] = entry
    return entry[1]


def schema_violations(value: Any, schema: dict[str, Any], base_pointer: str = "") -> list[dict[str, str]]:
    """Validate `value` and return every violation as {path, rule, message}."""
    validator = _validator_for(schema)
    found = []
    for err in sorted(validator.iter_errors(value), key=lambda e: list(e.absolute_path)):
        # `required` errors point at the object missing the property, which is
        # the closest location that actually exists in the input.
        pointer = base_pointer + json_pointer(err.absolute_path)
        found.append({
            "path": pointer or "",
            "rule": rule_name(str(err.validator)),
            "message": err.message,
        })
    return found


def dump_schema(schema: dict[str, Any]) -> str:
    """Canonical serialization used when embedding a schema into prompts."""
    return json.dumps(schema, ensure_ascii=False, indent=2)
