#!/usr/bin/env python3
"""Regenerate the bundled component catalog (src/uidraft/data/catalog.json).

The catalog is authored here as compact Python tuples; per-type instance
schemas are derived from the attribute definitions so the two can never
drift. Run from the repo root:

    python scripts/build_catalog.py
"""

from __future__ import annotations

import json
from pathlib import Path

CATALOG_VERSION = "1.0"

# (name, kind, required, allowed_values, default)
A = tuple

COMPONENTS = [
    # group, type, description, attributes, slots
    ("Button", "ElevatedButton", "Raised button with a shadow for primary actions.",
     [("label", "string", True, None, None),
      ("enabled", "boolean", False, None, True),
      ("icon", "icon-ref", False, None, None)], []),
    ("Button", "FilledButton", "High-emphasis button filled with the accent color.",
     [("label", "string", True, None, None),
      ("enabled", "boolean", False, None, True),
      ("icon", "icon-ref", False, None, None)], []),
    ("Button", "FilledTonalButton", "Medium-emphasis filled button using a tonal color.",
     [("label", "string", True, None, None),
      ("enabled", "boolean", False, None, True)], []),
    ("Button", "OutlinedButton", "Button with an outline border for secondary actions.",
     [("label", "string", True, None, None),
      ("enabled", "boolean", False, None, True)], []),
    ("Button", "TextButton", "Low-emphasis text-only button.",
     [("label", "string", True, None, None),
      ("enabled", "boolean", False, None, True)], []),
    ("Button", "IconButton", "Compact button showing a single icon.",
     [("icon", "icon-ref", True, None, None),
      ("toggled", "boolean", False, None, False)], []),
    ("Button", "FloatingActionButton", "Circular floating button for the primary screen action.",
     [("icon", "icon-ref", True, None, None),
      ("size", "enum", False, ["small", "regular", "large"], "regular")], []),
    ("Button", "ExtendedFloatingActionButton", "Floating action button with an icon and a label.",
     [("label", "string", True, None, None),
      ("icon", "icon-ref", False, None, None)], []),
    ("Button", "SegmentedButton", "Row of connected toggle segments for exclusive choices.",
     [("segments", "string", True, None, None),
      ("selected_index", "number", False, None, 0)], []),

    ("Checkbox", "Checkbox", "Binary selection box with an optional label.",
     [("label", "string", False, None, None),
      ("checked", "boolean", False, None, False),
      ("enabled", "boolean", False, None, True)], []),

    ("Radio Button", "RadioButton", "Single-choice selector used in groups.",
     [("label", "string", False, None, None),
      ("selected", "boolean", False, None, False),
      ("group", "string", False, None, None)], []),

    ("Switch", "Switch", "On/off toggle with a sliding thumb.",
     [("label", "string", False, None, None),
      ("on", "boolean", False, None, False),
      ("enabled", "boolean", False, None, True)], []),

    ("Chip", "AssistChip", "Chip that triggers a contextual helper action.",
     [("label", "string", True, None, None),
      ("icon", "icon-ref", False, None, None)], []),
    ("Chip", "FilterChip", "Toggleable chip used to filter content.",
     [("label", "string", True, None, None),
      ("selected", "boolean", False, None, False)], []),
    ("Chip", "InputChip", "Chip representing a user-entered value, removable.",
     [("label", "string", True, None, None),
      ("removable", "boolean", False, None, True)], []),
    ("Chip", "SuggestionChip", "Chip offering a suggested query or reply.",
     [("label", "string", True, None, None)], []),

    ("Text Field", "TextField", "Single-line text input with label and placeholder.",
     [("label", "string", False, None, None),
      ("placeholder", "string", False, None, None),
      ("value", "string", False, None, None),
      ("input_type", "enum", False, ["text", "email", "password", "number", "phone"], "text"),
      ("required", "boolean", False, None, False)], []),
    ("Text Field", "FilledTextField", "Text input with a filled background and underline.",
     [("label", "string", False, None, None),
      ("placeholder", "string", False, None, None),
      ("value", "string", False, None, None),
      ("supporting_text", "string", False, None, None)], []),
    ("Text Field", "OutlinedTextField", "Text input with a full outline border.",
     [("label", "string", False, None, None),
      ("placeholder", "string", False, None, None),
      ("value", "string", False, None, None),
      ("supporting_text", "string", False, None, None)], []),
    ("Text Field", "TextArea", "Multi-line text input for longer content.",
     [("label", "string", False, None, None),
      ("placeholder", "string", False, None, None),
      ("rows", "number", False, None, 3)], []),

    ("Label", "Label", "Plain text label.",
     [("text", "string", True, None, None),
      ("align", "enum", False, ["start", "center", "end"], "start"),
      ("color", "color", False, None, None)], []),
    ("Label", "Headline", "Prominent heading text.",
     [("text", "string", True, None, None),
      ("level", "enum", False, ["small", "medium", "large"], "medium")], []),
    ("Label", "SupportingText", "Secondary explanatory text in a muted tone.",
     [("text", "string", True, None, None)], []),

    ("Search Bar", "SearchBar", "Rounded input with a magnifier icon for queries.",
     [("placeholder", "string", False, None, "Search"),
      ("value", "string", False, None, None),
      ("show_avatar", "boolean", False, None, False)], []),
    ("Search Bar", "SearchView", "Expanded search surface listing live results.",
     [("placeholder", "string", False, None, "Search"),
      ("results_hint", "string", False, None, None)], ["results"]),

    ("Dialog", "AlertDialog", "Modal dialog with title, message, and action buttons.",
     [("title", "string", True, None, None),
      ("message", "string", False, None, None),
      ("confirm_label", "string", False, None, "OK"),
      ("dismiss_label", "string", False, None, None)], ["content", "actions"]),
    ("Dialog", "FullScreenDialog", "Dialog that covers the whole frame for complex tasks.",
     [("title", "string", True, None, None),
      ("action_label", "string", False, None, "Save")], ["content"]),

    ("Top App Bar", "TopAppBar", "Standard top bar with title and action icons.",
     [("title", "string", True, None, None),
      ("show_navigation_icon", "boolean", False, None, True)], ["actions"]),
    ("Top App Bar", "CenterAlignedTopAppBar", "Top bar with a centered title.",
     [("title", "string", True, None, None)], ["actions"]),
    ("Top App Bar", "MediumTopAppBar", "Taller top bar with the title on a second row.",
     [("title", "string", True, None, None)], ["actions"]),
    ("Top App Bar", "LargeTopAppBar", "Large top bar for prominent screen titles.",
     [("title", "string", True, None, None)], ["actions"]),

    ("Bottom App Bar", "BottomAppBar", "Bottom bar holding icons and an optional FAB.",
     [("show_fab", "boolean", False, None, False)], ["actions"]),

    ("Navigation Bar", "NavigationBar", "Bottom navigation with 3-5 destinations.",
     [("selected_index", "number", False, None, 0)], ["items"]),
    ("Navigation Bar", "NavigationBarItem", "One destination inside a navigation bar.",
     [("label", "string", True, None, None),
      ("icon", "icon-ref", False, None, None),
      ("selected", "boolean", False, None, False)], []),

    ("Navigation Drawer", "NavigationDrawer", "Side panel listing top-level destinations.",
     [("title", "string", False, None, None)], ["items"]),
    ("Navigation Drawer", "NavigationDrawerItem", "One destination row inside a drawer.",
     [("label", "string", True, None, None),
      ("icon", "icon-ref", False, None, None),
      ("selected", "boolean", False, None, False)], []),

    ("Navigation Rail", "NavigationRail", "Compact vertical navigation for wide screens.",
     [("selected_index", "number", False, None, 0)], ["items"]),

    ("Tabs", "TabBar", "Row of tabs switching between sibling views.",
     [("selected_index", "number", False, None, 0)], ["tabs"]),
    ("Tabs", "Tab", "One tab with a label and optional icon.",
     [("label", "string", True, None, None),
      ("icon", "icon-ref", False, None, None)], []),

    ("Card", "ElevatedCard", "Content container with a shadow.",
     [("title", "string", False, None, None),
      ("subtitle", "string", False, None, None)], ["content"]),
    ("Card", "FilledCard", "Content container with a filled surface color.",
     [("title", "string", False, None, None),
      ("subtitle", "string", False, None, None)], ["content"]),
    ("Card", "OutlinedCard", "Content container with an outline border.",
     [("title", "string", False, None, None),
      ("subtitle", "string", False, None, None)], ["content"]),

    ("List", "List", "Vertical list of rows.",
     [("dividers", "boolean", False, None, False)], ["items"]),
    ("List", "ListItem", "One list row with text and optional leading icon.",
     [("headline", "string", True, None, None),
      ("supporting_text", "string", False, None, None),
      ("leading_icon", "icon-ref", False, None, None),
      ("trailing_icon", "icon-ref", False, None, None)], []),

    ("Menu", "DropdownMenu", "Floating menu anchored to a control.",
     [("anchor_label", "string", False, None, None)], ["items"]),
    ("Menu", "MenuItem", "One choice inside a menu.",
     [("label", "string", True, None, None),
      ("icon", "icon-ref", False, None, None),
      ("enabled", "boolean", False, None, True)], []),

    ("Slider", "Slider", "Drag control selecting a value from a range.",
     [("min", "number", False, None, 0),
      ("max", "number", False, None, 100),
      ("value", "number", False, None, 50),
      ("label", "string", False, None, None)], []),
    ("Slider", "RangeSlider", "Slider with two thumbs selecting a sub-range.",
     [("min", "number", False, None, 0),
      ("max", "number", False, None, 100),
      ("value_start", "number", False, None, 25),
      ("value_end", "number", False, None, 75)], []),

    ("Progress Indicator", "LinearProgressIndicator", "Horizontal bar showing progress.",
     [("progress", "number", False, None, 0.5),
      ("indeterminate", "boolean", False, None, False)], []),
    ("Progress Indicator", "CircularProgressIndicator", "Ring showing progress or activity.",
     [("progress", "number", False, None, 0.5),
      ("indeterminate", "boolean", False, None, False)], []),

    ("Snackbar", "Snackbar", "Transient message bar at the bottom of the frame.",
     [("message", "string", True, None, None),
      ("action_label", "string", False, None, None)], []),

    ("Tooltip", "PlainTooltip", "Small text bubble describing a control.",
     [("text", "string", True, None, None)], []),
    ("Tooltip", "RichTooltip", "Tooltip with a title, body text, and optional action.",
     [("title", "string", False, None, None),
      ("text", "string", True, None, None),
      ("action_label", "string", False, None, None)], []),

    ("Badge", "Badge", "Small counter or dot attached to another component.",
     [("count", "number", False, None, None),
      ("dot", "boolean", False, None, False)], []),

    ("Divider", "Divider", "Thin rule separating content.",
     [("inset", "boolean", False, None, False)], []),

    ("Date Picker", "DatePicker", "Calendar grid for picking a single date.",
     [("title", "string", False, None, "Select date"),
      ("value", "string", False, None, None)], []),
    ("Date Picker", "DateRangePicker", "Calendar for picking a start and end date.",
     [("title", "string", False, None, "Select range"),
      ("start", "string", False, None, None),
      ("end", "string", False, None, None)], []),

    ("Time Picker", "TimePicker", "Clock dial or input for picking a time.",
     [("title", "string", False, None, "Select time"),
      ("value", "string", False, None, None)], []),

    ("Bottom Sheet", "BottomSheet", "Panel sliding up from the bottom edge.",
     [("title", "string", False, None, None),
      ("expanded", "boolean", False, None, False)], ["content"]),

    ("Side Sheet", "SideSheet", "Panel docked to the side for supplementary content.",
     [("title", "string", False, None, None)], ["content"]),

    ("Banner", "Banner", "Prominent inline message with optional actions.",
     [("message", "string", True, None, None),
      ("action_label", "string", False, None, None),
      ("icon", "icon-ref", False, None, None)], []),

    ("Image", "Image", "Image placeholder with optional caption.",
     [("alt", "string", False, None, None),
      ("caption", "string", False, None, None),
      ("fit", "enum", False, ["cover", "contain", "fill"], "cover")], []),
    ("Image", "Avatar", "Circular user image or initials.",
     [("initials", "string", False, None, None),
      ("size", "enum", False, ["small", "medium", "large"], "medium")], []),

    ("Icon", "Icon", "Standalone icon glyph.",
     [("icon", "icon-ref", True, None, None),
      ("color", "color", False, None, None)], []),
]

ICONS = [
    ("search", "⌕"), ("add", "+"), ("delete", "🗑"), ("edit", "✎"), ("menu", "☰"),
    ("home", "⌂"), ("settings", "⚙"), ("favorite", "♥"), ("share", "↗"), ("close", "✕"),
    ("check", "✓"), ("arrow_back", "←"), ("arrow_forward", "→"), ("person", "👤"),
    ("shopping_cart", "🛒"), ("star", "★"), ("info", "ℹ"), ("warning", "⚠"),
    ("calendar", "📅"), ("clock", "◷"), ("camera", "📷"), ("mail", "✉"), ("phone", "☎"),
    ("location", "📍"), ("notifications", "🔔"), ("play", "▶"), ("pause", "⏸"),
    ("send", "➤"), ("filter", "⚲"), ("sort", "⇅"), ("refresh", "⟳"), ("download", "⤓"),
    ("upload", "⤒"), ("lock", "🔒"), ("visibility", "👁"), ("mic", "🎤"), ("more_vert", "⋮"),
]

_KIND_SCHEMAS = {
    "string": {"type": "string"},
    "number": {"type": "number"},
    "boolean": {"type": "boolean"},
    "color": {"type": "string", "pattern": "^#[0-9a-fA-F]{6}([0-9a-fA-F]{2})?$"},
    "icon-ref": {"type": "string"},
}


def attr_schema(kind, allowed, default):
    if kind == "enum":
        schema = {"enum": list(allowed)}
    else:
        schema = dict(_KIND_SCHEMAS[kind])
    if default is not None:
        schema["default"] = default
    return schema


def instance_schema(type_name, attributes, slots):
    """Schema for one instance of this type: type tag, attributes, children.

    Geometry (posX/posY/width/height) is enforced by the generic instance
    schema in the IR, not repeated per component.
    """
    props = {}
    required = []
    for name, kind, req, allowed, default in attributes:
        props[name] = attr_schema(kind, allowed, default)
        if req:
            required.append(name)
    attrs_schema = {
        "type": "object",
        "properties": props,
        "additionalProperties": False,
    }
    if required:
        attrs_schema["required"] = required
    schema = {
        "type": "object",
        "properties": {
            "type_name": {"const": type_name},
            "attributes": attrs_schema,
            "children": {"type": "array"} if slots else {"type": "array", "maxItems": 0},
        },
        "required": ["type_name"] + (["attributes"] if required else []),
    }
    return schema


def build():
    components = []
    for group, type_name, description, attributes, slots in COMPONENTS:
        attrs = []
        for name, kind, req, allowed, default in attributes:
            entry = {"name": name, "kind": kind, "required": req}
            if allowed is not None:
                entry["allowed_values"] = list(allowed)
            if default is not None:
                entry["default"] = default
            attrs.append(entry)
        components.append({
            "group": group,
            "type": type_name,
            "description": description,
            "attributes": attrs,
            "slots": list(slots),
            "schema": instance_schema(type_name, attributes, slots),
        })
    return {
        "version": CATALOG_VERSION,
        "icons": [{"name": n, "glyph": g} for n, g in ICONS],
        "components": components,
    }


def main():
    out = Path(__file__).resolve().parents[1] / "src" / "uidraft" / "data" / "catalog.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    doc = build()
    out.write_text(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(doc['components'])} components, {len(doc['icons'])} icons)")


if __name__ == "__main__":
    main()
