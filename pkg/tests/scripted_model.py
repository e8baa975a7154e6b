"""Deterministic scripted chat model used to author replay fixtures.

The transport inspects the prompt to figure out which pipeline stage is
asking and which feature it is about, then returns canned JSON. Repair
rounds are detected from the appended violation message, so scenarios can
exercise the malformed-then-fixed and never-valid paths.
"""

from __future__ import annotations

import json

from uidraft.tokens import default_estimator

MODEL_ID = "scripted-gpt"
FIXED_CLOCK = lambda: "2025-01-01T00:00:00Z"  # noqa: E731

TODO_DESCRIPTION = "A todo app where I can see my tasks, add new ones, search and filter them."
LOGIN_DESCRIPTION = "A login screen for an email newsletter service."
EDGE_DESCRIPTION = "edge case demo app exercising failure paths"
BROKEN_JSON_DESCRIPTION = "broken json demo: a single note viewer"
EMPTY_DESCRIPTION = "a deliberately blank screen with no features"

TODO_FEATURES = [
    {"name": "App Header", "description": "Top bar showing the application title."},
    {"name": "Search Tasks", "description": "Search field to filter the task list by keyword."},
    {"name": "Task Filters", "description": "Chips to switch between all, active, and completed tasks."},
    {"name": "Task List", "description": "Scrollable list of tasks, each row with a title and a done checkbox."},
    {"name": "Add Task", "description": "Text input and a button to add a new task."},
]

LOGIN_FEATURES = [
    {"name": "Login Form", "description": "Email and password fields with a sign-in button."},
]

EDGE_FEATURES = [
    {"name": "Phantom Widget Demo", "description": "Selection first hallucinates an unknown type."},
    {"name": "Empty Selection Demo", "description": "Selection keeps returning an empty component list."},
    {"name": "Missing PosY Demo", "description": "Implementation first omits a required general attribute."},
    {"name": "Off Frame Demo", "description": "Implementation places a component outside the frame."},
    {"name": "Never Valid Demo", "description": "Implementation never passes schema validation."},
]

BROKEN_JSON_FEATURES = [
    {"name": "Simple Note", "description": "A single note shown as a text block."},
]

# Regenerating "Search Tasks" happens after the user edits its description,
# so the selection/implementation prompts differ from the first run.
EDITED_SEARCH_DESCRIPTION = "Search field with a keyword filter and a clear button."

SELECTIONS = {
    "App Header": ["TopAppBar"],
    "Search Tasks": ["SearchBar"],
    "Task Filters": ["FilterChip"],
    "Task List": ["List", "ListItem", "Checkbox"],
    "Add Task": ["TextField", "FilledButton"],
    "Login Form": ["TextField", "ElevatedButton"],
    "Phantom Widget Demo": ["Label"],      # after the hallucinated first try
    "Missing PosY Demo": ["Label"],
    "Off Frame Demo": ["Label"],
    "Never Valid Demo": ["Label"],
    "Simple Note": ["Label"],
}

EDITED_SEARCH_SELECTION = ["SearchBar", "IconButton"]


def _inst(type_name, x, y, w, h, attributes=None, icon=None, children=None):
    d = {"type_name": type_name, "posX": x, "posY": y, "width": w, "height": h}
    if attributes:
        d["attributes"] = attributes
    if icon:
        d["icon"] = icon
    if children:
        d["children"] = children
    return d


IMPLEMENTATIONS = {
    "App Header": [
        _inst("TopAppBar", 0, 0, 390, 56, {"title": "My Tasks"}),
    ],
    "Search Tasks": [
        _inst("SearchBar", 16, 180, 358, 48, {"placeholder": "Search tasks"}),
    ],
    "Task Filters": [
        _inst("FilterChip", 16, 352, 80, 32, {"label": "All", "selected": True}),
        _inst("FilterChip", 104, 352, 96, 32, {"label": "Active"}),
        _inst("FilterChip", 208, 352, 120, 32, {"label": "Completed"}),
    ],
    "Task List": [
        _inst("List", 16, 512, 358, 100, {"dividers": True}, children=[
            dict(_inst("ListItem", 16, 512, 358, 50,
                       {"headline": "Buy groceries"}), slot="items"),
            dict(_inst("ListItem", 16, 562, 358, 50,
                       {"headline": "Walk the dog"}), slot="items"),
        ]),
        _inst("Checkbox", 332, 527, 20, 20, {"checked": True}),
        _inst("Checkbox", 332, 577, 20, 20, {"checked": False}),
    ],
    "Add Task": [
        _inst("TextField", 16, 700, 260, 48,
              {"label": "New task", "placeholder": "What needs doing?"}),
        _inst("FilledButton", 288, 700, 86, 48, {"label": "Add"}),
    ],
    "Login Form": [
        _inst("TextField", 45, 320, 300, 48,
              {"label": "Email", "input_type": "email"}),
        _inst("TextField", 45, 388, 300, 48,
              {"label": "Password", "input_type": "password"}),
        _inst("ElevatedButton", 45, 456, 300, 48, {"label": "Sign in"}),
    ],
    "Phantom Widget Demo": [
        _inst("Label", 16, 40, 200, 24, {"text": "Phantom resolved"}),
    ],
    "Missing PosY Demo": [
        _inst("Label", 16, 380, 220, 24, {"text": "Now positioned"}),
    ],
    "Off Frame Demo": [
        _inst("Label", 500, 560, 220, 24, {"text": "Way out right"}),
    ],
    "Simple Note": [
        _inst("Label", 24, 60, 340, 120, {"text": "Remember the milk."}),
    ],
}

EDITED_SEARCH_IMPLEMENTATION = [
    _inst("SearchBar", 16, 180, 310, 48, {"placeholder": "Search tasks"}),
    _inst("IconButton", 334, 184, 40, 40, {"icon": "close"}),
]


def _prompt_text(prompt_parts) -> str:
    return "\n".join(text for _, text in prompt_parts)


def _repair_round(prompt_parts) -> int:
    """0 on the first ask, N for the N-th repair retry."""
    rounds = 0
    for role, text in prompt_parts:
        if role == "user" and "failed validation" in text:
            rounds += 1
    return rounds


def _feature_subject(text: str, names) -> str | None:
    marker = "Feature to implement:\n"
    start = text.find(marker)
    if start < 0:
        return None
    line = text[start + len(marker):].split("\n", 1)[0]
    for name in names:
        if line.startswith(f"{name}:"):
            return name
    return None


def _respond_decompose(text: str, repair_round: int) -> str:
    if BROKEN_JSON_DESCRIPTION in text:
        if repair_round == 0:
            return "Sure! Here are the features you asked for: [ {\"name\": oops"
        return json.dumps(BROKEN_JSON_FEATURES)
    if TODO_DESCRIPTION in text:
        return json.dumps(TODO_FEATURES)
    if LOGIN_DESCRIPTION in text:
        return json.dumps(LOGIN_FEATURES)
    if EDGE_DESCRIPTION in text:
        return json.dumps(EDGE_FEATURES)
    return json.dumps([])


def _respond_select(text: str, repair_round: int) -> str:
    subject = _feature_subject(text, list(SELECTIONS) + ["Empty Selection Demo"])
    if subject == "Empty Selection Demo":
        return json.dumps({"components": []})
    if subject == "Phantom Widget Demo" and repair_round == 0:
        return json.dumps({"components": ["HoloPanel"]})
    if EDITED_SEARCH_DESCRIPTION in text:
        return json.dumps({"components": EDITED_SEARCH_SELECTION})
    if subject in SELECTIONS:
        return json.dumps({"components": SELECTIONS[subject]})
    return json.dumps({"components": ["Label"]})


def _respond_implement(text: str, repair_round: int) -> str:
    if EDITED_SEARCH_DESCRIPTION in text:
        return json.dumps({"components": EDITED_SEARCH_IMPLEMENTATION})
    subject = _feature_subject(text, list(IMPLEMENTATIONS) + ["Never Valid Demo"])
    if subject == "Never Valid Demo":
        return json.dumps({"components": [{"type_name": "Label"}]})
    if subject == "Missing PosY Demo" and repair_round == 0:
        broken = dict(IMPLEMENTATIONS[subject][0])
        del broken["posY"]
        return json.dumps({"components": [broken]})
    if subject in IMPLEMENTATIONS:
        return json.dumps({"components": IMPLEMENTATIONS[subject]})
    return json.dumps({"components": [_inst("Label", 16, 16, 200, 24, {"text": "Stub"})]})


def scripted_transport(prompt_parts, cfg, max_output_tokens, temperature):
    """Transport-compatible callable: returns canned, prompt-derived output."""
    text = _prompt_text(prompt_parts)
    repair_round = _repair_round(prompt_parts)
    if "Break this description down" in text:
        response = _respond_decompose(text, repair_round)
    elif "Select the component types" in text:
        response = _respond_select(text, repair_round)
    elif "implementing one feature" in text:
        response = _respond_implement(text, repair_round)
    else:
        raise AssertionError(f"scripted model cannot classify prompt: {text[:120]}...")
    return response, default_estimator(text), default_estimator(response), MODEL_ID
