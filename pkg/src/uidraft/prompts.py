"""Prompt template loading and rendering.

Templates are plain text files shipped with the package (templates/*.txt)
with named {placeholder} fields, so prompt changes show up as reviewable
diffs. Unknown template ids and missing fields fail loudly.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def get_template(template_id: str) -> str:
    ref = resources.files("uidraft").joinpath(f"templates/{template_id}.txt")
    try:
        return ref.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise KeyError(f"no prompt template named {template_id!r}") from None


def render_template(template_id: str, **fields: str) -> str:
    template = get_template(template_id)
    try:
        return template.format(**fields)
    except KeyError as exc:
        raise KeyError(f"template {template_id!r} needs field {exc}") from None


def template_exists(template_id: str) -> bool:
    try:
        get_template(template_id)
        return True
    except KeyError:
        return False
