"""Static SVG preview of a prototype document, plus layout anomaly reporting.

Each component group maps to a simple vector sketch: recognizable wireframe,
not pixel-faithful styling. Output is plain SVG 1.1 text, deterministic for a
given document, with one group per feature so viewers can toggle features.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any
from xml.sax.saxutils import escape, quoteattr

from .catalog import Catalog
from .errors import InvalidDocument
from .ir import ComponentInstance, GuiDocument, validate_document

INK = "#3a3f4b"
MUTED = "#8b93a3"
FILL = "#eef0f4"
ACCENT = "#5b6bc0"
ACCENT_SOFT = "#dde2f5"

_FONT = "font-family=\"Helvetica, Arial, sans-serif\""

# Average glyph width as a fraction of font size; used to clip text to boxes.
_CHAR_W = 0.6


@dataclass(frozen=True)
class RenderOptions:
    scale: float = 1.0
    show_feature_outlines: bool = False
    background: str = "#ffffff"

    def __post_init__(self):
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise ValueError("scale must be finite and positive")


@dataclass(frozen=True)
class LayoutReport:
    out_of_frame: tuple[str, ...] = ()
    overlaps: tuple[tuple[str, str], ...] = ()
    zero_area: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "out_of_frame": list(self.out_of_frame),
            "overlaps": [list(p) for p in self.overlaps],
            "zero_area": list(self.zero_area),
        }


def _fmt(v: float) -> str:
    v = round(float(v), 3)
    if v.is_integer():
        return str(int(v))
    return f"{v:g}"


def _clip_text(text: str, width: float, font_size: float) -> str:
    max_chars = max(1, int(width / (font_size * _CHAR_W)))
    if len(text) <= max_chars:
        return text
    if max_chars <= 1:
        return text[:1]
    return text[: max_chars - 1] + "…"


def _text(x: float, y: float, content: str, size: float, fill: str = INK,
          anchor: str = "start", max_width: float | None = None) -> str:
    if max_width is not None:
        content = _clip_text(content, max_width, size)
    extra = f" text-anchor=\"{anchor}\"" if anchor != "start" else ""
    return (f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{_fmt(size)}" '
            f'{_FONT} fill="{fill}"{extra}>{escape(content)}</text>')


def _rect(x, y, w, h, fill, stroke=INK, rx: float = 0, extra: str = "") -> str:
    rx_attr = f' rx="{_fmt(rx)}"' if rx else ""
    return (f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" height="{_fmt(h)}"'
            f'{rx_attr} fill="{fill}" stroke="{stroke}" stroke-width="1"{extra}/>')


def _line(x1, y1, x2, y2, stroke=MUTED) -> str:
    return (f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{stroke}" stroke-width="1"/>')


def _circle(cx, cy, r, fill, stroke=INK) -> str:
    return (f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
            f'fill="{fill}" stroke="{stroke}" stroke-width="1"/>')


def _label_of(inst: ComponentInstance, *keys: str) -> str:
    for key in keys:
        value = inst.attributes.get(key)
        if isinstance(value, str) and value:
            return value
    return inst.type_name


def _glyph_for_icon(catalog: Catalog, name: str | None) -> str | None:
    if name is None:
        return None
    for icon in catalog.icons:
        if icon.name == name:
            return icon.glyph or name
    return name


# --- per-group sketches ------------------------------------------------------
# Every sketch draws inside (x, y, w, h), already scaled. The bounding rect is
# emitted separately so geometry can be parsed back out of the SVG.


def _sketch_button(inst, x, y, w, h, s, catalog):
    out = [_rect(x, y, w, h, ACCENT_SOFT, ACCENT, rx=min(h / 2, 8 * s))]
    label = _label_of(inst, "label", "text")
    glyph = _glyph_for_icon(catalog, inst.icon or inst.attributes.get("icon"))
    if inst.type_name in ("IconButton", "FloatingActionButton") and glyph:
        label = glyph
    elif glyph:
        label = f"{glyph} {label}"
    out.append(_text(x + w / 2, y + h / 2 + 4 * s, label, 12 * s, ACCENT,
                     anchor="middle", max_width=w - 8 * s))
    return out


def _sketch_checkbox(inst, x, y, w, h, s, catalog):
    box = min(16 * s, h * 0.8, w)
    by = y + (h - box) / 2
    out = [_rect(x, by, box, box, "#ffffff", INK, rx=2 * s)]
    if inst.attributes.get("checked"):
        out.append(_text(x + box * 0.15, by + box * 0.85, "✓", box, ACCENT))
    out.append(_text(x + box + 6 * s, y + h / 2 + 4 * s, _label_of(inst, "label"),
                     11 * s, INK, max_width=w - box - 8 * s))
    return out


def _sketch_radio(inst, x, y, w, h, s, catalog):
    r = min(8 * s, h * 0.4)
    cy = y + h / 2
    out = [_circle(x + r, cy, r, "#ffffff")]
    if inst.attributes.get("selected"):
        out.append(_circle(x + r, cy, r * 0.5, ACCENT, ACCENT))
    out.append(_text(x + 2 * r + 6 * s, cy + 4 * s, _label_of(inst, "label"),
                     11 * s, INK, max_width=w - 2 * r - 8 * s))
    return out


def _sketch_switch(inst, x, y, w, h, s, catalog):
    tw, th = min(34 * s, w), min(18 * s, h)
    ty = y + (h - th) / 2
    on = bool(inst.attributes.get("on"))
    out = [_rect(x, ty, tw, th, ACCENT_SOFT if on else FILL, INK, rx=th / 2)]
    knob_x = x + tw - th / 2 if on else x + th / 2
    out.append(_circle(knob_x, ty + th / 2, th * 0.42, "#ffffff"))
    label = inst.attributes.get("label")
    if isinstance(label, str) and label:
        out.append(_text(x + tw + 6 * s, y + h / 2 + 4 * s, label, 11 * s, INK,
                         max_width=w - tw - 8 * s))
    return out


def _sketch_text_field(inst, x, y, w, h, s, catalog):
    out = [_rect(x, y, w, h, "#ffffff", MUTED, rx=3 * s)]
    out.append(_line(x + 4 * s, y + h - 3 * s, x + w - 4 * s, y + h - 3 * s, ACCENT))
    content = _label_of(inst, "value", "placeholder", "label")
    out.append(_text(x + 6 * s, y + h / 2 + 4 * s, content, 11 * s, MUTED,
                     max_width=w - 12 * s))
    return out


def _sketch_label(inst, x, y, w, h, s, catalog):
    size = min(max(h * 0.6, 9 * s), 22 * s)
    color = inst.attributes.get("color")
    fill = color if isinstance(color, str) and color.startswith("#") else INK
    return [_text(x, y + h / 2 + size * 0.35, _label_of(inst, "text"), size, fill,
                  max_width=w)]


def _sketch_search(inst, x, y, w, h, s, catalog):
    out = [_rect(x, y, w, h, FILL, MUTED, rx=h / 2)]
    r = h * 0.22
    cx, cy = x + h * 0.45, y + h * 0.42
    out.append(_circle(cx, cy, r, "none", INK))
    out.append(_line(cx + r * 0.7, cy + r * 0.7, cx + r * 1.8, cy + r * 1.8, INK))
    out.append(_text(x + h * 0.95, y + h / 2 + 4 * s, _label_of(inst, "value", "placeholder"),
                     11 * s, MUTED, max_width=w - h - 8 * s))
    return out


def _sketch_dialog(inst, x, y, w, h, s, catalog):
    out = [_rect(x, y, w, h, "#ffffff", INK, rx=6 * s)]
    out.append(_text(x + 10 * s, y + 20 * s, _label_of(inst, "title"), 13 * s, INK,
                     max_width=w - 20 * s))
    message = inst.attributes.get("message")
    if isinstance(message, str) and message:
        out.append(_text(x + 10 * s, y + 38 * s, message, 10 * s, MUTED,
                         max_width=w - 20 * s))
    confirm = inst.attributes.get("confirm_label") or "OK"
    out.append(_text(x + w - 10 * s, y + h - 10 * s, str(confirm), 11 * s, ACCENT,
                     anchor="end"))
    return out


def _sketch_app_bar(inst, x, y, w, h, s, catalog):
    out = [_rect(x, y, w, h, ACCENT_SOFT, ACCENT)]
    tx = x + 12 * s
    if inst.attributes.get("show_navigation_icon", True):
        for i in range(3):
            yy = y + h / 2 - 4 * s + i * 4 * s
            out.append(_line(x + 8 * s, yy, x + 20 * s, yy, INK))
        tx = x + 28 * s
    out.append(_text(tx, y + h / 2 + 4 * s, _label_of(inst, "title"), 13 * s, INK,
                     max_width=w - (tx - x) - 8 * s))
    return out


def _sketch_card(inst, x, y, w, h, s, catalog):
    out = [_rect(x, y, w, h, "#ffffff", MUTED, rx=8 * s)]
    title = inst.attributes.get("title")
    if isinstance(title, str) and title:
        out.append(_text(x + 8 * s, y + 16 * s, title, 12 * s, INK, max_width=w - 16 * s))
    subtitle = inst.attributes.get("subtitle")
    if isinstance(subtitle, str) and subtitle:
        out.append(_text(x + 8 * s, y + 30 * s, subtitle, 10 * s, MUTED,
                         max_width=w - 16 * s))
    return out


def _sketch_list(inst, x, y, w, h, s, catalog):
    out = [_rect(x, y, w, h, "#ffffff", MUTED)]
    rows = max(1, min(6, int(h / (24 * s)))) if h >= 24 * s else 1
    for i in range(1, rows):
        yy = y + i * h / rows
        out.append(_line(x + 2 * s, yy, x + w - 2 * s, yy, "#d8dce4"))
    return out


def _sketch_list_item(inst, x, y, w, h, s, catalog):
    out = [_rect(x, y, w, h, "#ffffff", "#d8dce4")]
    tx = x + 8 * s
    glyph = _glyph_for_icon(catalog, inst.attributes.get("leading_icon"))
    if glyph:
        out.append(_text(x + 6 * s, y + h / 2 + 4 * s, glyph, 12 * s, MUTED))
        tx = x + 24 * s
    out.append(_text(tx, y + h / 2 + 4 * s, _label_of(inst, "headline"), 11 * s, INK,
                     max_width=w - (tx - x) - 8 * s))
    return out


def _sketch_slider(inst, x, y, w, h, s, catalog):
    cy = y + h / 2
    out = [_line(x, cy, x + w, cy, MUTED)]
    lo = float(inst.attributes.get("min", 0) or 0)
    hi = float(inst.attributes.get("max", 100) or 100)
    value = float(inst.attributes.get("value", (lo + hi) / 2) or 0)
    span = (hi - lo) or 1.0
    frac = min(1.0, max(0.0, (value - lo) / span))
    out.append(_line(x, cy, x + w * frac, cy, ACCENT))
    out.append(_circle(x + w * frac, cy, min(7 * s, h / 2), ACCENT, ACCENT))
    return out


def _sketch_progress(inst, x, y, w, h, s, catalog):
    if inst.type_name == "CircularProgressIndicator":
        r = min(w, h) / 2 - 1
        return [_circle(x + w / 2, y + h / 2, max(r, 1), "none", ACCENT)]
    out = [_rect(x, y + h / 2 - 3 * s, w, 6 * s, FILL, MUTED, rx=3 * s)]
    frac = float(inst.attributes.get("progress", 0.5) or 0)
    frac = min(1.0, max(0.0, frac))
    if frac > 0:
        out.append(_rect(x, y + h / 2 - 3 * s, w * frac, 6 * s, ACCENT, ACCENT, rx=3 * s))
    return out


def _sketch_chip(inst, x, y, w, h, s, catalog):
    selected = bool(inst.attributes.get("selected"))
    out = [_rect(x, y, w, h, ACCENT_SOFT if selected else FILL, MUTED, rx=h / 2)]
    out.append(_text(x + w / 2, y + h / 2 + 4 * s, _label_of(inst, "label"), 10 * s,
                     INK, anchor="middle", max_width=w - 8 * s))
    return out


def _sketch_image(inst, x, y, w, h, s, catalog):
    if inst.type_name == "Avatar":
        r = min(w, h) / 2
        out = [_circle(x + w / 2, y + h / 2, r, FILL, MUTED)]
        initials = inst.attributes.get("initials")
        if isinstance(initials, str) and initials:
            out.append(_text(x + w / 2, y + h / 2 + 4 * s, initials, r * 0.8, MUTED,
                             anchor="middle"))
        return out
    return [
        _rect(x, y, w, h, FILL, MUTED),
        _line(x, y, x + w, y + h),
        _line(x + w, y, x, y + h),
    ]


def _sketch_icon(inst, x, y, w, h, s, catalog):
    glyph = _glyph_for_icon(catalog, inst.icon or inst.attributes.get("icon")) or "?"
    size = min(w, h) * 0.8
    return [_text(x + w / 2, y + h / 2 + size * 0.35, glyph, size, INK, anchor="middle")]


def _sketch_snackbar(inst, x, y, w, h, s, catalog):
    out = [_rect(x, y, w, h, INK, INK, rx=4 * s)]
    out.append(_text(x + 8 * s, y + h / 2 + 4 * s, _label_of(inst, "message"), 11 * s,
                     "#ffffff", max_width=w - 16 * s))
    return out


def _sketch_divider(inst, x, y, w, h, s, catalog):
    return [_line(x, y + h / 2, x + w, y + h / 2, MUTED)]


def _sketch_nav(inst, x, y, w, h, s, catalog):
    out = [_rect(x, y, w, h, FILL, MUTED)]
    slots = max(len(inst.children), 3)
    for i in range(1, slots):
        out.append(_line(x + i * w / slots, y + 4 * s, x + i * w / slots, y + h - 4 * s,
                         "#d8dce4"))
    return out


def _sketch_default(inst, x, y, w, h, s, catalog):
    return [
        _rect(x, y, w, h, FILL, MUTED, rx=2 * s),
        _text(x + 4 * s, y + min(h - 2 * s, 13 * s), inst.type_name, 9 * s, MUTED,
              max_width=w - 8 * s),
    ]


_GROUP_SKETCHES = {
    "Button": _sketch_button,
    "Checkbox": _sketch_checkbox,
    "Radio Button": _sketch_radio,
    "Switch": _sketch_switch,
    "Chip": _sketch_chip,
    "Text Field": _sketch_text_field,
    "Label": _sketch_label,
    "Search Bar": _sketch_search,
    "Dialog": _sketch_dialog,
    "Top App Bar": _sketch_app_bar,
    "Bottom App Bar": _sketch_app_bar,
    "Card": _sketch_card,
    "List": _sketch_list,
    "Menu": _sketch_list,
    "Slider": _sketch_slider,
    "Progress Indicator": _sketch_progress,
    "Snackbar": _sketch_snackbar,
    "Tooltip": _sketch_chip,
    "Divider": _sketch_divider,
    "Navigation Bar": _sketch_nav,
    "Navigation Rail": _sketch_nav,
    "Navigation Drawer": _sketch_list,
    "Tabs": _sketch_nav,
    "Image": _sketch_image,
    "Icon": _sketch_icon,
}

# ListItem renders as a row even though its group is "List".
_TYPE_SKETCHES = {
    "ListItem": _sketch_list_item,
    "NavigationBarItem": _sketch_list_item,
    "NavigationDrawerItem": _sketch_list_item,
    "MenuItem": _sketch_list_item,
}


def _render_instance(inst: ComponentInstance, scale: float, catalog: Catalog) -> list[str]:
    x, y = inst.pos_x * scale, inst.pos_y * scale
    w, h = inst.width * scale, inst.height * scale
    spec = catalog.spec_for(inst.type_name)
    sketch = _TYPE_SKETCHES.get(inst.type_name)
    if sketch is None:
        sketch = _GROUP_SKETCHES.get(spec.group if spec else "", _sketch_default)
    parts = [f'<g class="instance" data-instance-id={quoteattr(inst.instance_id)} '
             f'data-type={quoteattr(inst.type_name)}>']
    # Bounding box first: geometry is recoverable by parsing the first rect.
    parts.append(_rect(x, y, w, h, "none", "none", extra=' class="bbox"'))
    parts.extend(sketch(inst, x, y, w, h, scale, catalog))
    for child in inst.children:
        parts.extend(_render_instance(child, scale, catalog))
    parts.append("</g>")
    return parts


def render_svg(doc: GuiDocument, catalog: Catalog, opts: RenderOptions | None = None) -> str:
    """Render a valid document as SVG text; one group per feature owning instances."""
    opts = opts or RenderOptions()
    report = validate_document(doc, catalog)
    if not report.valid:
        raise InvalidDocument(report)
    s = opts.scale
    width, height = doc.frame.width * s, doc.frame.height * s
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        _rect(0, 0, width, height, opts.background, "#c2c7d0", extra=' class="frame"'),
    ]
    for feature in doc.features:
        owned = doc.instances_of(feature.id)
        if not owned:
            continue
        lines.append(f'<g id={quoteattr(feature.id)} class="feature" '
                     f'data-name={quoteattr(feature.name)}>')
        for inst in owned:
            lines.extend(_render_instance(inst, s, catalog))
        if opts.show_feature_outlines:
            min_x = min(i.pos_x for i in owned) * s
            min_y = min(i.pos_y for i in owned) * s
            max_x = max(i.pos_x + i.width for i in owned) * s
            max_y = max(i.pos_y + i.height for i in owned) * s
            lines.append(
                f'<rect x="{_fmt(min_x - 2)}" y="{_fmt(min_y - 2)}" '
                f'width="{_fmt(max_x - min_x + 4)}" height="{_fmt(max_y - min_y + 4)}" '
                f'fill="none" stroke="{ACCENT}" stroke-width="1" '
                f'stroke-dasharray="4 3" class="feature-outline"/>'
            )
            lines.append(_text(min_x, max(min_y - 6, 8), feature.name, 9, ACCENT))
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _flatten(instances) -> list[ComponentInstance]:
    out = []
    for inst in instances:
        out.append(inst)
        out.extend(_flatten(inst.children))
    return out


def layout_report(doc: GuiDocument) -> LayoutReport:
    """Report geometry anomalies: escapes from the frame, cross-feature
    overlaps, and zero-area boxes (the last should be impossible after
    clamping; presence points at an engine bug)."""
    flat = _flatten(doc.instances)
    fw, fh = doc.frame.width, doc.frame.height

    out_of_frame = [
        i.instance_id for i in flat
        if i.pos_x < 0 or i.pos_y < 0 or i.pos_x + i.width > fw or i.pos_y + i.height > fh
    ]
    zero_area = [i.instance_id for i in flat if i.width * i.height == 0]

    overlaps: set[tuple[str, str]] = set()
    for a in flat:
        for b in flat:
            if a.instance_id >= b.instance_id or a.feature_id == b.feature_id:
                continue
            if (a.pos_x < b.pos_x + b.width and b.pos_x < a.pos_x + a.width
                    and a.pos_y < b.pos_y + b.height and b.pos_y < a.pos_y + a.height):
                overlaps.add((a.instance_id, b.instance_id))

    return LayoutReport(
        out_of_frame=tuple(sorted(out_of_frame)),
        overlaps=tuple(sorted(overlaps)),
        zero_area=tuple(sorted(zero_area)),
    )
