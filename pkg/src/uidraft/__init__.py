"""uidraft: decomposition-based GUI prototype generation.

A high-level description is split into fine-granular features; each feature
selects component types from a simplified library view, retrieves their full
specs, and is implemented as positioned component instances in an open JSON
representation that renders to SVG wireframes. Features regenerate
individually without touching the rest of the prototype.
"""

from .catalog import (
    Catalog,
    ComponentSpec,
    SimplifiedCatalogView,
    bundled_catalog,
    load_catalog,
    lookup_full_specs,
    measure_token_reduction,
    simplify,
)
from .engine import PipelineConfig, StageTrace, regenerate_feature, run_pipeline
from .ir import (
    ComponentInstance,
    Frame,
    GuiDocument,
    GuiFeature,
    ValidationReport,
    diff_documents,
    merge_feature_implementation,
    validate_document,
    validate_fragment,
)
from .llm import ChatExchange, Gateway, GatewayConfig, estimate_tokens
from .render import LayoutReport, RenderOptions, layout_report, render_svg

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "ComponentSpec",
    "SimplifiedCatalogView",
    "bundled_catalog",
    "load_catalog",
    "lookup_full_specs",
    "measure_token_reduction",
    "simplify",
    "PipelineConfig",
    "StageTrace",
    "regenerate_feature",
    "run_pipeline",
    "ComponentInstance",
    "Frame",
    "GuiDocument",
    "GuiFeature",
    "ValidationReport",
    "diff_documents",
    "merge_feature_implementation",
    "validate_document",
    "validate_fragment",
    "ChatExchange",
    "Gateway",
    "GatewayConfig",
    "estimate_tokens",
    "LayoutReport",
    "RenderOptions",
    "layout_report",
    "render_svg",
    "__version__",
]
