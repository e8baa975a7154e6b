"""REST service exposing projects, the pipeline, feature editing, incremental
regeneration, and SVG previews.

Mutating endpoints hold a per-project write lock; a second concurrent writer
gets 409 instead of waiting. Clients may also send an `If-Match-Revision`
header for optimistic concurrency control.
"""

from __future__ import annotations

import os
import uuid
from pathlib import Path
from typing import Any, Callable

from fastapi import FastAPI, Header, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import engine
from .catalog import Catalog, bundled_catalog, load_catalog, measure_token_reduction, simplify
from .errors import (
    CorruptProject,
    FixtureMiss,
    LlmUnavailable,
    RepairExhausted,
    StorageError,
    UidraftError,
    UnknownFeature,
    ValidationFailed,
)
from .ir import Frame, GuiDocument, validate_document
from .llm import ENV_MODE, Gateway, GatewayConfig
from .render import RenderOptions, layout_report, render_svg
from .storage import Project, ProjectStore

ENV_DATA_DIR = "GUIDE_DATA_DIR"
ENV_PORT = "GUIDE_PORT"
ENV_UI_ORIGIN = "GUIDE_UI_ORIGIN"
ENV_FIXTURES = "GUIDE_LLM_FIXTURES"

_STATUS_BY_CODE = {
    "bad_request": 400,
    "not_found": 404,
    "conflict": 409,
    "upstream_llm": 502,
    "internal": 500,
}


class ApiError(Exception):
    def __init__(self, code: str, message: str, detail: dict | None = None):
        assert code in _STATUS_BY_CODE
        super().__init__(message)
        self.code = code
        self.message = message
        self.detail = detail

    @property
    def status(self) -> int:
        return _STATUS_BY_CODE[self.code]

    def body(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"code": self.code, "message": self.message}
        if self.detail is not None:
            payload["detail"] = self.detail
        return payload


class FrameBody(BaseModel):
    width: float = Field(gt=0)
    height: float = Field(gt=0)


class CreateProjectBody(BaseModel):
    description: str
    frame: FrameBody = FrameBody(width=390, height=844)


class AddFeatureBody(BaseModel):
    name: str
    description: str


class EditFeatureBody(BaseModel):
    name: str | None = None
    description: str | None = None


def _project_json(project: Project) -> dict[str, Any]:
    return project.to_dict()


def create_app(
    data_dir: str | Path | None = None,
    catalog: Catalog | None = None,
    gateway: Gateway | None = None,
    cfg: engine.PipelineConfig | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service. Every argument falls back to environment config."""
    catalog = catalog or _catalog_from_env()
    data_dir = Path(data_dir or os.environ.get(ENV_DATA_DIR, "./data"))
    store = ProjectStore(data_dir, catalog)
    cfg = cfg or engine.PipelineConfig()
    gw = gateway or _gateway_from_env()

    app = FastAPI(title="uidraft service", version="0.1.0")
    app.state.store = store
    app.state.catalog = catalog
    app.state.gateway = gw
    app.state.pipeline_cfg = cfg

    origin = os.environ.get(ENV_UI_ORIGIN, "*")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[origin] if origin != "*" else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.body())

    @app.exception_handler(UidraftError)
    async def _uidraft_error(request: Request, exc: UidraftError):
        return JSONResponse(status_code=500,
                            content={"code": "internal", "message": str(exc)})

    def _load_or_404(project_id: str) -> Project:
        try:
            project = store.load(project_id)
        except CorruptProject as exc:
            raise ApiError("internal", str(exc))
        if project is None:
            raise ApiError("not_found", f"no project {project_id!r}")
        return project

    def _mutate(project_id: str, expected_revision: int | None,
                fn: Callable[[Project], Project]) -> Project:
        with store.try_write_lock(project_id) as acquired:
            if not acquired:
                raise ApiError("conflict", "another write to this project is in progress")
            project = _load_or_404(project_id)
            if expected_revision is not None and project.document.revision != expected_revision:
                raise ApiError(
                    "conflict",
                    f"revision mismatch: expected {expected_revision}, "
                    f"document is at {project.document.revision}",
                )
            updated = fn(project)
            try:
                store.save(updated)
            except StorageError as exc:
                raise ApiError("internal", str(exc))
            return updated

    def _wrap_llm_errors(fn: Callable[[], Any]) -> Any:
        try:
            return fn()
        except (LlmUnavailable, FixtureMiss) as exc:
            raise ApiError("upstream_llm", str(exc))
        except RepairExhausted as exc:
            raise ApiError(
                "upstream_llm", str(exc),
                detail={"violations": [v.to_dict() for v in exc.violations]},
            )

    # -- projects -------------------------------------------------------------

    @app.post("/projects", status_code=201)
    def create_project(body: CreateProjectBody):
        if not body.description.strip():
            raise ApiError("bad_request", "description must be non-empty")
        project_id = uuid.uuid4().hex[:12]
        doc = GuiDocument(
            doc_id=project_id,
            frame=Frame(width=body.frame.width, height=body.frame.height),
            description=body.description.strip(),
        )
        project = Project(project_id=project_id, document=doc)
        try:
            store.save(project)
        except StorageError as exc:
            raise ApiError("internal", str(exc))
        return _project_json(project)

    @app.get("/projects/{project_id}")
    def get_project(project_id: str):
        return _project_json(_load_or_404(project_id))

    @app.post("/projects/{project_id}/decompose")
    def decompose_project(project_id: str,
                          if_match_revision: int | None = Header(default=None)):
        def action(project: Project) -> Project:
            features, trace = _wrap_llm_errors(
                lambda: engine.decompose(project.document.description, cfg, gw))
            doc = GuiDocument(
                doc_id=project.document.doc_id,
                frame=project.document.frame,
                description=project.document.description,
                features=tuple(features),
                instances=(),
                revision=project.document.revision + 1,
                ir_version=project.document.ir_version,
            )
            return project.with_document(doc, [trace])

        project = _mutate(project_id, if_match_revision, action)
        return {"features": [f.to_dict() for f in project.document.features]}

    @app.post("/projects/{project_id}/features", status_code=201)
    def add_feature(project_id: str, body: AddFeatureBody,
                    if_match_revision: int | None = Header(default=None)):
        if not body.name.strip() or not body.description.strip():
            raise ApiError("bad_request", "feature name and description must be non-empty")
        project = _mutate(
            project_id, if_match_revision,
            lambda p: p.with_document(engine.add_feature(p.document, body.name, body.description)),
        )
        return _project_json(project)

    @app.put("/projects/{project_id}/features/{feature_id}")
    def edit_feature(project_id: str, feature_id: str, body: EditFeatureBody,
                     if_match_revision: int | None = Header(default=None)):
        if body.name is not None and not body.name.strip():
            raise ApiError("bad_request", "feature name must be non-empty")
        if body.description is not None and not body.description.strip():
            raise ApiError("bad_request", "feature description must be non-empty")

        def action(project: Project) -> Project:
            try:
                doc = engine.edit_feature(project.document, feature_id,
                                          name=body.name, description=body.description)
            except UnknownFeature as exc:
                raise ApiError("not_found", str(exc))
            return project.with_document(doc)

        return _project_json(_mutate(project_id, if_match_revision, action))

    @app.delete("/projects/{project_id}/features/{feature_id}")
    def delete_feature(project_id: str, feature_id: str,
                       if_match_revision: int | None = Header(default=None)):
        def action(project: Project) -> Project:
            try:
                doc = engine.delete_feature(project.document, feature_id)
            except UnknownFeature as exc:
                raise ApiError("not_found", str(exc))
            return project.with_document(doc)

        return _project_json(_mutate(project_id, if_match_revision, action))

    # -- generation -----------------------------------------------------------

    @app.post("/projects/{project_id}/generate")
    def generate(project_id: str,
                 if_match_revision: int | None = Header(default=None)):
        def action(project: Project) -> Project:
            doc, traces = _wrap_llm_errors(
                lambda: engine.generate_pending(project.document, catalog, cfg, gw))
            return project.with_document(doc, traces)

        return _project_json(_mutate(project_id, if_match_revision, action))

    @app.post("/projects/{project_id}/features/{feature_id}/regenerate")
    def regenerate(project_id: str, feature_id: str,
                   if_match_revision: int | None = Header(default=None)):
        def action(project: Project) -> Project:
            try:
                doc, traces = _wrap_llm_errors(
                    lambda: engine.regenerate_feature(project.document, feature_id,
                                                      catalog, cfg, gw))
            except UnknownFeature as exc:
                raise ApiError("not_found", str(exc))
            if doc.revision == project.document.revision:
                # Regeneration failed; the document is unchanged by contract.
                failed = traces[-1].to_dict() if traces else None
                raise ApiError("upstream_llm", "feature regeneration failed",
                               detail={"trace": failed})
            return project.with_document(doc, traces)

        return _project_json(_mutate(project_id, if_match_revision, action))

    # -- previews ---------------------------------------------------------------

    @app.get("/projects/{project_id}/preview.svg")
    def preview(project_id: str, scale: float = 1.0, outlines: bool = False):
        project = _load_or_404(project_id)
        try:
            svg = render_svg(project.document, catalog,
                             RenderOptions(scale=scale, show_feature_outlines=outlines))
        except ValueError as exc:
            raise ApiError("bad_request", str(exc))
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/projects/{project_id}/layout-report")
    def project_layout_report(project_id: str):
        project = _load_or_404(project_id)
        return layout_report(project.document).to_dict()

    @app.get("/projects/{project_id}/validation")
    def project_validation(project_id: str):
        project = _load_or_404(project_id)
        return validate_document(project.document, catalog).to_dict()

    # -- catalog ----------------------------------------------------------------

    @app.get("/catalog/simplified")
    def catalog_simplified():
        view = simplify(catalog)
        return {
            "entries": [{"group": g, "types": list(names)} for g, names in view.entries],
            "serialized_form": view.serialized_form,
        }

    @app.get("/catalog/stats")
    def catalog_stats():
        return measure_token_reduction(catalog).to_dict()

    @app.get("/catalog/components/{type_name}")
    def catalog_component(type_name: str):
        spec = catalog.spec_for(type_name)
        if spec is None:
            raise ApiError("not_found", f"no component type {type_name!r}")
        return spec.to_dict()

    # -- static UI ----------------------------------------------------------------

    ui_path = Path(ui_dir) if ui_dir else Path("frontend/dist")
    if ui_path.is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_path), html=True), name="ui")

    return app


def _catalog_from_env() -> Catalog:
    path = os.environ.get("GUIDE_CATALOG")
    if path:
        return load_catalog(Path(path))
    return bundled_catalog()


def _gateway_from_env() -> Gateway:
    mode = os.environ.get(ENV_MODE, "replay")
    fixtures = os.environ.get(ENV_FIXTURES)
    return Gateway(GatewayConfig.from_env(), mode=mode, fixture_path=fixtures)
