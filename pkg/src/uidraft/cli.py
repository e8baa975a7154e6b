"""Command line interface: serve the API, run the pipeline, inspect the catalog."""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .catalog import bundled_catalog, load_catalog, measure_token_reduction
from .engine import PipelineConfig, run_pipeline
from .errors import UidraftError
from .ir import Frame, GuiDocument, validate_document
from .llm import ENV_MODE, Gateway, GatewayConfig
from .render import RenderOptions, render_svg
from .service import ENV_DATA_DIR, ENV_PORT, create_app


def _load_catalog_arg(path: str | None):
    if path:
        return load_catalog(Path(path))
    return bundled_catalog()


def _parse_frame(text: str) -> Frame:
    try:
        w, h = text.lower().split("x")
        frame = Frame(width=float(w), height=float(h))
    except ValueError:
        raise click.UsageError(f"frame must look like 390x844, got {text!r}")
    if frame.width <= 0 or frame.height <= 0:
        raise click.UsageError("frame dimensions must be positive")
    return frame


@click.group()
def main():
    """GUI prototype generator: description in, editable prototype out."""


@main.command()
@click.option("--port", type=int, default=lambda: int(os.environ.get(ENV_PORT, "8000")),
              show_default="8000", help="Port to bind.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-dir", default=lambda: os.environ.get(ENV_DATA_DIR, "./data"),
              show_default="./data", help="Directory for project files.")
@click.option("--catalog", "catalog_path", type=click.Path(exists=True), default=None,
              help="Catalog file (defaults to the bundled library).")
@click.option("--ui-dir", type=click.Path(), default=None,
              help="Static UI build to serve under /ui.")
def serve(port: int, host: str, data_dir: str, catalog_path: str | None, ui_dir: str | None):
    """Run the REST service."""
    import uvicorn

    app = create_app(data_dir=data_dir, catalog=_load_catalog_arg(catalog_path),
                     ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.option("--description-file", type=click.Path(exists=True), required=True,
              help="Text file holding the high-level GUI description.")
@click.option("--catalog", "catalog_path", type=click.Path(exists=True), default=None,
              help="Catalog file (defaults to the bundled library).")
@click.option("--out", "out_path", type=click.Path(), default="doc.json",
              show_default=True, help="Where to write the prototype document.")
@click.option("--svg", "svg_path", type=click.Path(), default=None,
              help="Also render a preview to this SVG path.")
@click.option("--mode", type=click.Choice(["replay", "live", "record"]),
              default=lambda: os.environ.get(ENV_MODE, "replay"), show_default="replay")
@click.option("--fixtures", type=click.Path(), default=None,
              help="Fixture file for record/replay modes.")
@click.option("--frame", default="390x844", show_default=True,
              help="Frame size as WIDTHxHEIGHT in logical pixels.")
def generate(description_file: str, catalog_path: str | None, out_path: str,
             svg_path: str | None, mode: str, fixtures: str | None, frame: str):
    """Run the full pipeline over a description and write doc.json (+ SVG)."""
    if mode in ("replay", "record") and not fixtures:
        raise click.UsageError(f"--mode {mode} requires --fixtures")
    description = Path(description_file).read_text(encoding="utf-8")
    catalog = _load_catalog_arg(catalog_path)
    gateway = Gateway(GatewayConfig.from_env(), mode=mode, fixture_path=fixtures)
    cfg = PipelineConfig()
    try:
        doc, traces = run_pipeline(description, catalog, _parse_frame(frame), cfg, gateway)
    except UidraftError as exc:
        click.echo(f"generation failed: {exc}", err=True)
        sys.exit(1)
    Path(out_path).write_text(doc.to_json(), encoding="utf-8")
    click.echo(f"wrote {out_path} ({len(doc.features)} features, "
               f"{len(doc.instances)} instances)")
    if svg_path:
        svg = render_svg(doc, catalog, RenderOptions())
        Path(svg_path).write_text(svg, encoding="utf-8")
        click.echo(f"wrote {svg_path}")
    failed = [t for t in traces if t.outcome.value == "failed"]
    if failed:
        click.echo(f"{len(failed)} stage(s) failed; affected features stay pending", err=True)


@main.group()
def catalog():
    """Catalog inspection commands."""


@catalog.command()
@click.option("--catalog", "catalog_path", type=click.Path(exists=True), default=None,
              help="Catalog file (defaults to the bundled library).")
def stats(catalog_path: str | None):
    """Print the token reduction of the simplified library view."""
    cat = _load_catalog_arg(catalog_path)
    report = measure_token_reduction(cat)
    click.echo(f"components:        {len(cat.components)}")
    click.echo(f"full_tokens:       {report.full_tokens}")
    click.echo(f"simplified_tokens: {report.simplified_tokens}")
    click.echo(f"ratio:             {report.ratio:.3f}")


@main.command()
@click.argument("doc_path", type=click.Path(exists=True))
@click.option("--catalog", "catalog_path", type=click.Path(exists=True), default=None,
              help="Catalog file (defaults to the bundled library).")
def validate(doc_path: str, catalog_path: str | None):
    """Validate a prototype document; exit 0 when valid."""
    cat = _load_catalog_arg(catalog_path)
    doc = GuiDocument.from_json(Path(doc_path).read_text(encoding="utf-8"))
    report = validate_document(doc, cat)
    if report.valid:
        click.echo("valid")
        sys.exit(0)
    for v in report.violations:
        click.echo(f"{v.path}: [{v.rule}] {v.message}")
    sys.exit(1)


@main.command()
@click.option("--out", "out_path", type=click.Path(), default="docs/openapi.json",
              show_default=True)
def openapi(out_path: str):
    """Write the service's OpenAPI description to a file."""
    app = create_app(data_dir=os.environ.get(ENV_DATA_DIR, "./data"),
                     gateway=_NULL_GATEWAY)
    spec = app.openapi()
    Path(out_path).parent.mkdir(parents=True, exist_ok=True)
    Path(out_path).write_text(json.dumps(spec, indent=2) + "\n", encoding="utf-8")
    click.echo(f"wrote {out_path}")


class _NullGateway:
    """Placeholder used where no LLM is needed (schema generation)."""

    def complete(self, *args, **kwargs):
        raise UidraftError("no LLM gateway configured")


_NULL_GATEWAY = _NullGateway()


if __name__ == "__main__":
    main()
