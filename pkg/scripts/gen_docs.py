#!/usr/bin/env python3
"""Dump the published schema artifacts into docs/.

Writes the document schema, the three prompt fragment schemas, and the
service's OpenAPI description. Run from the repo root after changing any
schema or endpoint:

    python3 scripts/gen_docs.py
"""

from __future__ import annotations

import json
from pathlib import Path

from uidraft.schemas import DOCUMENT_SCHEMA, FRAGMENT_SCHEMAS
from uidraft.service import create_app

DOCS = Path(__file__).resolve().parents[1] / "docs"


class _NoGateway:
    def complete(self, *a, **k):
        raise RuntimeError("not configured")


def main():
    DOCS.mkdir(exist_ok=True)
    (DOCS / "ir-schema.json").write_text(
        json.dumps(DOCUMENT_SCHEMA, indent=2) + "\n", encoding="utf-8")
    for name, schema in FRAGMENT_SCHEMAS.items():
        (DOCS / f"fragment-{name}.json").write_text(
            json.dumps(schema, indent=2) + "\n", encoding="utf-8")
    app = create_app(data_dir="/tmp/uidraft-docs-data", gateway=_NoGateway())
    (DOCS / "openapi.json").write_text(
        json.dumps(app.openapi(), indent=2) + "\n", encoding="utf-8")
    print(f"wrote schema + openapi artifacts to {DOCS}")


if __name__ == "__main__":
    main()
