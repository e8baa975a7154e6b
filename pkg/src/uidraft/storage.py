"""File-based project persistence: one JSON file per project, atomic writes.

Documents are validated on every persist and on load, so a data directory can
never silently accumulate broken prototypes.
"""

from __future__ import annotations

import json
import os
import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from .catalog import Catalog
from .engine import StageTrace
from .errors import CorruptProject, StorageError, ValidationFailed
from .ir import GuiDocument, validate_document


def _now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


@dataclass(frozen=True)
class Project:
    project_id: str
    document: GuiDocument
    traces: tuple[dict[str, Any], ...] = ()
    created_at: str = field(default_factory=_now)
    updated_at: str = field(default_factory=_now)

    def with_document(self, document: GuiDocument,
                      new_traces: list[StageTrace] | None = None) -> "Project":
        traces = self.traces
        if new_traces:
            traces = traces + tuple(t.to_dict() for t in new_traces)
        return replace(self, document=document, traces=traces, updated_at=_now())

    def to_dict(self) -> dict[str, Any]:
        return {
            "project_id": self.project_id,
            "created_at": self.created_at,
            "updated_at": self.updated_at,
            "document": self.document.to_dict(),
            "traces": list(self.traces),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Project":
        return cls(
            project_id=d["project_id"],
            document=GuiDocument.from_dict(d["document"]),
            traces=tuple(d.get("traces", [])),
            created_at=d["created_at"],
            updated_at=d["updated_at"],
        )


class ProjectStore:
    """Directory of project files with per-project write locks."""

    def __init__(self, data_dir: str | Path, catalog: Catalog):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.catalog = catalog
        self._meta_lock = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}

    def _path(self, project_id: str) -> Path:
        safe = project_id.replace("/", "_")
        return self.data_dir / f"{safe}.json"

    def _lock_for(self, project_id: str) -> threading.Lock:
        with self._meta_lock:
            return self._locks.setdefault(project_id, threading.Lock())

    @contextmanager
    def try_write_lock(self, project_id: str):
        """Non-blocking write lock; yields False when another writer holds it."""
        lock = self._lock_for(project_id)
        acquired = lock.acquire(blocking=False)
        try:
            yield acquired
        finally:
            if acquired:
                lock.release()

    def exists(self, project_id: str) -> bool:
        return self._path(project_id).exists()

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.data_dir.glob("*.json"))

    def save(self, project: Project) -> None:
        report = validate_document(project.document, self.catalog)
        if not report.valid:
            raise ValidationFailed(report)
        path = self._path(project.project_id)
        tmp = path.with_suffix(".json.tmp")
        payload = json.dumps(project.to_dict(), ensure_ascii=False, indent=2) + "\n"
        try:
            tmp.write_text(payload, encoding="utf-8")
            os.replace(tmp, path)
        except OSError as exc:
            try:
                tmp.unlink(missing_ok=True)
            except OSError:
                pass
            raise StorageError(f"failed to persist project {project.project_id}: {exc}") from exc

    def load(self, project_id: str) -> Project | None:
        path = self._path(project_id)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            project = Project.from_dict(data)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise CorruptProject(project_id, str(exc)) from exc
        except OSError as exc:
            raise StorageError(f"failed to read project {project_id}: {exc}") from exc
        report = validate_document(project.document, self.catalog)
        if not report.valid:
            raise CorruptProject(project_id, "persisted document fails validation")
        return project
