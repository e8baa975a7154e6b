"""Exception types shared across the package."""

from __future__ import annotations


class UidraftError(Exception):
    """Base class for all package errors."""


# --- catalog ---------------------------------------------------------------


class CatalogError(UidraftError):
    pass


class ParseError(CatalogError):
    """Catalog file is structurally malformed."""


class DuplicateTypeName(CatalogError):
    def __init__(self, type_name: str):
        super().__init__(f"duplicate component type name: {type_name!r}")
        self.type_name = type_name


class InvalidSchemaFragment(CatalogError):
    def __init__(self, type_name: str, detail: str):
        super().__init__(f"schema fragment for {type_name!r} is not valid JSON schema: {detail}")
        self.type_name = type_name


class UnknownTypeName(CatalogError):
    """Lookup asked for type names the catalog does not contain."""

    def __init__(self, unresolved: list[str]):
        super().__init__(f"unknown component type names: {unresolved}")
        self.unresolved = list(unresolved)


class EmptyCatalog(CatalogError):
    """Token measurement is meaningless on an empty catalog."""


# --- ir --------------------------------------------------------------------


class UnknownSchemaId(UidraftError):
    def __init__(self, schema_id: str):
        super().__init__(f"unknown fragment schema id: {schema_id!r}")
        self.schema_id = schema_id


class UnknownFeature(UidraftError):
    def __init__(self, feature_id: str):
        super().__init__(f"no feature with id {feature_id!r}")
        self.feature_id = feature_id


class ValidationFailed(UidraftError):
    """Carries the full validation report of the rejected input."""

    def __init__(self, report):
        lines = "; ".join(f"{v.path}: {v.message}" for v in report.violations[:5])
        super().__init__(f"validation failed: {lines}")
        self.report = report


class DocumentMismatch(UidraftError):
    pass


class InvalidDocument(UidraftError):
    """Renderer was handed a document that fails validation."""

    def __init__(self, report):
        super().__init__("document fails validation; see report")
        self.report = report


# --- llm -------------------------------------------------------------------


class LlmUnavailable(UidraftError):
    pass


class AuthError(LlmUnavailable):
    pass


class FixtureMiss(UidraftError):
    def __init__(self, key: str):
        super().__init__(f"no recorded exchange for prompt hash {key}")
        self.key = key


class RepairExhausted(UidraftError):
    """Model output never passed validation within the retry budget."""

    def __init__(self, raw_output: str, violations):
        first = violations[0].message if violations else "unparseable output"
        super().__init__(f"output invalid after retries: {first}")
        self.raw_output = raw_output
        self.violations = list(violations)


# --- storage ---------------------------------------------------------------


class StorageError(UidraftError):
    pass


class CorruptProject(UidraftError):
    def __init__(self, project_id: str, detail: str):
        super().__init__(f"project {project_id!r} failed to load: {detail}")
        self.project_id = project_id
