"""Graph interchange format and review-metadata sidecar.

The graph document is UTF-8 JSON with a fixed schema (version 1):

    {
      "schemaVersion": 1,
      "project": {"name": "...", "revision": "..." | null},
      "nodes": [{"name", "kind", "module", "hasSorry"}, ...],
      "edges": [{"source", "target", "site"}, ...]
    }

Serialization is canonical: nodes sorted by name, edges by (source, target),
fixed key order, two-space indent, newline-terminated. Equal graphs always
produce byte-identical documents.

Review metadata (confidence and progress) lives in a separate sidecar
document keyed by declaration name, so exporter output stays immutable while
review state evolves. Sidecar timestamps are RFC 3339 UTC strings.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Mapping

from .errors import DocumentFormatError, InvalidGraphError
from .model import (
    Confidence,
    Declaration,
    DeclKind,
    DepEdge,
    DependencyGraph,
    DepSite,
    NodeMetadata,
    Progress,
    ProjectInfo,
    validate_graph,
)

SCHEMA_VERSION = 1

_TIMESTAMP_RE = re.compile(
    r"^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(\.\d+)?Z$")


def utc_now_rfc3339() -> str:
    """Current time as an RFC 3339 UTC string with second precision."""
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _dumps(obj: Any) -> bytes:
    return (json.dumps(obj, indent=2, ensure_ascii=True) + "\n").encode("utf-8")


def _loads(data: bytes | str, what: str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentFormatError(f"{what} is not valid UTF-8: {exc}") from exc
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentFormatError(
            f"{what} is not valid JSON: {exc.msg}",
            line=exc.lineno, column=exc.colno) from exc


def _require(obj: Mapping[str, Any], key: str, types: type | tuple,
             where: str) -> Any:
    if key not in obj:
        raise DocumentFormatError(f"missing required field in {where}",
                                  field=key)
    value = obj[key]
    if not isinstance(value, types) or isinstance(value, bool) and types is int:
        raise DocumentFormatError(
            f"wrong type in {where}: expected {types}", field=key)
    return value


def _reject_unknown(obj: Mapping[str, Any], allowed: set[str],
                    where: str) -> None:
    for key in obj:
        if key not in allowed:
            raise DocumentFormatError(f"unknown field in {where}", field=key)


def _parse_enum(value: str, enum_cls: type, field_name: str, where: str):
    try:
        return enum_cls(value)
    except ValueError:
        valid = ", ".join(m.value for m in enum_cls)
        raise DocumentFormatError(
            f"invalid {where} value {value!r}; expected one of: {valid}",
            field=field_name) from None


def _check_name(name: str, where: str) -> str:
    if not name or not all(segment for segment in name.split(".")):
        raise DocumentFormatError(
            f"invalid declaration name {name!r} in {where}: names are "
            "non-empty dot-separated identifiers", field="name")
    return name


def parse_graph(data: bytes | str) -> DependencyGraph:
    """Parse a graph document into a validated dependency graph.

    Raises :class:`DocumentFormatError` for malformed JSON (with position)
    or schema violations (naming the field), and :class:`InvalidGraphError`
    listing every structural violation when the document's graph is not
    well formed.
    """
    doc = _loads(data, "graph document")
    if not isinstance(doc, dict):
        raise DocumentFormatError("graph document must be a JSON object")
    _reject_unknown(doc, {"schemaVersion", "project", "nodes", "edges"},
                    "graph document")
    version = _require(doc, "schemaVersion", int, "graph document")
    if isinstance(version, bool) or version != SCHEMA_VERSION:
        raise DocumentFormatError(
            f"unsupported schema version {version!r}; expected {SCHEMA_VERSION}",
            field="schemaVersion")

    project_obj = _require(doc, "project", dict, "graph document")
    _reject_unknown(project_obj, {"name", "revision"}, "project")
    project_name = _require(project_obj, "name", str, "project")
    revision = project_obj.get("revision")
    if revision is not None and not isinstance(revision, str):
        raise DocumentFormatError("revision must be a string or null",
                                  field="revision")
    project = ProjectInfo(name=project_name, revision=revision)

    declarations: list[Declaration] = []
    for i, node in enumerate(_require(doc, "nodes", list, "graph document")):
        where = f"nodes[{i}]"
        if not isinstance(node, dict):
            raise DocumentFormatError(f"{where} must be an object")
        _reject_unknown(node, {"name", "kind", "module", "hasSorry"}, where)
        name = _check_name(_require(node, "name", str, where), where)
        kind = _parse_enum(_require(node, "kind", str, where), DeclKind,
                           "kind", where)
        module = _require(node, "module", str, where)
        has_sorry = _require(node, "hasSorry", bool, where)
        declarations.append(Declaration(
            name=name, kind=kind, module=module,
            metadata=NodeMetadata(has_sorry=has_sorry)))

    edges: list[DepEdge] = []
    for i, edge in enumerate(_require(doc, "edges", list, "graph document")):
        where = f"edges[{i}]"
        if not isinstance(edge, dict):
            raise DocumentFormatError(f"{where} must be an object")
        _reject_unknown(edge, {"source", "target", "site"}, where)
        edges.append(DepEdge(
            source=_require(edge, "source", str, where),
            target=_require(edge, "target", str, where),
            site=_parse_enum(_require(edge, "site", str, where), DepSite,
                             "site", where)))

    graph = DependencyGraph(declarations, edges, project)
    violations = validate_graph(graph)
    if violations:
        raise InvalidGraphError(violations)
    return graph


def serialize_graph(graph: DependencyGraph) -> bytes:
    """Serialize a graph to canonical document bytes.

    Nodes are sorted by name, edges by (source, target); equal graphs yield
    byte-identical output across runs and platforms.
    """
    nodes = [
        {
            "name": decl.name,
            "kind": decl.kind.value,
            "module": decl.module,
            "hasSorry": decl.metadata.has_sorry,
        }
        for decl in sorted(graph.nodes.values(), key=lambda d: d.name)
    ]
    edges = [
        {"source": e.source, "target": e.target, "site": e.site.value}
        for e in sorted(graph.edges, key=lambda e: (e.source, e.target))
    ]
    document = {
        "schemaVersion": SCHEMA_VERSION,
        "project": {
            "name": graph.project.name,
            "revision": graph.project.revision,
        },
        "nodes": nodes,
        "edges": edges,
    }
    return _dumps(document)


@dataclass(frozen=True)
class SidecarEntry:
    """Review metadata for one declaration, as stored in the sidecar."""

    confidence: Confidence = Confidence.UNREVIEWED
    proof_progress: Progress = Progress.NOT_STARTED
    def_progress: Progress = Progress.NOT_STARTED
    last_modified: str = ""


@dataclass
class MetadataLoadResult:
    """Outcome of merging a sidecar onto a graph."""

    graph: DependencyGraph
    stale_names: list[str] = field(default_factory=list)


class MetadataSidecar:
    """Mutable map of declaration name to review metadata.

    Entries may reference names absent from the current graph; such stale
    entries are tolerated and reported when merged.
    """

    def __init__(self, entries: Mapping[str, SidecarEntry] | None = None):
        self.entries: dict[str, SidecarEntry] = dict(entries or {})

    @classmethod
    def parse(cls, data: bytes | str) -> "MetadataSidecar":
        doc = _loads(data, "metadata sidecar")
        if not isinstance(doc, dict):
            raise DocumentFormatError("metadata sidecar must be a JSON object")
        _reject_unknown(doc, {"schemaVersion", "entries"}, "metadata sidecar")
        version = _require(doc, "schemaVersion", int, "metadata sidecar")
        if isinstance(version, bool) or version != SCHEMA_VERSION:
            raise DocumentFormatError(
                f"unsupported schema version {version!r}",
                field="schemaVersion")
        raw_entries = _require(doc, "entries", dict, "metadata sidecar")
        entries: dict[str, SidecarEntry] = {}
        for name, raw in raw_entries.items():
            where = f"entries[{name!r}]"
            if not isinstance(raw, dict):
                raise DocumentFormatError(f"{where} must be an object")
            _reject_unknown(raw, {"confidence", "proofProgress", "defProgress",
                                  "lastModified"}, where)
            timestamp = _require(raw, "lastModified", str, where)
            if not _TIMESTAMP_RE.match(timestamp):
                raise DocumentFormatError(
                    f"invalid RFC 3339 UTC timestamp {timestamp!r} in {where}",
                    field="lastModified")
            entries[name] = SidecarEntry(
                confidence=_parse_enum(
                    _require(raw, "confidence", str, where), Confidence,
                    "confidence", where),
                proof_progress=_parse_enum(
                    _require(raw, "proofProgress", str, where), Progress,
                    "proofProgress", where),
                def_progress=_parse_enum(
                    _require(raw, "defProgress", str, where), Progress,
                    "defProgress", where),
                last_modified=timestamp)
        return cls(entries)

    def serialize(self) -> bytes:
        """Canonical sidecar bytes: entries sorted by declaration name."""
        entries = {
            name: {
                "confidence": entry.confidence.value,
                "proofProgress": entry.proof_progress.value,
                "defProgress": entry.def_progress.value,
                "lastModified": entry.last_modified,
            }
            for name, entry in sorted(self.entries.items())
        }
        return _dumps({"schemaVersion": SCHEMA_VERSION, "entries": entries})

    def update(self, name: str,
               confidence: Confidence | None = None,
               proof_progress: Progress | None = None,
               def_progress: Progress | None = None,
               timestamp: str | None = None) -> SidecarEntry:
        """Merge non-None fields into the entry for ``name`` and return it."""
        current = self.entries.get(name, SidecarEntry())
        updated = SidecarEntry(
            confidence=confidence if confidence is not None else current.confidence,
            proof_progress=(proof_progress if proof_progress is not None
                            else current.proof_progress),
            def_progress=(def_progress if def_progress is not None
                          else current.def_progress),
            last_modified=timestamp or utc_now_rfc3339())
        self.entries[name] = updated
        return updated

    def apply_to(self, graph: DependencyGraph) -> MetadataLoadResult:
        """Merge entries onto matching nodes; report stale names."""
        replacements: dict[str, Declaration] = {}
        stale: list[str] = []
        for name, entry in sorted(self.entries.items()):
            decl = graph.nodes.get(name)
            if decl is None:
                stale.append(name)
                continue
            replacements[name] = Declaration(
                name=decl.name, kind=decl.kind, module=decl.module,
                metadata=decl.metadata.merged(
                    confidence=entry.confidence,
                    proof_progress=entry.proof_progress,
                    def_progress=entry.def_progress))
        return MetadataLoadResult(graph.with_declarations(replacements), stale)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MetadataSidecar):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self) -> str:
        return f"MetadataSidecar(entries={len(self.entries)})"


def load_metadata(data: bytes | str,
                  graph: DependencyGraph) -> MetadataLoadResult:
    """Parse sidecar bytes and merge them onto ``graph``."""
    return MetadataSidecar.parse(data).apply_to(graph)
