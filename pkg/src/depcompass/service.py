"""HTTP API over a loaded graph: filtered views, review-set runs, reports,
and persisted review-metadata updates.

The graph served never changes during a server's lifetime; only metadata
mutates. Metadata writes go through a single lock and are flushed to the
sidecar file atomically (write temp, fsync, rename) before the response is
returned, so any acknowledged update survives a process kill.
"""

from __future__ import annotations

import os
import tempfile
import threading
from pathlib import Path
from typing import Any, Mapping

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .compass import CompassOptions, run_compass
from .errors import (
    DocumentFormatError,
    PatternError,
    UnknownDeclarationError,
)
from .filters import apply_filters, decode_query, spec_to_document
from .interchange import (
    SCHEMA_VERSION,
    MetadataSidecar,
    SidecarEntry,
    utc_now_rfc3339,
)
from .model import (
    Confidence,
    DependencyGraph,
    EdgeKind,
    Progress,
    classify_edge,
)
from .report import build_report, render_report


class ServiceState:
    """Loaded graph plus the mutable, persisted metadata store."""

    def __init__(self, graph: DependencyGraph,
                 sidecar: MetadataSidecar | None = None,
                 sidecar_path: Path | None = None,
                 graph_path: Path | None = None,
                 default_options: CompassOptions = CompassOptions()):
        self.base_graph = graph
        self.sidecar = sidecar if sidecar is not None else MetadataSidecar()
        self.sidecar_path = Path(sidecar_path) if sidecar_path else None
        self.graph_path = Path(graph_path) if graph_path else None
        self.default_options = default_options
        self._write_lock = threading.Lock()
        self._graph = self.sidecar.apply_to(graph).graph

    @property
    def graph(self) -> DependencyGraph:
        """Graph with current review metadata merged in."""
        return self._graph

    def _persist(self, sidecar: MetadataSidecar) -> None:
        if self.sidecar_path is None:
            return
        data = sidecar.serialize()
        directory = self.sidecar_path.parent
        fd, tmp_name = tempfile.mkstemp(dir=directory, prefix=".sidecar-",
                                        suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(data)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp_name, self.sidecar_path)
        except BaseException:
            try:
                os.unlink(tmp_name)
            except OSError:
                pass
            raise

    def patch_metadata(self, name: str,
                       confidence: Confidence | None = None,
                       proof_progress: Progress | None = None,
                       def_progress: Progress | None = None) -> SidecarEntry:
        """Merge fields into one node's entry; persist before returning.

        The in-memory state only advances once the sidecar file write
        succeeded, so a failed write leaves no partial update behind.
        """
        if name not in self.base_graph:
            raise UnknownDeclarationError(name)
        with self._write_lock:
            candidate = MetadataSidecar(self.sidecar.entries)
            entry = candidate.update(
                name, confidence=confidence, proof_progress=proof_progress,
                def_progress=def_progress, timestamp=utc_now_rfc3339())
            self._persist(candidate)
            self.sidecar = candidate
            self._graph = candidate.apply_to(self.base_graph).graph
            return entry


def _metadata_body(state: ServiceState, name: str) -> dict[str, Any]:
    decl = state.graph.nodes[name]
    entry = state.sidecar.entries.get(name)
    meta = decl.metadata
    return {
        "name": name,
        "confidence": meta.confidence.value,
        "proofProgress": meta.proof_progress.value,
        "defProgress": meta.def_progress.value,
        "hasSorry": meta.has_sorry,
        "lastModified": entry.last_modified if entry else None,
    }


def _parse_patch_body(body: Any) -> dict[str, Any]:
    if not isinstance(body, dict):
        raise DocumentFormatError("metadata patch must be a JSON object")
    allowed = {"confidence": Confidence, "proofProgress": Progress,
               "defProgress": Progress}
    parsed: dict[str, Any] = {}
    for key, value in body.items():
        if key not in allowed:
            raise DocumentFormatError(
                "field is not patchable (sidecar holds confidence, "
                "proofProgress, defProgress)", field=key)
        enum_cls = allowed[key]
        if not isinstance(value, str):
            raise DocumentFormatError("expected a string value", field=key)
        try:
            parsed[key] = enum_cls(value)
        except ValueError:
            valid = ", ".join(m.value for m in enum_cls)
            raise DocumentFormatError(
                f"invalid value {value!r}; expected one of: {valid}",
                field=key) from None
    return parsed


def _compass_body(result) -> dict[str, Any]:
    return {
        "targets": sorted(result.targets),
        "keptNodes": sorted(result.kept_nodes),
        "axiomNodes": sorted(result.axiom_nodes),
        "reviewCone": {t: sorted(result.review_cone[t])
                       for t in sorted(result.review_cone)},
        "prunedEdgeCount": result.pruned_edge_count,
        "perTargetReduction": {t: result.per_target_reduction[t]
                               for t in sorted(result.per_target_reduction)},
        "combinedReduction": result.combined_reduction,
        "options": {
            "includeAllAxioms": result.options.include_all_axioms,
            "restrictAxiomsToCone": result.options.restrict_axioms_to_cone,
        },
    }


def _view_body(state: ServiceState, view) -> dict[str, Any]:
    graph = state.graph
    nodes = []
    for name in sorted(view.node_names):
        decl = graph.nodes[name]
        nodes.append({
            "name": name,
            "kind": decl.kind.value,
            "module": decl.module,
            "metadata": _metadata_body(state, name),
        })
    edges = []
    for edge in sorted(view.edges, key=lambda e: (e.source, e.target)):
        kind = classify_edge(graph, edge)
        edges.append({
            "source": edge.source,
            "target": edge.target,
            "site": edge.site.value,
            "kind": kind.value,
            "pruned": kind.pruned,
        })
    return {
        "project": {"name": graph.project.name,
                    "revision": graph.project.revision},
        "nodes": nodes,
        "edges": edges,
        "provenance": spec_to_document(view.provenance),
    }


def create_app(state: ServiceState | None = None,
               static_dir: Path | str | None = None) -> FastAPI:
    """Build the API application; ``state`` may arrive later via app.state.

    ``static_dir``, when it exists, is mounted at the root to host the web
    viewer; the API is fully functional without it.
    """
    app = FastAPI(title="depcompass", docs_url=None, redoc_url=None)
    app.state.service = state

    def service() -> ServiceState:
        current = app.state.service
        if current is None:
            raise _NotInitialized()
        return current

    class _NotInitialized(Exception):
        pass

    @app.exception_handler(_NotInitialized)
    async def _not_initialized(request: Request, exc: _NotInitialized):
        return JSONResponse({"detail": "no graph loaded"}, status_code=503)

    @app.exception_handler(UnknownDeclarationError)
    async def _unknown(request: Request, exc: UnknownDeclarationError):
        return JSONResponse({"detail": str(exc)}, status_code=404)

    @app.exception_handler(DocumentFormatError)
    async def _bad_document(request: Request, exc: DocumentFormatError):
        return JSONResponse({"detail": str(exc)}, status_code=400)

    @app.exception_handler(PatternError)
    async def _bad_pattern(request: Request, exc: PatternError):
        return JSONResponse({"detail": str(exc)}, status_code=400)

    @app.exception_handler(ValueError)
    async def _bad_value(request: Request, exc: ValueError):
        return JSONResponse({"detail": str(exc)}, status_code=400)

    @app.get("/api/health")
    def health() -> dict[str, Any]:
        current = service()
        return {
            "status": "ok",
            "graphNodeCount": len(current.graph),
            "schemaVersion": SCHEMA_VERSION,
        }

    @app.get("/api/graph")
    def graph_view(request: Request) -> dict[str, Any]:
        current = service()
        spec = decode_query(dict(request.query_params))
        view = apply_filters(current.graph, spec)
        return _view_body(current, view)

    @app.post("/api/compass")
    async def compass(request: Request) -> dict[str, Any]:
        current = service()
        try:
            body = await request.json()
        except Exception:
            raise DocumentFormatError("request body is not valid JSON")
        if not isinstance(body, dict):
            raise DocumentFormatError("request body must be a JSON object")
        targets = body.get("targets")
        if (not isinstance(targets, list)
                or not all(isinstance(t, str) for t in targets)):
            raise DocumentFormatError("targets must be a list of names",
                                      field="targets")
        options = current.default_options
        raw_options = body.get("options")
        if raw_options is not None:
            if not isinstance(raw_options, dict):
                raise DocumentFormatError("options must be an object",
                                          field="options")
            for key in raw_options:
                if key not in ("includeAllAxioms", "restrictAxiomsToCone"):
                    raise DocumentFormatError("unknown option", field=key)
            options = CompassOptions(
                include_all_axioms=bool(raw_options.get(
                    "includeAllAxioms", options.include_all_axioms)),
                restrict_axioms_to_cone=bool(raw_options.get(
                    "restrictAxiomsToCone",
                    options.restrict_axioms_to_cone)))
        result = run_compass(current.graph, targets, options)
        return _compass_body(result)

    @app.patch("/api/nodes/{name}/metadata")
    def patch_metadata(name: str, body: dict[str, Any]) -> dict[str, Any]:
        current = service()
        parsed = _parse_patch_body(body)
        try:
            current.patch_metadata(
                name,
                confidence=parsed.get("confidence"),
                proof_progress=parsed.get("proofProgress"),
                def_progress=parsed.get("defProgress"))
        except UnknownDeclarationError:
            raise
        except DocumentFormatError:
            raise
        except OSError as exc:
            return JSONResponse(
                {"detail": f"metadata persistence failed: {exc}"},
                status_code=500)
        return _metadata_body(current, name)

    @app.get("/api/nodes/{name}/metadata")
    def get_metadata(name: str) -> dict[str, Any]:
        current = service()
        if name not in current.graph:
            raise UnknownDeclarationError(name)
        return _metadata_body(current, name)

    @app.get("/api/report")
    def report(targets: str = "", format: str = "table") -> Response:
        current = service()
        names = [t for t in targets.split(",") if t]
        if not names:
            raise DocumentFormatError(
                "targets parameter is required (comma-separated names)",
                field="targets")
        if format not in ("table", "json", "markdown"):
            raise DocumentFormatError(
                f"invalid format {format!r}; expected table, json, or "
                "markdown", field="format")
        project_report = build_report(current.graph, names,
                                      current.default_options)
        payload = render_report(project_report, format)
        media = {"table": "text/plain; charset=utf-8",
                 "json": "application/json",
                 "markdown": "text/markdown; charset=utf-8"}[format]
        return Response(content=payload, media_type=media)

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="viewer")

    return app
