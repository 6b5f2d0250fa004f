"""Twelve independent filter axes over nodes and edges, AND-composed.

A ``FilterSpec`` holds one optional predicate per axis; absent axes match
everything. Nodes are filtered by the kind, metadata, name, and scope axes;
edges are filtered by the edge-kind and site axes and additionally require
both endpoints to be retained, so edge axes never remove nodes.

A ``FilterSpec`` has two wire encodings documented here and consumed by
the HTTP service: a flat query-parameter form (one parameter per axis,
set values comma-separated) and a JSON document form for saved filters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields
from enum import Enum
from typing import Any, Mapping, Union

from .compass import CompassOptions, run_compass, review_cone
from .errors import DocumentFormatError, PatternError
from .model import (
    AggKind,
    Confidence,
    Declaration,
    DeclKind,
    DepEdge,
    DependencyGraph,
    DepSite,
    EdgeKind,
    Progress,
    aggregate_kind,
    classify_edge,
)


class FilterScope(str, Enum):
    """Node population the other axes are intersected with."""

    ALL = "all"
    REVIEW_CONE_OF = "reviewConeOf"
    COMPASS_KEPT_OF = "compassKeptOf"


@dataclass(frozen=True)
class FilterSpec:
    """AND-composition of up to twelve axis predicates.

    Axis 1 declaration kind, 2 aggregated kind, 3/4 confidence bounds
    (ordinal), 5 proof progress, 6 definition progress, 7 sorry flag,
    8 edge kind, 9 dependency site, 10 namespace prefix, 11 name glob
    (``*`` and ``?`` only), 12 scope.
    """

    decl_kind: frozenset[DeclKind] | None = None
    agg_kind: frozenset[AggKind] | None = None
    confidence_at_least: Confidence | None = None
    confidence_at_most: Confidence | None = None
    proof_progress: frozenset[Progress] | None = None
    def_progress: frozenset[Progress] | None = None
    has_sorry: bool | None = None
    edge_kind: frozenset[EdgeKind] | None = None
    dep_site: frozenset[DepSite] | None = None
    namespace_prefix: str | None = None
    name_pattern: str | None = None
    scope: FilterScope = FilterScope.ALL
    scope_targets: frozenset[str] = frozenset()

    def is_empty(self) -> bool:
        return self == FilterSpec()


@dataclass(frozen=True)
class GraphView:
    """Filtered projection of a graph, carrying its provenance.

    ``graph`` is the source the view was computed from; re-applying filters
    to a view evaluates them against that source and intersects with the
    view's retained sets, which makes repeated application idempotent.
    """

    graph: DependencyGraph
    node_names: frozenset[str]
    edges: tuple[DepEdge, ...]
    provenance: FilterSpec

    def declarations(self) -> list[Declaration]:
        return [self.graph.nodes[n] for n in sorted(self.node_names)]

    def as_subgraph(self) -> DependencyGraph:
        """Materialize the view as a standalone graph."""
        return DependencyGraph(self.declarations(), self.edges,
                               self.graph.project)


def compile_name_pattern(pattern: str) -> "re.Pattern[str]":
    """Compile a glob supporting only ``*`` and ``?`` to a full-match regex."""
    if "[" in pattern or "]" in pattern:
        raise PatternError(
            f"unsupported glob construct in {pattern!r}: only '*' and '?' "
            "are available")
    parts = []
    for ch in pattern:
        if ch == "*":
            parts.append(".*")
        elif ch == "?":
            parts.append(".")
        else:
            parts.append(re.escape(ch))
    return re.compile("".join(parts) + r"\Z")


def _in_namespace(name: str, prefix: str) -> bool:
    if prefix == "":
        return True
    return name == prefix or name.startswith(prefix + ".")


def _scope_node_set(graph: DependencyGraph,
                    spec: FilterSpec) -> frozenset[str] | None:
    if spec.scope is FilterScope.ALL:
        return None
    targets = sorted(spec.scope_targets)
    if not targets:
        raise ValueError(f"scope {spec.scope.value} requires targets")
    if spec.scope is FilterScope.REVIEW_CONE_OF:
        cones = [review_cone(graph, t) for t in targets]
        return frozenset().union(*cones)
    return run_compass(graph, targets, CompassOptions()).kept_nodes


def apply_filters(source: Union[DependencyGraph, GraphView],
                  spec: FilterSpec) -> GraphView:
    """Evaluate a filter spec over a graph (or an existing view) into a view.

    Node axes and the scope axis select nodes; edge axes select edges among
    those whose endpoints were retained. An empty spec yields the full
    graph. Scope targets are resolved against the source graph, so views
    can be re-filtered without losing scope context.
    """
    if isinstance(source, GraphView):
        graph = source.graph
        node_restrict: frozenset[str] | None = source.node_names
        edge_restrict: set[DepEdge] | None = set(source.edges)
    else:
        graph = source
        node_restrict = None
        edge_restrict = None

    pattern = (compile_name_pattern(spec.name_pattern)
               if spec.name_pattern is not None else None)
    scope_set = _scope_node_set(graph, spec)

    kept_nodes: set[str] = set()
    for name, decl in graph.nodes.items():
        if node_restrict is not None and name not in node_restrict:
            continue
        if scope_set is not None and name not in scope_set:
            continue
        meta = decl.metadata
        if spec.decl_kind is not None and decl.kind not in spec.decl_kind:
            continue
        if (spec.agg_kind is not None
                and aggregate_kind(decl.kind) not in spec.agg_kind):
            continue
        if (spec.confidence_at_least is not None
                and meta.confidence.rank < spec.confidence_at_least.rank):
            continue
        if (spec.confidence_at_most is not None
                and meta.confidence.rank > spec.confidence_at_most.rank):
            continue
        if (spec.proof_progress is not None
                and meta.proof_progress not in spec.proof_progress):
            continue
        if (spec.def_progress is not None
                and meta.def_progress not in spec.def_progress):
            continue
        if spec.has_sorry is not None and meta.has_sorry != spec.has_sorry:
            continue
        if (spec.namespace_prefix is not None
                and not _in_namespace(name, spec.namespace_prefix)):
            continue
        if pattern is not None and not pattern.match(name):
            continue
        kept_nodes.add(name)

    kept_edges: list[DepEdge] = []
    for edge in graph.edges:
        if edge.source not in kept_nodes or edge.target not in kept_nodes:
            continue
        if edge_restrict is not None and edge not in edge_restrict:
            continue
        if spec.dep_site is not None and edge.site not in spec.dep_site:
            continue
        if (spec.edge_kind is not None
                and classify_edge(graph, edge) not in spec.edge_kind):
            continue
        kept_edges.append(edge)

    return GraphView(graph=graph, node_names=frozenset(kept_nodes),
                     edges=tuple(kept_edges), provenance=spec)


# -- Wire encodings ---------------------------------------------------------

_SET_AXES: dict[str, tuple[str, type]] = {
    "declKind": ("decl_kind", DeclKind),
    "aggKind": ("agg_kind", AggKind),
    "proofProgress": ("proof_progress", Progress),
    "defProgress": ("def_progress", Progress),
    "edgeKind": ("edge_kind", EdgeKind),
    "depSite": ("dep_site", DepSite),
}

_SCALAR_ENUM_AXES: dict[str, tuple[str, type]] = {
    "confidenceAtLeast": ("confidence_at_least", Confidence),
    "confidenceAtMost": ("confidence_at_most", Confidence),
}

_STRING_AXES = {
    "namespacePrefix": "namespace_prefix",
    "namePattern": "name_pattern",
}

_ALL_PARAMS = (set(_SET_AXES) | set(_SCALAR_ENUM_AXES) | set(_STRING_AXES)
               | {"hasSorry", "scope", "targets"})


def _parse_member(value: str, enum_cls: type, param: str):
    try:
        return enum_cls(value)
    except ValueError:
        valid = ", ".join(m.value for m in enum_cls)
        raise DocumentFormatError(
            f"invalid value {value!r}; expected one of: {valid}",
            field=param) from None


def decode_query(params: Mapping[str, str]) -> FilterSpec:
    """Decode the flat query-parameter form into a FilterSpec.

    Unknown parameters and malformed values raise
    :class:`DocumentFormatError` naming the parameter.
    """
    for key in params:
        if key not in _ALL_PARAMS:
            raise DocumentFormatError("unknown filter parameter", field=key)

    kwargs: dict[str, Any] = {}
    for param, (attr, enum_cls) in _SET_AXES.items():
        if param in params:
            members = params[param].split(",")
            if any(not m for m in members):
                raise DocumentFormatError("empty set member", field=param)
            kwargs[attr] = frozenset(
                _parse_member(m, enum_cls, param) for m in members)
    for param, (attr, enum_cls) in _SCALAR_ENUM_AXES.items():
        if param in params:
            kwargs[attr] = _parse_member(params[param], enum_cls, param)
    for param, attr in _STRING_AXES.items():
        if param in params:
            kwargs[attr] = params[param]
    if "hasSorry" in params:
        raw = params["hasSorry"]
        if raw not in ("true", "false"):
            raise DocumentFormatError(
                f"invalid boolean {raw!r}; expected true or false",
                field="hasSorry")
        kwargs["has_sorry"] = raw == "true"
    if "scope" in params:
        kwargs["scope"] = _parse_member(params["scope"], FilterScope, "scope")
    if "targets" in params:
        names = params["targets"].split(",")
        if any(not n for n in names):
            raise DocumentFormatError("empty target name", field="targets")
        kwargs["scope_targets"] = frozenset(names)

    spec = FilterSpec(**kwargs)
    if spec.scope is not FilterScope.ALL and not spec.scope_targets:
        raise DocumentFormatError(
            f"scope {spec.scope.value} requires a targets parameter",
            field="targets")
    if spec.scope is FilterScope.ALL and spec.scope_targets:
        raise DocumentFormatError(
            "targets given without a cone or kept scope", field="targets")
    if spec.name_pattern is not None:
        compile_name_pattern(spec.name_pattern)  # surface pattern errors early
    return spec


def encode_query(spec: FilterSpec) -> dict[str, str]:
    """Encode a FilterSpec into query parameters; inverse of decode_query."""
    params: dict[str, str] = {}
    for param, (attr, _unused) in _SET_AXES.items():
        value = getattr(spec, attr)
        if value is not None:
            params[param] = ",".join(sorted(m.value for m in value))
    for param, (attr, _unused) in _SCALAR_ENUM_AXES.items():
        value = getattr(spec, attr)
        if value is not None:
            params[param] = value.value
    for param, attr in _STRING_AXES.items():
        value = getattr(spec, attr)
        if value is not None:
            params[param] = value
    if spec.has_sorry is not None:
        params["hasSorry"] = "true" if spec.has_sorry else "false"
    if spec.scope is not FilterScope.ALL:
        params["scope"] = spec.scope.value
        params["targets"] = ",".join(sorted(spec.scope_targets))
    return params


def spec_to_document(spec: FilterSpec) -> dict[str, Any]:
    """JSON document form for saved filters; sets become sorted lists."""
    doc: dict[str, Any] = {}
    for param, (attr, _unused) in _SET_AXES.items():
        value = getattr(spec, attr)
        if value is not None:
            doc[param] = sorted(m.value for m in value)
    for param, (attr, _unused) in _SCALAR_ENUM_AXES.items():
        value = getattr(spec, attr)
        if value is not None:
            doc[param] = value.value
    for param, attr in _STRING_AXES.items():
        value = getattr(spec, attr)
        if value is not None:
            doc[param] = value
    if spec.has_sorry is not None:
        doc["hasSorry"] = spec.has_sorry
    if spec.scope is not FilterScope.ALL:
        doc["scope"] = spec.scope.value
        doc["targets"] = sorted(spec.scope_targets)
    return doc


def spec_from_document(doc: Mapping[str, Any]) -> FilterSpec:
    """Parse the JSON document form; inverse of spec_to_document."""
    params: dict[str, str] = {}
    for key, value in doc.items():
        if key not in _ALL_PARAMS:
            raise DocumentFormatError("unknown filter field", field=key)
        if key in _SET_AXES or key == "targets":
            if (not isinstance(value, list)
                    or not all(isinstance(v, str) for v in value)):
                raise DocumentFormatError("expected a list of strings",
                                          field=key)
            params[key] = ",".join(value)
        elif key == "hasSorry":
            if not isinstance(value, bool):
                raise DocumentFormatError("expected a boolean", field=key)
            params[key] = "true" if value else "false"
        else:
            if not isinstance(value, str):
                raise DocumentFormatError("expected a string", field=key)
            params[key] = value
    return decode_query(params)
