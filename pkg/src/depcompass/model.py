"""Immutable dependency-graph model, edge classification, and reachability.

Nodes are declarations identified by fully qualified names (dot-separated,
byte-wise case-sensitive comparison). Edges are directed dependencies from a
dependent declaration to one it mentions, tagged with the site of the mention:
``type`` when the name occurs in the declaration's type (statement/signature),
``value`` when it occurs only in the body (proof term/implementation).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator, Mapping

from .errors import UnknownDeclarationError


class DeclKind(str, Enum):
    """The six declaration kinds recognized in an exported graph."""

    THEOREM = "theorem"
    DEFINITION = "definition"
    INDUCTIVE = "inductive"
    STRUCTURE = "structure"
    ABBREVIATION = "abbreviation"
    AXIOM = "axiom"


class AggKind(str, Enum):
    """Aggregated declaration category: statement-provers, value-carriers, axioms."""

    THEOREM = "theorem"
    DEFINITION = "definition"
    AXIOM = "axiom"


class DepSite(str, Enum):
    """Where a dependency occurs in the source declaration."""

    TYPE = "type"
    VALUE = "value"


class Confidence(str, Enum):
    """Ordinal semantic-review confidence recorded by human reviewers."""

    UNREVIEWED = "unreviewed"
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    VERIFIED = "verified"

    @property
    def rank(self) -> int:
        return _CONFIDENCE_RANK[self]


_CONFIDENCE_RANK = {
    Confidence.UNREVIEWED: 0,
    Confidence.LOW: 1,
    Confidence.MEDIUM: 2,
    Confidence.HIGH: 3,
    Confidence.VERIFIED: 4,
}


class Progress(str, Enum):
    """Three-state progress marker used for both proof and definition work."""

    NOT_STARTED = "notStarted"
    IN_PROGRESS = "inProgress"
    COMPLETE = "complete"


class EdgeKind(str, Enum):
    """Edge classification along source category x site x target category.

    Axiom endpoints classify as ``definition`` on both axes: an axiom is a
    statement-level object with no proof, so its special handling belongs to
    the review-set computation, not to classification.
    """

    THM_TYPE_TO_DEF = "thm_type_to_def"
    THM_TYPE_TO_THM = "thm_type_to_thm"
    THM_VALUE_TO_DEF = "thm_value_to_def"
    THM_VALUE_TO_THM = "thm_value_to_thm"
    DEF_TYPE_TO_DEF = "def_type_to_def"
    DEF_TYPE_TO_THM = "def_type_to_thm"
    DEF_VALUE_TO_DEF = "def_value_to_def"
    DEF_VALUE_TO_THM = "def_value_to_thm"

    @property
    def pruned(self) -> bool:
        """True for the two kinds that carry proof-only content."""
        return self in (EdgeKind.THM_VALUE_TO_DEF, EdgeKind.THM_VALUE_TO_THM)


PRUNED_EDGE_KINDS = frozenset(
    {EdgeKind.THM_VALUE_TO_DEF, EdgeKind.THM_VALUE_TO_THM})


def aggregate_kind(kind: DeclKind) -> AggKind:
    """Collapse the six declaration kinds into three categories.

    theorem stays theorem; definition, inductive, structure, and abbreviation
    all behave as definition; axiom stays axiom.
    """
    if kind is DeclKind.THEOREM:
        return AggKind.THEOREM
    if kind is DeclKind.AXIOM:
        return AggKind.AXIOM
    return AggKind.DEFINITION


@dataclass(frozen=True)
class NodeMetadata:
    """Per-declaration review state attached to a graph node."""

    confidence: Confidence = Confidence.UNREVIEWED
    proof_progress: Progress = Progress.NOT_STARTED
    def_progress: Progress = Progress.NOT_STARTED
    has_sorry: bool = False

    def merged(
        self,
        confidence: Confidence | None = None,
        proof_progress: Progress | None = None,
        def_progress: Progress | None = None,
        has_sorry: bool | None = None,
    ) -> "NodeMetadata":
        """Return a copy with the given fields replaced."""
        return NodeMetadata(
            confidence=confidence if confidence is not None else self.confidence,
            proof_progress=(proof_progress if proof_progress is not None
                            else self.proof_progress),
            def_progress=(def_progress if def_progress is not None
                          else self.def_progress),
            has_sorry=has_sorry if has_sorry is not None else self.has_sorry,
        )


@dataclass(frozen=True)
class Declaration:
    """A named project constant plus its review metadata."""

    name: str
    kind: DeclKind
    module: str = ""
    metadata: NodeMetadata = field(default_factory=NodeMetadata)


@dataclass(frozen=True)
class DepEdge:
    """Directed dependency: ``source`` mentions ``target`` at ``site``."""

    source: str
    target: str
    site: DepSite


@dataclass(frozen=True)
class ProjectInfo:
    """Document header identifying the exported project."""

    name: str = ""
    revision: str | None = None


class DependencyGraph:
    """Immutable declaration graph with forward/reverse adjacency indexes.

    The constructor accepts arbitrary declaration and edge lists, including
    structurally invalid ones, so that :func:`validate_graph` can report
    violations as data; well-formedness is enforced at ingestion, not here.
    Cycles are permitted throughout (mutual/recursive declarations).
    """

    __slots__ = ("_declarations", "_nodes", "_edges", "_forward", "_reverse",
                 "project")

    def __init__(self, declarations: Iterable[Declaration],
                 edges: Iterable[DepEdge],
                 project: ProjectInfo = ProjectInfo()):
        self.project = project
        self._declarations: tuple[Declaration, ...] = tuple(declarations)
        self._edges: tuple[DepEdge, ...] = tuple(edges)
        self._nodes: dict[str, Declaration] = {
            d.name: d for d in self._declarations}
        forward: dict[str, list[DepEdge]] = {}
        reverse: dict[str, list[DepEdge]] = {}
        for e in self._edges:
            forward.setdefault(e.source, []).append(e)
            reverse.setdefault(e.target, []).append(e)
        self._forward = {k: tuple(v) for k, v in forward.items()}
        self._reverse = {k: tuple(v) for k, v in reverse.items()}

    @property
    def nodes(self) -> Mapping[str, Declaration]:
        return self._nodes

    @property
    def edges(self) -> tuple[DepEdge, ...]:
        return self._edges

    @property
    def declarations(self) -> tuple[Declaration, ...]:
        """All declarations as given at construction (duplicates preserved)."""
        return self._declarations

    def out_edges(self, name: str) -> tuple[DepEdge, ...]:
        return self._forward.get(name, ())

    def in_edges(self, name: str) -> tuple[DepEdge, ...]:
        return self._reverse.get(name, ())

    def declaration(self, name: str) -> Declaration:
        try:
            return self._nodes[name]
        except KeyError:
            raise UnknownDeclarationError(name) from None

    def axiom_names(self) -> frozenset[str]:
        return frozenset(n for n, d in self._nodes.items()
                         if d.kind is DeclKind.AXIOM)

    def __contains__(self, name: str) -> bool:
        return name in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def __iter__(self) -> Iterator[str]:
        return iter(self._nodes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DependencyGraph):
            return NotImplemented
        return (self._nodes == other._nodes
                and set(self._edges) == set(other._edges))

    def __repr__(self) -> str:
        return (f"DependencyGraph(nodes={len(self._nodes)}, "
                f"edges={len(self._edges)})")

    def with_declarations(
            self, replacements: Mapping[str, Declaration]) -> "DependencyGraph":
        """Return a new graph with some declarations swapped by name."""
        decls = [replacements.get(d.name, d) for d in self._declarations]
        return DependencyGraph(decls, self._edges, self.project)


def classify_edge(graph: DependencyGraph, edge: DepEdge) -> EdgeKind:
    """Classify an edge by source category, site, and target category.

    Axiom endpoints fall on the definition axis. Raises
    :class:`UnknownDeclarationError` when an endpoint is absent.
    """
    source = graph.declaration(edge.source)
    target = graph.declaration(edge.target)
    src_is_thm = aggregate_kind(source.kind) is AggKind.THEOREM
    tgt_is_thm = aggregate_kind(target.kind) is AggKind.THEOREM
    if src_is_thm:
        if edge.site is DepSite.TYPE:
            return EdgeKind.THM_TYPE_TO_THM if tgt_is_thm else EdgeKind.THM_TYPE_TO_DEF
        return EdgeKind.THM_VALUE_TO_THM if tgt_is_thm else EdgeKind.THM_VALUE_TO_DEF
    if edge.site is DepSite.TYPE:
        return EdgeKind.DEF_TYPE_TO_THM if tgt_is_thm else EdgeKind.DEF_TYPE_TO_DEF
    return EdgeKind.DEF_VALUE_TO_THM if tgt_is_thm else EdgeKind.DEF_VALUE_TO_DEF


def reachable(graph: DependencyGraph, start: Iterable[str],
              traverse: Callable[[DepEdge], bool]) -> frozenset[str]:
    """Forward BFS closure of ``start`` over edges satisfying ``traverse``.

    Returns the smallest superset of ``start`` closed under traversable
    edges. Terminates on cyclic graphs; the result is a set and therefore
    independent of visit order. Unknown start names raise
    :class:`UnknownDeclarationError`.
    """
    start = list(start)
    missing = [n for n in start if n not in graph]
    if missing:
        raise UnknownDeclarationError(*sorted(missing))
    seen: set[str] = set(start)
    queue: deque[str] = deque(start)
    while queue:
        current = queue.popleft()
        for edge in graph.out_edges(current):
            if edge.target not in seen and traverse(edge):
                seen.add(edge.target)
                queue.append(edge.target)
    return frozenset(seen)


def always_traverse(edge: DepEdge) -> bool:
    """Predicate admitting every edge; used for pre-pruning reachability."""
    return True


def validate_graph(graph: DependencyGraph) -> list[str]:
    """Check structural invariants, returning one message per violation.

    Flags duplicate declaration names, dangling edge endpoints, duplicate
    ordered (source, target) pairs, self-edges, and value-site edges whose
    source is an axiom. An empty list means the graph is well formed.
    """
    violations: list[str] = []
    seen_names: set[str] = set()
    for decl in graph.declarations:
        if decl.name in seen_names:
            violations.append(f"duplicate declaration name: {decl.name}")
        seen_names.add(decl.name)

    seen_pairs: set[tuple[str, str]] = set()
    for edge in graph.edges:
        if edge.source not in graph.nodes:
            violations.append(
                f"dangling edge: unknown source {edge.source} "
                f"({edge.source} -> {edge.target})")
        if edge.target not in graph.nodes:
            violations.append(
                f"dangling edge: unknown target {edge.target} "
                f"({edge.source} -> {edge.target})")
        pair = (edge.source, edge.target)
        if pair in seen_pairs:
            violations.append(
                f"duplicate ordered pair: {edge.source} -> {edge.target}")
        seen_pairs.add(pair)
        if edge.source == edge.target:
            violations.append(f"self-edge: {edge.source}")
        source = graph.nodes.get(edge.source)
        if (source is not None and source.kind is DeclKind.AXIOM
                and edge.site is DepSite.VALUE):
            violations.append(
                f"axiom value dependency: {edge.source} -> {edge.target} "
                "(axioms have no value)")
    return violations


def collapse_duplicate_sites(edges: Iterable[DepEdge]) -> list[DepEdge]:
    """Collapse repeated (source, target) pairs into a single edge.

    When the same ordered pair occurs at both sites, the type site wins: a
    value dependency only exists when the mention occurs in the value alone.
    Order of first occurrence is preserved.
    """
    chosen: dict[tuple[str, str], DepEdge] = {}
    order: list[tuple[str, str]] = []
    for edge in edges:
        pair = (edge.source, edge.target)
        if pair not in chosen:
            chosen[pair] = edge
            order.append(pair)
        elif chosen[pair].site is DepSite.VALUE and edge.site is DepSite.TYPE:
            chosen[pair] = edge
    return [chosen[p] for p in order]
