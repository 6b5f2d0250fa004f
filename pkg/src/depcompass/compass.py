"""Proof-dependency pruning and review-set extraction.

Given a dependency graph and a set of target declarations, computes the set
of project-specific nodes whose semantic correctness can still affect the
targets' statements: dependencies that arise only from theorem proofs are
pruned, everything else is kept, and axioms are unioned in per policy.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import UnknownDeclarationError
from .model import (
    AggKind,
    DeclKind,
    DepEdge,
    DependencyGraph,
    DepSite,
    aggregate_kind,
    always_traverse,
    reachable,
)


class NonTheoremTargetWarning(UserWarning):
    """A review target is not a theorem; accepted for exploratory use."""


@dataclass(frozen=True)
class CompassOptions:
    """Axiom-inclusion policy for the review-set computation.

    ``include_all_axioms`` unions every axiom in the graph into the result,
    even unreachable ones. ``restrict_axioms_to_cone`` narrows that union to
    axioms inside the targets' review cones; it only has an effect while
    ``include_all_axioms`` is true.
    """

    include_all_axioms: bool = True
    restrict_axioms_to_cone: bool = False


@dataclass(frozen=True)
class CompassResult:
    """Review-set computation output for one target set."""

    targets: frozenset[str]
    review_cone: Mapping[str, frozenset[str]]
    kept_nodes: frozenset[str]
    axiom_nodes: frozenset[str]
    pruned_edge_count: int
    per_target_reduction: Mapping[str, float]
    combined_reduction: float
    options: CompassOptions = field(default_factory=CompassOptions)


def should_traverse(edge: DepEdge, source_kind: DeclKind) -> bool:
    """Decide whether the review-set traversal may follow this edge.

    False exactly when the source is a theorem and the dependency sits in its
    value: such an edge carries proof content already checked by the kernel.
    Every type-site edge and every definition-source edge is traversable.
    """
    return not (aggregate_kind(source_kind) is AggKind.THEOREM
                and edge.site is DepSite.VALUE)


def _traverse_predicate(graph: DependencyGraph):
    def predicate(edge: DepEdge) -> bool:
        source = graph.nodes.get(edge.source)
        if source is None:
            return False
        return should_traverse(edge, source.kind)
    return predicate


def reduction_rate(cone_size: int, kept_size: int) -> float:
    """Node reduction achieved for one target: ``1 - kept / cone``.

    ``cone_size`` must be at least 1 (a review cone always contains the
    target). The result may be negative when axiom inclusion pulls in nodes
    outside the cone; callers surface that rather than clamping.
    """
    if cone_size < 1:
        raise ValueError("cone_size must be >= 1")
    return 1.0 - kept_size / cone_size


def review_cone(graph: DependencyGraph, target: str) -> frozenset[str]:
    """All nodes reachable from ``target`` before any pruning, target included."""
    return reachable(graph, {target}, always_traverse)


def _check_targets(graph: DependencyGraph, targets: Iterable[str]) -> list[str]:
    target_list = sorted(set(targets))
    if not target_list:
        raise ValueError("target set must be non-empty")
    missing = [t for t in target_list if t not in graph]
    if missing:
        raise UnknownDeclarationError(*missing)
    non_theorems = [t for t in target_list
                    if graph.nodes[t].kind is not DeclKind.THEOREM]
    if non_theorems:
        warnings.warn(
            "non-theorem target(s): " + ", ".join(non_theorems),
            NonTheoremTargetWarning, stacklevel=3)
    return target_list


def _axiom_union(graph: DependencyGraph, cone_union: frozenset[str],
                 options: CompassOptions) -> frozenset[str]:
    if not options.include_all_axioms:
        return frozenset()
    axioms = graph.axiom_names()
    if options.restrict_axioms_to_cone:
        return axioms & cone_union
    return axioms


def _pruned_edges_within(graph: DependencyGraph,
                         nodes: frozenset[str]) -> int:
    count = 0
    for edge in graph.edges:
        if edge.source in nodes and edge.target in nodes:
            source = graph.nodes.get(edge.source)
            if source is not None and not should_traverse(edge, source.kind):
                count += 1
    return count


def run_compass(graph: DependencyGraph, targets: Iterable[str],
                options: CompassOptions = CompassOptions()) -> CompassResult:
    """Compute the review set and reduction metrics for a target set.

    Kept nodes are the BFS closure of the targets over traversable edges,
    unioned with axioms per ``options``. Per-target reductions compare each
    singleton run against that target's review cone; the combined reduction
    compares the full kept set against the union of the cones. The pruned
    edge count tallies pruned-kind edges between cone-union nodes.
    """
    target_list = _check_targets(graph, targets)
    predicate = _traverse_predicate(graph)

    cones = {t: review_cone(graph, t) for t in target_list}
    cone_union = frozenset().union(*cones.values())

    closure = reachable(graph, target_list, predicate)
    axiom_nodes = _axiom_union(graph, cone_union, options)
    kept = closure | axiom_nodes

    per_target: dict[str, float] = {}
    for t in target_list:
        singleton_closure = reachable(graph, {t}, predicate)
        singleton_axioms = _axiom_union(graph, cones[t], options)
        singleton_kept = singleton_closure | singleton_axioms
        per_target[t] = reduction_rate(len(cones[t]), len(singleton_kept))

    combined = reduction_rate(len(cone_union), len(kept))
    return CompassResult(
        targets=frozenset(target_list),
        review_cone=cones,
        kept_nodes=kept,
        axiom_nodes=axiom_nodes,
        pruned_edge_count=_pruned_edges_within(graph, cone_union),
        per_target_reduction=per_target,
        combined_reduction=combined,
        options=options,
    )


def brute_force_compass(graph: DependencyGraph, targets: Iterable[str],
                        options: CompassOptions = CompassOptions()
                        ) -> frozenset[str]:
    """Reference computation of the kept node set by fixed-point expansion.

    Structurally independent of :func:`run_compass`: materializes the pruned
    edge list first, then repeatedly sweeps it, adding targets of edges whose
    source is already in the set, until nothing changes. Used as the oracle
    in equivalence testing; keep it free of BFS machinery.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonTheoremTargetWarning)
        target_list = _check_targets(graph, targets)

    surviving = [e for e in graph.edges
                 if e.source in graph.nodes
                 and should_traverse(e, graph.nodes[e.source].kind)]

    result: set[str] = set(target_list)
    changed = True
    while changed:
        changed = False
        for edge in surviving:
            if edge.source in result and edge.target not in result:
                result.add(edge.target)
                changed = True

    if options.include_all_axioms:
        axioms = graph.axiom_names()
        if options.restrict_axioms_to_cone:
            all_edges = list(graph.edges)
            cone: set[str] = set(target_list)
            changed = True
            while changed:
                changed = False
                for edge in all_edges:
                    if edge.source in cone and edge.target not in cone:
                        cone.add(edge.target)
                        changed = True
            axioms = axioms & cone
        result |= axioms
    return frozenset(result)
