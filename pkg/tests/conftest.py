"""Shared fixtures and test-local oracles.

The oracles here recompute closures by whole-edge-list sweeps with no
frontier queue and re-derive the traversal rule from declaration kinds
directly, so they share neither code nor shape with the library routines
they check.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable, Sequence

import pytest

from depcompass import (
    CompassOptions,
    Declaration,
    DeclKind,
    DepEdge,
    DependencyGraph,
    DepSite,
    NodeMetadata,
    ProjectInfo,
)

DEF_LIKE_KINDS = (DeclKind.DEFINITION, DeclKind.INDUCTIVE,
                  DeclKind.STRUCTURE, DeclKind.ABBREVIATION)

# Populated by the acceptance tests; echoed after the run so the one-line
# verdicts land in piped output even under output capture.
ACCEPTANCE_VERDICTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)


def build_graph(decls: Iterable[tuple], edges: Iterable[tuple] = (),
                project: ProjectInfo = ProjectInfo()) -> DependencyGraph:
    """Assemble a graph from (name, kind[, has_sorry]) and (src, dst, site)."""
    declarations = []
    for item in decls:
        name, kind = item[0], item[1]
        has_sorry = item[2] if len(item) > 2 else False
        declarations.append(Declaration(
            name=name, kind=kind,
            metadata=NodeMetadata(has_sorry=has_sorry)))
    dep_edges = [DepEdge(s, t, site) for s, t, site in edges]
    return DependencyGraph(declarations, dep_edges, project=project)


def six_node_graph() -> DependencyGraph:
    """Theorem T proves via lemma L which uses def D; T's statement uses
    def E whose body uses def F; axiom X sits apart."""
    return build_graph(
        [("T", DeclKind.THEOREM), ("L", DeclKind.THEOREM),
         ("D", DeclKind.DEFINITION), ("E", DeclKind.DEFINITION),
         ("F", DeclKind.DEFINITION), ("X", DeclKind.AXIOM)],
        [("T", "L", DepSite.VALUE), ("L", "D", DepSite.VALUE),
         ("T", "E", DepSite.TYPE), ("E", "F", DepSite.VALUE)])


@pytest.fixture
def six_node() -> DependencyGraph:
    return six_node_graph()


def sweep_closure(edges: Sequence[DepEdge], start: Iterable[str],
                  allow: Callable[[DepEdge], bool]) -> frozenset[str]:
    """Closure by repeated full sweeps: no queue, no visited bookkeeping."""
    members = set(start)
    while True:
        additions = {e.target for e in edges
                     if e.source in members and allow(e)}
        if additions <= members:
            return frozenset(members)
        members |= additions


def cone_oracle(graph: DependencyGraph, target: str) -> frozenset[str]:
    return sweep_closure(graph.edges, {target}, lambda e: True)


def kept_oracle(graph: DependencyGraph, targets: Iterable[str],
                options: CompassOptions = CompassOptions()) -> frozenset[str]:
    """Kept-set reference: skip edges rooted in a theorem's proof body.

    The rule is restated from the declaration kinds themselves; only the
    plain theorem kind counts as a theorem, everything else reads as a
    definition for traversal purposes and axioms never block an edge.
    """
    def allow(edge: DepEdge) -> bool:
        source_kind = graph.nodes[edge.source].kind
        return not (source_kind is DeclKind.THEOREM
                    and edge.site is DepSite.VALUE)

    kept = set(sweep_closure(graph.edges, targets, allow))
    if options.include_all_axioms:
        axioms = {n for n, d in graph.nodes.items()
                  if d.kind is DeclKind.AXIOM}
        if options.restrict_axioms_to_cone:
            cone_union: set[str] = set()
            for t in targets:
                cone_union |= cone_oracle(graph, t)
            axioms &= cone_union
        kept |= axioms
    return frozenset(kept)


def random_graph(rng: random.Random, max_nodes: int = 60,
                 max_mean_degree: float = 4.0) -> DependencyGraph:
    """Arbitrary-kind-mix graph: cycles allowed, sites random, no self
    edges, no duplicate (source, target) pairs, axioms type-site only."""
    count = rng.randint(1, max_nodes)
    theorem_fraction = rng.random()
    kinds = []
    for _ in range(count):
        roll = rng.random()
        if roll < 0.06:
            kinds.append(DeclKind.AXIOM)
        elif roll < 0.06 + theorem_fraction * 0.94:
            kinds.append(DeclKind.THEOREM)
        else:
            kinds.append(rng.choice(DEF_LIKE_KINDS))
    names = [f"G.n{i:03d}" for i in range(count)]
    decls = [(names[i], kinds[i]) for i in range(count)]

    edges = []
    seen = set()
    edge_budget = int(rng.uniform(0.0, max_mean_degree) * count)
    for _ in range(edge_budget):
        s = rng.randrange(count)
        t = rng.randrange(count)
        if s == t or (s, t) in seen:
            continue
        seen.add((s, t))
        if kinds[s] is DeclKind.AXIOM:
            site = DepSite.TYPE
        else:
            site = rng.choice((DepSite.TYPE, DepSite.VALUE))
        edges.append((names[s], names[t], site))
    return build_graph(decls, edges)


def pick_targets(rng: random.Random, graph: DependencyGraph,
                 max_count: int = 3) -> list[str]:
    names = sorted(graph.nodes)
    k = rng.randint(1, min(max_count, len(names)))
    return rng.sample(names, k)


def star_graph(cone_size: int, kept_size: int) -> tuple[DependencyGraph, str]:
    """Star around one theorem sized to hit exact (cone, kept) counts.

    ``kept_size - 1`` definitions hang off the hub by type-site edges and
    stay; ``cone_size - kept_size`` theorems hang off it by value-site
    edges and are cut at the first hop. No axioms, so with the default
    options kept remains inside the cone. Requires 1 <= kept <= cone.
    """
    if not 1 <= kept_size <= cone_size:
        raise ValueError("need 1 <= kept_size <= cone_size")
    hub = "Hub.main"
    decls = [(hub, DeclKind.THEOREM)]
    edges = []
    for i in range(kept_size - 1):
        name = f"Hub.stay{i:04d}"
        decls.append((name, DeclKind.DEFINITION))
        edges.append((hub, name, DepSite.TYPE))
    for i in range(cone_size - kept_size):
        name = f"Hub.cut{i:04d}"
        decls.append((name, DeclKind.THEOREM))
        edges.append((hub, name, DepSite.VALUE))
    return build_graph(decls, edges), hub
