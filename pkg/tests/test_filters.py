"""Filter axes, AND composition, views, and wire encodings."""

import random

import pytest

from depcompass import (
    AggKind,
    Confidence,
    DeclKind,
    DepSite,
    DocumentFormatError,
    EdgeKind,
    FilterScope,
    FilterSpec,
    MetadataSidecar,
    PatternError,
    Progress,
    UnknownDeclarationError,
    apply_filters,
    classify_edge,
    decode_query,
    encode_query,
    spec_from_document,
    spec_to_document,
)

from conftest import build_graph, random_graph, six_node_graph


def sorry_graph():
    return build_graph(
        [("A", DeclKind.THEOREM, True), ("B", DeclKind.THEOREM, False),
         ("C", DeclKind.DEFINITION, False)],
        [("A", "C", DepSite.TYPE), ("B", "C", DepSite.TYPE)])


class TestNodeAxes:
    def test_empty_spec_is_identity(self, six_node):
        view = apply_filters(six_node, FilterSpec())
        assert view.node_names == frozenset(six_node.nodes)
        assert set(view.edges) == set(six_node.edges)

    def test_has_sorry_selects_exactly_flagged(self):
        g = sorry_graph()
        view = apply_filters(g, FilterSpec(has_sorry=True))
        assert view.node_names == {"A"}

    def test_decl_kind(self, six_node):
        view = apply_filters(
            six_node, FilterSpec(decl_kind=frozenset({DeclKind.AXIOM})))
        assert view.node_names == {"X"}

    def test_agg_kind(self, six_node):
        view = apply_filters(
            six_node, FilterSpec(agg_kind=frozenset({AggKind.THEOREM})))
        assert view.node_names == {"T", "L"}

    def test_confidence_bounds(self, six_node):
        sidecar = MetadataSidecar()
        sidecar.update("T", confidence=Confidence.VERIFIED)
        sidecar.update("E", confidence=Confidence.MEDIUM)
        g = sidecar.apply_to(six_node).graph
        at_least = apply_filters(
            g, FilterSpec(confidence_at_least=Confidence.MEDIUM))
        assert at_least.node_names == {"T", "E"}
        at_most = apply_filters(
            g, FilterSpec(confidence_at_most=Confidence.MEDIUM))
        assert at_most.node_names == frozenset(g.nodes) - {"T"}
        band = apply_filters(
            g, FilterSpec(confidence_at_least=Confidence.LOW,
                          confidence_at_most=Confidence.HIGH))
        assert band.node_names == {"E"}

    def test_progress_axes(self, six_node):
        sidecar = MetadataSidecar()
        sidecar.update("T", proof_progress=Progress.COMPLETE)
        sidecar.update("E", def_progress=Progress.IN_PROGRESS)
        g = sidecar.apply_to(six_node).graph
        proofs = apply_filters(
            g, FilterSpec(proof_progress=frozenset({Progress.COMPLETE})))
        assert proofs.node_names == {"T"}
        defs = apply_filters(
            g, FilterSpec(def_progress=frozenset({Progress.IN_PROGRESS})))
        assert defs.node_names == {"E"}

    def test_namespace_prefix(self):
        g = build_graph(
            [("Alg.Group.mul", DeclKind.DEFINITION),
             ("Alg.Group", DeclKind.STRUCTURE),
             ("Alg.GroupHom", DeclKind.DEFINITION),
             ("Order.le", DeclKind.DEFINITION)])
        view = apply_filters(g, FilterSpec(namespace_prefix="Alg.Group"))
        # prefix matches whole segments: Alg.GroupHom is outside
        assert view.node_names == {"Alg.Group", "Alg.Group.mul"}

    def test_name_pattern_glob(self):
        g = build_graph(
            [("Alg.mul_one", DeclKind.THEOREM),
             ("Alg.one_mul", DeclKind.THEOREM),
             ("Alg.mul_assoc", DeclKind.THEOREM)])
        view = apply_filters(g, FilterSpec(name_pattern="*.mul_*"))
        assert view.node_names == {"Alg.mul_one", "Alg.mul_assoc"}
        single = apply_filters(g, FilterSpec(name_pattern="Alg.???_mul"))
        assert single.node_names == {"Alg.one_mul"}

    def test_bad_glob_rejected(self, six_node):
        with pytest.raises(PatternError):
            apply_filters(six_node, FilterSpec(name_pattern="[abc]"))


class TestEdgeAxes:
    def test_edge_kind_matches_classification_scan(self, six_node):
        spec = FilterSpec(edge_kind=frozenset({EdgeKind.THM_VALUE_TO_THM}))
        view = apply_filters(six_node, spec)
        expected = [e for e in six_node.edges
                    if classify_edge(six_node, e) is
                    EdgeKind.THM_VALUE_TO_THM]
        assert list(view.edges) == expected
        assert view.node_names == frozenset(six_node.nodes)

    def test_dep_site(self, six_node):
        view = apply_filters(
            six_node, FilterSpec(dep_site=frozenset({DepSite.TYPE})))
        assert all(e.site is DepSite.TYPE for e in view.edges)
        assert len(view.edges) == 1

    def test_edge_axes_never_remove_nodes(self, six_node):
        view = apply_filters(
            six_node, FilterSpec(edge_kind=frozenset(), dep_site=frozenset()))
        assert view.node_names == frozenset(six_node.nodes)
        assert view.edges == ()

    def test_edges_require_both_endpoints(self, six_node):
        view = apply_filters(
            six_node, FilterSpec(decl_kind=frozenset({DeclKind.THEOREM})))
        assert view.node_names == {"T", "L"}
        assert [(e.source, e.target) for e in view.edges] == [("T", "L")]


class TestScopeAxis:
    def test_compass_kept_of(self, six_node):
        spec = FilterSpec(scope=FilterScope.COMPASS_KEPT_OF,
                          scope_targets=frozenset({"T"}))
        view = apply_filters(six_node, spec)
        assert view.node_names == {"T", "E", "F", "X"}

    def test_review_cone_of(self, six_node):
        spec = FilterSpec(scope=FilterScope.REVIEW_CONE_OF,
                          scope_targets=frozenset({"T"}))
        view = apply_filters(six_node, spec)
        assert view.node_names == {"T", "L", "D", "E", "F"}

    def test_scope_composes_with_node_axes(self, six_node):
        spec = FilterSpec(decl_kind=frozenset({DeclKind.DEFINITION}),
                          scope=FilterScope.COMPASS_KEPT_OF,
                          scope_targets=frozenset({"T"}))
        view = apply_filters(six_node, spec)
        assert view.node_names == {"E", "F"}

    def test_unknown_scope_target(self, six_node):
        spec = FilterSpec(scope=FilterScope.REVIEW_CONE_OF,
                          scope_targets=frozenset({"Ghost"}))
        with pytest.raises(UnknownDeclarationError):
            apply_filters(six_node, spec)

    def test_scope_without_targets(self, six_node):
        spec = FilterSpec(scope=FilterScope.COMPASS_KEPT_OF)
        with pytest.raises(ValueError):
            apply_filters(six_node, spec)


class TestComposition:
    def test_adding_predicates_never_enlarges(self):
        rng = random.Random(5)
        for _ in range(20):
            g = random_graph(rng, max_nodes=40)
            base = FilterSpec(has_sorry=False)
            tighter = FilterSpec(has_sorry=False,
                                 agg_kind=frozenset({AggKind.DEFINITION}),
                                 dep_site=frozenset({DepSite.VALUE}))
            wide = apply_filters(g, base)
            narrow = apply_filters(g, tighter)
            assert narrow.node_names <= wide.node_names
            assert set(narrow.edges) <= set(wide.edges)

    def test_reapplication_is_idempotent(self):
        rng = random.Random(8)
        specs = [
            FilterSpec(),
            FilterSpec(agg_kind=frozenset({AggKind.THEOREM,
                                           AggKind.DEFINITION})),
            FilterSpec(edge_kind=frozenset({EdgeKind.THM_VALUE_TO_THM,
                                            EdgeKind.DEF_VALUE_TO_DEF})),
            FilterSpec(name_pattern="G.n0*"),
        ]
        for spec in specs:
            for _ in range(5):
                g = random_graph(rng, max_nodes=40)
                once = apply_filters(g, spec)
                twice = apply_filters(once, spec)
                assert twice.node_names == once.node_names
                assert twice.edges == once.edges

    def test_scope_idempotent_on_own_view(self, six_node):
        spec = FilterSpec(scope=FilterScope.COMPASS_KEPT_OF,
                          scope_targets=frozenset({"T"}))
        once = apply_filters(six_node, spec)
        twice = apply_filters(once, spec)
        assert twice.node_names == once.node_names
        assert twice.edges == once.edges


class TestGraphView:
    def test_edges_reference_only_view_nodes(self):
        rng = random.Random(12)
        for _ in range(10):
            g = random_graph(rng, max_nodes=40)
            spec = FilterSpec(agg_kind=frozenset({AggKind.DEFINITION}))
            view = apply_filters(g, spec)
            for e in view.edges:
                assert e.source in view.node_names
                assert e.target in view.node_names

    def test_as_subgraph(self, six_node):
        spec = FilterSpec(decl_kind=frozenset({DeclKind.THEOREM}))
        sub = apply_filters(six_node, spec).as_subgraph()
        assert set(sub.nodes) == {"T", "L"}
        assert len(sub.edges) == 1

    def test_declarations_sorted(self, six_node):
        view = apply_filters(six_node, FilterSpec())
        names = [d.name for d in view.declarations()]
        assert names == sorted(names)


class TestQueryEncoding:
    def test_round_trip(self):
        spec = FilterSpec(
            decl_kind=frozenset({DeclKind.THEOREM, DeclKind.AXIOM}),
            confidence_at_least=Confidence.MEDIUM,
            has_sorry=True,
            edge_kind=frozenset({EdgeKind.THM_VALUE_TO_THM}),
            namespace_prefix="Alg",
            name_pattern="*_mul",
            scope=FilterScope.COMPASS_KEPT_OF,
            scope_targets=frozenset({"A.b", "C.d"}))
        assert decode_query(encode_query(spec)) == spec

    def test_example_encoding(self):
        spec = decode_query({
            "declKind": "theorem,axiom",
            "hasSorry": "true",
            "scope": "compassKeptOf",
            "targets": "A.b,C.d",
        })
        assert spec.decl_kind == {DeclKind.THEOREM, DeclKind.AXIOM}
        assert spec.has_sorry is True
        assert spec.scope is FilterScope.COMPASS_KEPT_OF
        assert spec.scope_targets == {"A.b", "C.d"}

    def test_empty_params_empty_spec(self):
        spec = decode_query({})
        assert spec == FilterSpec()
        assert spec.is_empty()
        assert encode_query(spec) == {}

    def test_unknown_param_rejected(self):
        with pytest.raises(DocumentFormatError, match="bogus"):
            decode_query({"bogus": "1"})

    def test_bad_member_rejected(self):
        with pytest.raises(DocumentFormatError, match="declKind"):
            decode_query({"declKind": "lemma"})

    def test_bad_bool_rejected(self):
        with pytest.raises(DocumentFormatError, match="hasSorry"):
            decode_query({"hasSorry": "yes"})

    def test_targets_without_scope_rejected(self):
        with pytest.raises(DocumentFormatError, match="targets"):
            decode_query({"targets": "A"})

    def test_scope_without_targets_rejected(self):
        with pytest.raises(DocumentFormatError, match="targets"):
            decode_query({"scope": "reviewConeOf"})


class TestDocumentEncoding:
    def test_round_trip(self):
        spec = FilterSpec(
            agg_kind=frozenset({AggKind.DEFINITION}),
            proof_progress=frozenset({Progress.COMPLETE,
                                      Progress.IN_PROGRESS}),
            confidence_at_most=Confidence.HIGH,
            scope=FilterScope.REVIEW_CONE_OF,
            scope_targets=frozenset({"T"}))
        assert spec_from_document(spec_to_document(spec)) == spec

    def test_empty_document(self):
        assert spec_from_document({}) == FilterSpec()
        assert spec_to_document(FilterSpec()) == {}
