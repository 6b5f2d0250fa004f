"""Report building, percent formatting, and renderers."""

import json
import statistics

import pytest

from depcompass import (
    CompassOptions,
    DeclKind,
    DocumentFormatError,
    EdgeKind,
    Profile,
    ProjectReport,
    SyntheticProfile,
    UnknownDeclarationError,
    build_report,
    format_percent,
    generate_synthetic,
    parse_report,
    render_report,
    report_to_document,
)

from conftest import (
    build_graph,
    cone_oracle,
    kept_oracle,
    six_node_graph,
    star_graph,
)


def empty_report() -> ProjectReport:
    return ProjectReport(
        target_reports=(),
        mean_reduction=None,
        nodes_by_kind={k: 0 for k in DeclKind},
        edges_by_kind={k: 0 for k in EdgeKind})


class TestFormatPercent:
    @pytest.mark.parametrize("rate,expected", [
        (0.938325991189427, "93.8%"),   # 14 of 227 kept
        (0.9968253968253968, "99.7%"),  # 1 of 315 kept
        (0.1111111111111111, "11.1%"),  # 8 of 9 kept
        (0.5, "50.0%"),
        (0.0, "0.0%"),
        (1.0, "100.0%"),
        (-2.0, "-200.0%"),
    ])
    def test_reference_values(self, rate, expected):
        assert format_percent(rate) == expected

    def test_half_up_at_boundary(self):
        assert format_percent(0.1235) == "12.4%"
        assert format_percent(0.1234) == "12.3%"
        assert format_percent(0.9995) == "100.0%"


class TestBuildReport:
    def test_single_isolated_theorem_row(self):
        g = build_graph([("T", DeclKind.THEOREM)])
        report = build_report(g, ["T"])
        (row,) = report.target_reports
        assert (row.review_cone_size, row.kept_size) == (1, 1)
        assert row.reduction_rate == 0.0
        assert report.mean_reduction == 0.0

    def test_six_node_fixture_row(self, six_node):
        report = build_report(six_node, ["T"])
        (row,) = report.target_reports
        assert row.review_cone_size == 5
        assert row.kept_size == 4
        assert row.pruned_edge_count == 2
        assert format_percent(row.reduction_rate) == "20.0%"

    def test_star_shapes_render_reference_percentages(self):
        for cone, kept, printed in ((1963, 5, "99.7%"), (227, 14, "93.8%"),
                                    (4, 2, "50.0%")):
            g, hub = star_graph(cone, kept)
            report = build_report(g, [hub])
            (row,) = report.target_reports
            assert (row.review_cone_size, row.kept_size) == (cone, kept)
            assert format_percent(row.reduction_rate) == printed

    def test_rows_sorted_by_target(self, six_node):
        report = build_report(six_node, ["T", "L"])
        assert [r.target for r in report.target_reports] == ["L", "T"]

    def test_mean_matches_oracle_recomputation(self):
        g = generate_synthetic(SyntheticProfile(
            profile=Profile.THEOREM_HEAVY, node_count=200, seed=77))
        theorems = sorted(n for n, d in g.nodes.items()
                          if d.kind is DeclKind.THEOREM)
        targets = theorems[:5]
        report = build_report(g, targets)
        rates = []
        for t in targets:
            cone = cone_oracle(g, t)
            kept = kept_oracle(g, [t])
            rates.append(1.0 - len(kept) / len(cone))
        assert report.mean_reduction == pytest.approx(
            statistics.mean(rates))

    def test_totals_cover_whole_graph(self, six_node):
        report = build_report(six_node, ["T"])
        assert sum(report.nodes_by_kind.values()) == len(six_node)
        assert sum(report.edges_by_kind.values()) == len(six_node.edges)
        assert report.nodes_by_kind[DeclKind.AXIOM] == 1

    def test_histogram_counts_cone_edges(self, six_node):
        report = build_report(six_node, ["T"])
        (row,) = report.target_reports
        hist = row.edge_kind_histogram
        assert hist[EdgeKind.THM_VALUE_TO_THM] == 1
        assert hist[EdgeKind.THM_VALUE_TO_DEF] == 1
        assert hist[EdgeKind.THM_TYPE_TO_DEF] == 1
        assert hist[EdgeKind.DEF_VALUE_TO_DEF] == 1
        assert sum(hist.values()) == 4

    def test_unknown_target_propagates(self, six_node):
        with pytest.raises(UnknownDeclarationError):
            build_report(six_node, ["Ghost"])

    def test_empty_targets_rejected(self, six_node):
        with pytest.raises(ValueError):
            build_report(six_node, [])

    def test_options_respected(self, six_node):
        report = build_report(
            six_node, ["T"], CompassOptions(include_all_axioms=False))
        (row,) = report.target_reports
        assert row.kept_size == 3


class TestRenderReport:
    def test_empty_report_header_only_table(self):
        text = render_report(empty_report(), "table").decode()
        lines = text.splitlines()
        assert len(lines) == 1
        assert "Target" in lines[0] and "Reduction" in lines[0]

    def test_render_twice_identical(self, six_node):
        report = build_report(six_node, ["T"])
        for fmt in ("table", "json", "markdown"):
            assert render_report(report, fmt) == render_report(report, fmt)

    def test_json_reparse_equality(self, six_node):
        report = build_report(six_node, ["T", "L"])
        assert parse_report(render_report(report, "json")) == report

    def test_table_contains_row_values(self, six_node):
        text = render_report(build_report(six_node, ["T"]), "table").decode()
        assert "T" in text
        assert "20.0%" in text
        assert "Mean reduction: 20.0%" in text

    def test_markdown_shape(self, six_node):
        text = render_report(build_report(six_node, ["T"]),
                             "markdown").decode()
        assert text.startswith("| Target |")
        assert "| T | 5 | 4 | 20.0% |" in text

    def test_negative_rate_footnote(self):
        g = build_graph([("T", DeclKind.THEOREM), ("X", DeclKind.AXIOM),
                         ("Y", DeclKind.AXIOM)])
        text = render_report(build_report(g, ["T"]), "table").decode()
        assert "-200.0%*" in text
        assert "*" in text.splitlines()[-1]

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError):
            render_report(empty_report(), "xml")


class TestReportDocument:
    def test_schema_keys(self, six_node):
        doc = report_to_document(build_report(six_node, ["T"]))
        assert set(doc) == {"schemaVersion", "targets", "meanReduction",
                            "totals"}
        row = doc["targets"][0]
        assert set(row) == {"target", "reviewConeSize", "keptSize",
                            "reductionRate", "prunedEdgeCount",
                            "edgeKindHistogram"}
        assert set(doc["totals"]) == {"nodesByKind", "edgesByKind"}

    def test_parse_rejects_malformed(self):
        with pytest.raises(DocumentFormatError):
            parse_report(b"not json")
        with pytest.raises(DocumentFormatError):
            parse_report(json.dumps({"schemaVersion": 99}))
        with pytest.raises(DocumentFormatError):
            parse_report(json.dumps({
                "schemaVersion": 1,
                "targets": [{"target": "T"}],
                "meanReduction": None,
                "totals": {"nodesByKind": {}, "edgesByKind": {}},
            }))
