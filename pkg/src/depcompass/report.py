"""Per-target evaluation reports: cone sizes, kept sizes, reduction rates.

One row per target mirrors the headline evaluation table: review-cone size,
node count after pruning, and the reduction percentage rendered to one
decimal place with half-up rounding. Negative reductions (possible under
whole-project axiom inclusion) are surfaced with a footnote marker, never
clamped.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from statistics import mean
from typing import Any, Iterable, Mapping

from .compass import (
    CompassOptions,
    NonTheoremTargetWarning,
    _check_targets,
    run_compass,
)
from .errors import DocumentFormatError
from .model import DeclKind, DependencyGraph, EdgeKind, classify_edge

REPORT_SCHEMA_VERSION = 1

_NEGATIVE_FOOTNOTE = ("* kept set exceeds the review cone "
                      "(axiom inclusion beyond the cone)")


def format_percent(rate: float) -> str:
    """Render a rate as a percentage with one decimal, half-up: 0.938 -> 93.8%."""
    quantized = Decimal(repr(rate * 100)).quantize(
        Decimal("0.1"), rounding=ROUND_HALF_UP)
    return f"{quantized}%"


@dataclass(frozen=True)
class TargetReport:
    """Evaluation row for a single target."""

    target: str
    review_cone_size: int
    kept_size: int
    reduction_rate: float
    pruned_edge_count: int
    edge_kind_histogram: Mapping[EdgeKind, int]


@dataclass(frozen=True)
class ProjectReport:
    """All target rows plus whole-graph totals."""

    target_reports: tuple[TargetReport, ...]
    mean_reduction: float | None
    nodes_by_kind: Mapping[DeclKind, int]
    edges_by_kind: Mapping[EdgeKind, int]


def _graph_totals(graph: DependencyGraph):
    nodes_by_kind = {kind: 0 for kind in DeclKind}
    for decl in graph.nodes.values():
        nodes_by_kind[decl.kind] += 1
    edges_by_kind = {kind: 0 for kind in EdgeKind}
    for edge in graph.edges:
        edges_by_kind[classify_edge(graph, edge)] += 1
    return nodes_by_kind, edges_by_kind


def _cone_histogram(graph: DependencyGraph,
                    cone: frozenset[str]) -> dict[EdgeKind, int]:
    histogram = {kind: 0 for kind in EdgeKind}
    for edge in graph.edges:
        if edge.source in cone and edge.target in cone:
            histogram[classify_edge(graph, edge)] += 1
    return histogram


def build_report(graph: DependencyGraph, targets: Iterable[str],
                 options: CompassOptions = CompassOptions()) -> ProjectReport:
    """Run one singleton review-set computation per target and summarize.

    Rows are ordered by target name; the mean reduction is the unweighted
    arithmetic mean over targets.
    """
    target_list = _check_targets(graph, targets)

    rows: list[TargetReport] = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonTheoremTargetWarning)
        for target in target_list:
            result = run_compass(graph, [target], options)
            cone = result.review_cone[target]
            histogram = _cone_histogram(graph, cone)
            rows.append(TargetReport(
                target=target,
                review_cone_size=len(cone),
                kept_size=len(result.kept_nodes),
                reduction_rate=result.per_target_reduction[target],
                pruned_edge_count=result.pruned_edge_count,
                edge_kind_histogram=histogram))

    nodes_by_kind, edges_by_kind = _graph_totals(graph)
    return ProjectReport(
        target_reports=tuple(rows),
        mean_reduction=mean(r.reduction_rate for r in rows),
        nodes_by_kind=nodes_by_kind,
        edges_by_kind=edges_by_kind)


_TABLE_HEADER = ("Target", "ReviewCone", "AfterCompass", "Reduction")


def _row_cells(row: TargetReport) -> tuple[str, str, str, str]:
    marker = "*" if row.reduction_rate < 0 else ""
    return (row.target, str(row.review_cone_size), str(row.kept_size),
            format_percent(row.reduction_rate) + marker)


def _render_table(report: ProjectReport, include_totals: bool = True) -> str:
    rows = [_row_cells(r) for r in report.target_reports]
    widths = [len(h) for h in _TABLE_HEADER]
    for cells in rows:
        for i, cell in enumerate(cells):
            widths[i] = max(widths[i], len(cell))

    def line(cells: tuple[str, str, str, str]) -> str:
        name = cells[0].ljust(widths[0])
        rest = "  ".join(cells[i].rjust(widths[i]) for i in (1, 2, 3))
        return f"{name}  {rest}"

    out = [line(_TABLE_HEADER)]
    if not rows:
        return "\n".join(out) + "\n"
    out.extend(line(cells) for cells in rows)
    if report.mean_reduction is not None:
        out.append("")
        out.append(f"Mean reduction: {format_percent(report.mean_reduction)}")
    if include_totals:
        out.append("Nodes by kind: " + " ".join(
            f"{k.value}={report.nodes_by_kind[k]}" for k in DeclKind))
        out.append("Edges by kind: " + " ".join(
            f"{k.value}={report.edges_by_kind[k]}" for k in EdgeKind))
    if any(r.reduction_rate < 0 for r in report.target_reports):
        out.append(_NEGATIVE_FOOTNOTE)
    return "\n".join(out) + "\n"


def _render_markdown(report: ProjectReport) -> str:
    out = ["| " + " | ".join(_TABLE_HEADER) + " |",
           "| --- | ---: | ---: | ---: |"]
    for row in report.target_reports:
        out.append("| " + " | ".join(_row_cells(row)) + " |")
    if report.target_reports and report.mean_reduction is not None:
        out.append("")
        out.append(f"Mean reduction: **{format_percent(report.mean_reduction)}**")
    if any(r.reduction_rate < 0 for r in report.target_reports):
        out.append("")
        out.append(_NEGATIVE_FOOTNOTE)
    return "\n".join(out) + "\n"


def report_to_document(report: ProjectReport) -> dict[str, Any]:
    return {
        "schemaVersion": REPORT_SCHEMA_VERSION,
        "targets": [
            {
                "target": row.target,
                "reviewConeSize": row.review_cone_size,
                "keptSize": row.kept_size,
                "reductionRate": row.reduction_rate,
                "prunedEdgeCount": row.pruned_edge_count,
                "edgeKindHistogram": {
                    kind.value: row.edge_kind_histogram[kind]
                    for kind in EdgeKind
                },
            }
            for row in report.target_reports
        ],
        "meanReduction": report.mean_reduction,
        "totals": {
            "nodesByKind": {k.value: report.nodes_by_kind[k]
                            for k in DeclKind},
            "edgesByKind": {k.value: report.edges_by_kind[k]
                            for k in EdgeKind},
        },
    }


def render_report(report: ProjectReport, format: str = "table",
                  include_totals: bool = True) -> bytes:
    """Render to ``table``, ``json``, or ``markdown`` bytes, deterministically."""
    if format == "table":
        return _render_table(report, include_totals).encode("utf-8")
    if format == "markdown":
        return _render_markdown(report).encode("utf-8")
    if format == "json":
        doc = report_to_document(report)
        return (json.dumps(doc, indent=2, ensure_ascii=True) + "\n").encode(
            "utf-8")
    raise ValueError(f"unknown report format {format!r}")


def parse_report(data: bytes | str) -> ProjectReport:
    """Parse the JSON rendering back into a ProjectReport value."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentFormatError(
            f"report is not valid JSON: {exc.msg}",
            line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict) or doc.get("schemaVersion") != REPORT_SCHEMA_VERSION:
        raise DocumentFormatError("unsupported report document",
                                  field="schemaVersion")
    rows = []
    for raw in doc.get("targets", []):
        try:
            rows.append(TargetReport(
                target=raw["target"],
                review_cone_size=raw["reviewConeSize"],
                kept_size=raw["keptSize"],
                reduction_rate=raw["reductionRate"],
                pruned_edge_count=raw["prunedEdgeCount"],
                edge_kind_histogram={
                    EdgeKind(k): v
                    for k, v in raw["edgeKindHistogram"].items()
                }))
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentFormatError(
                f"malformed report row: {exc}", field="targets") from exc
    totals = doc.get("totals", {})
    return ProjectReport(
        target_reports=tuple(rows),
        mean_reduction=doc.get("meanReduction"),
        nodes_by_kind={DeclKind(k): v
                       for k, v in totals.get("nodesByKind", {}).items()},
        edges_by_kind={EdgeKind(k): v
                       for k, v in totals.get("edgesByKind", {}).items()})
