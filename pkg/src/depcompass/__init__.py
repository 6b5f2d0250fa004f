"""Dependency-aware review scoping for proof-assistant projects.

Given a project's declaration dependency graph, compute the set of
declarations a reviewer actually has to read to trust a target theorem:
follow type-site dependencies everywhere, follow value-site dependencies
only out of definitions, and always keep axioms in view.
"""

from .compass import (
    CompassOptions,
    CompassResult,
    NonTheoremTargetWarning,
    brute_force_compass,
    reduction_rate,
    review_cone,
    run_compass,
    should_traverse,
)
from .errors import (
    DepCompassError,
    DocumentFormatError,
    InvalidGraphError,
    PatternError,
    UnknownDeclarationError,
)
from .filters import (
    FilterScope,
    FilterSpec,
    GraphView,
    apply_filters,
    decode_query,
    encode_query,
    spec_from_document,
    spec_to_document,
)
from .interchange import (
    SCHEMA_VERSION,
    MetadataLoadResult,
    MetadataSidecar,
    SidecarEntry,
    load_metadata,
    parse_graph,
    serialize_graph,
    utc_now_rfc3339,
)
from .model import (
    AggKind,
    Confidence,
    Declaration,
    DeclKind,
    DepEdge,
    DependencyGraph,
    DepSite,
    EdgeKind,
    NodeMetadata,
    Progress,
    ProjectInfo,
    aggregate_kind,
    classify_edge,
    collapse_duplicate_sites,
    validate_graph,
)
from .report import (
    ProjectReport,
    TargetReport,
    build_report,
    format_percent,
    parse_report,
    render_report,
    report_to_document,
)
from .synth import Profile, SyntheticProfile, generate_synthetic

__version__ = "0.1.0"

__all__ = [
    "AggKind",
    "CompassOptions",
    "CompassResult",
    "Confidence",
    "Declaration",
    "DeclKind",
    "DepCompassError",
    "DepEdge",
    "DependencyGraph",
    "DepSite",
    "DocumentFormatError",
    "EdgeKind",
    "FilterScope",
    "FilterSpec",
    "GraphView",
    "InvalidGraphError",
    "MetadataLoadResult",
    "MetadataSidecar",
    "NodeMetadata",
    "NonTheoremTargetWarning",
    "PatternError",
    "Profile",
    "Progress",
    "ProjectInfo",
    "ProjectReport",
    "SCHEMA_VERSION",
    "SidecarEntry",
    "SyntheticProfile",
    "TargetReport",
    "UnknownDeclarationError",
    "aggregate_kind",
    "apply_filters",
    "brute_force_compass",
    "build_report",
    "classify_edge",
    "collapse_duplicate_sites",
    "decode_query",
    "encode_query",
    "format_percent",
    "generate_synthetic",
    "load_metadata",
    "parse_graph",
    "parse_report",
    "reduction_rate",
    "render_report",
    "report_to_document",
    "review_cone",
    "run_compass",
    "serialize_graph",
    "should_traverse",
    "spec_from_document",
    "spec_to_document",
    "utc_now_rfc3339",
    "validate_graph",
]
