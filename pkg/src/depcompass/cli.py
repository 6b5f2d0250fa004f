"""Command line front end.

Subcommands: validate, compass, report, generate, serve. Exit codes are 0
on success, 1 for validation or domain failures (invalid graph, unknown
target, unbindable address), 2 for usage errors (argparse's own
convention, plus unreadable input files).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .compass import CompassOptions
from .errors import DepCompassError, DocumentFormatError, InvalidGraphError
from .filters import FilterSpec
from .interchange import MetadataSidecar, parse_graph, serialize_graph
from .model import DependencyGraph
from .report import build_report, render_report
from .synth import Profile, SyntheticProfile, generate_synthetic


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise SystemExit(_usage_error(f"cannot read {path}: {exc.strerror}"))


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _failure(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _load_graph(path: str) -> DependencyGraph:
    return parse_graph(_read_bytes(path))


def _parse_targets(args: argparse.Namespace) -> list[str]:
    if args.targets_file:
        lines = _read_bytes(args.targets_file).decode("utf-8").splitlines()
        names = []
        for line in lines:
            stripped = line.split("#", 1)[0].strip()
            if stripped:
                names.append(stripped)
        return names
    return [t.strip() for t in args.targets.split(",") if t.strip()]


def _compass_options(args: argparse.Namespace) -> CompassOptions:
    return CompassOptions(
        include_all_axioms=not args.cone_axioms,
        restrict_axioms_to_cone=args.cone_axioms)


def cmd_validate(args: argparse.Namespace) -> int:
    data = _read_bytes(args.input)
    try:
        parse_graph(data)
    except InvalidGraphError as exc:
        for violation in exc.violations:
            print(violation)
        print(f"{len(exc.violations)} violations")
        return 1
    except DocumentFormatError as exc:
        return _failure(f"malformed document: {exc}")
    print("0 violations")
    return 0


def cmd_compass(args: argparse.Namespace) -> int:
    try:
        graph = _load_graph(args.input)
        report = build_report(graph, _parse_targets(args),
                              _compass_options(args))
    except DepCompassError as exc:
        return _failure(str(exc))
    except ValueError as exc:
        return _failure(str(exc))
    sys.stdout.write(render_report(report, args.format,
                                   include_totals=False).decode("utf-8"))
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    try:
        graph = _load_graph(args.input)
        if args.metadata:
            sidecar = MetadataSidecar.parse(_read_bytes(args.metadata))
            loaded = sidecar.apply_to(graph)
            graph = loaded.graph
            for name in sorted(loaded.stale_names):
                print(f"warning: stale metadata entry: {name}",
                      file=sys.stderr)
        report = build_report(graph, _parse_targets(args),
                              _compass_options(args))
    except DepCompassError as exc:
        return _failure(str(exc))
    except ValueError as exc:
        return _failure(str(exc))
    sys.stdout.write(render_report(report, args.format).decode("utf-8"))
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        profile = SyntheticProfile(
            profile=Profile(args.profile),
            node_count=args.nodes,
            mean_out_degree=args.mean_out_degree,
            theorem_fraction=args.theorem_fraction,
            axiom_count=args.axioms,
            seed=args.seed,
            back_edge_rate=args.back_edge_rate)
        graph = generate_synthetic(profile)
    except ValueError as exc:
        return _failure(str(exc))
    data = serialize_graph(graph)
    try:
        Path(args.out).write_bytes(data)
    except OSError as exc:
        return _failure(f"cannot write {args.out}: {exc.strerror}")
    kinds: dict[str, int] = {}
    for decl in graph.nodes.values():
        kinds[decl.kind.value] = kinds.get(decl.kind.value, 0) + 1
    summary = ", ".join(f"{kinds[k]} {k}" for k in sorted(kinds))
    print(f"wrote {len(graph)} nodes ({summary}), "
          f"{len(graph.edges)} edges to {args.out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ServiceState, create_app

    try:
        graph = parse_graph(Path(args.input).read_bytes())
    except OSError as exc:
        return _failure(f"cannot read {args.input}: {exc.strerror}")
    except DepCompassError as exc:
        return _failure(f"cannot load graph: {exc}")
    sidecar_path = Path(args.metadata)
    sidecar = MetadataSidecar()
    if sidecar_path.exists():
        try:
            sidecar = MetadataSidecar.parse(sidecar_path.read_bytes())
        except (OSError, DepCompassError) as exc:
            return _failure(f"cannot load metadata sidecar: {exc}")
    state = ServiceState(graph, sidecar, sidecar_path=sidecar_path,
                         graph_path=Path(args.input),
                         default_options=_compass_options(args))
    host, _, port_text = args.listen.rpartition(":")
    if not host or not port_text.isdigit():
        return _usage_error(
            f"invalid listen address {args.listen!r}; expected host:port")
    app = create_app(state, static_dir=args.static)
    try:
        uvicorn.run(app, host=host, port=int(port_text),
                    log_level=args.log_level)
    except (OSError, SystemExit) as exc:
        if isinstance(exc, SystemExit) and not exc.code:
            return 0
        return _failure(f"server failed to start on {args.listen}: {exc}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depcompass",
        description="Dependency-aware review scoping for proof libraries.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_targets(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--targets",
                           help="comma-separated declaration names")
        group.add_argument("--targets-file",
                           help="file with one name per line; '#' comments")

    def add_options(p: argparse.ArgumentParser) -> None:
        axioms = p.add_mutually_exclusive_group()
        axioms.add_argument("--all-axioms", action="store_true",
                            help="keep every axiom (default)")
        axioms.add_argument("--cone-axioms", action="store_true",
                            help="keep only axioms inside the review cone")

    p_validate = sub.add_parser(
        "validate", help="check a graph document; print violations")
    p_validate.add_argument("--input", required=True)
    p_validate.set_defaults(func=cmd_validate)

    p_compass = sub.add_parser(
        "compass", help="compute the kept review set for targets")
    p_compass.add_argument("--input", required=True)
    add_targets(p_compass)
    add_options(p_compass)
    p_compass.add_argument("--format", choices=("table", "json"),
                           default="table")
    p_compass.set_defaults(func=cmd_compass)

    p_report = sub.add_parser(
        "report", help="full report with kind totals for targets")
    p_report.add_argument("--input", required=True)
    add_targets(p_report)
    add_options(p_report)
    p_report.add_argument("--metadata",
                          help="metadata sidecar to merge before reporting")
    p_report.add_argument("--format",
                          choices=("table", "json", "markdown"),
                          default="table")
    p_report.set_defaults(func=cmd_report)

    p_generate = sub.add_parser(
        "generate", help="write a deterministic synthetic graph")
    p_generate.add_argument("--profile", required=True,
                            choices=[p.value for p in Profile])
    p_generate.add_argument("--nodes", type=int, default=100)
    p_generate.add_argument("--seed", type=int, default=0)
    p_generate.add_argument("--mean-out-degree", type=float, default=3.0)
    p_generate.add_argument("--theorem-fraction", type=float, default=None,
                            help="override the profile's theorem share")
    p_generate.add_argument("--axioms", type=int, default=2)
    p_generate.add_argument("--back-edge-rate", type=float, default=0.02)
    p_generate.add_argument("--out", required=True)
    p_generate.set_defaults(func=cmd_generate)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument(
        "--input", default=os.environ.get("DEPCOMPASS_GRAPH"),
        help="graph document (env: DEPCOMPASS_GRAPH)")
    p_serve.add_argument(
        "--metadata", default=os.environ.get("DEPCOMPASS_METADATA"),
        help="metadata sidecar path, created on first write "
             "(env: DEPCOMPASS_METADATA)")
    p_serve.add_argument(
        "--listen",
        default=os.environ.get("DEPCOMPASS_LISTEN", "127.0.0.1:8787"),
        help="host:port to bind (env: DEPCOMPASS_LISTEN)")
    p_serve.add_argument("--static", default=None,
                         help="directory of viewer assets to host at /")
    p_serve.add_argument("--log-level", default="info")
    add_options(p_serve)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "serve" and (not args.input or not args.metadata):
            return _usage_error(
                "serve requires --input and --metadata (or DEPCOMPASS_GRAPH "
                "and DEPCOMPASS_METADATA)")
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


if __name__ == "__main__":
    sys.exit(main())
