"""Command line front door: analyze, ingest, summary, diagram.

Exit codes are uniform across subcommands: 0 for success, 1 when some files
failed but the run produced output, 2 for fatal configuration problems
(missing inputs, bad manifest, unusable flags).
"""

from __future__ import annotations

import argparse
import os
import sys
from decimal import Decimal
from pathlib import Path

from ._version import __version__
from .errors import SolmetricsError
from .frontend import parse_file
from .graph import build_graph
from .ingest import DEFAULT_BASE_URL, DEFAULT_MIN_CAP_USD, IngestConfig, ingest_corpus
from .metrics import measure_unit
from .report import ReportFormat, build_document, emit_dot, emit_report


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=[f.value for f in ReportFormat],
        default="table",
        help="report format (default: table)",
    )


def _add_measure_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--threshold",
        type=int,
        default=5,
        metavar="N",
        help="DIT flag threshold, strict (default: 5)",
    )
    parser.add_argument(
        "--count-libraries",
        action="store_true",
        help="include libraries in per-class metrics",
    )
    parser.add_argument(
        "--timestamp",
        type=float,
        default=None,
        metavar="EPOCH",
        help="fix the report timestamp (POSIX seconds) for reproducible output",
    )
    parser.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solmetrics",
        description="Inheritance metrics (DIT, NOC) for Solidity sources.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="measure one or more .sol files or directories")
    analyze.add_argument("paths", nargs="+", metavar="PATH")
    _add_format(analyze)
    _add_measure_flags(analyze)
    analyze.add_argument(
        "--dot-dir",
        metavar="DIR",
        help="also write one <name>.dot diagram per analyzed file",
    )
    analyze.set_defaults(func=_cmd_analyze)

    ingest = sub.add_parser("ingest", help="fetch verified sources for a manifest")
    ingest.add_argument("--manifest", required=True, metavar="CSV")
    ingest.add_argument("--cache-dir", required=True, metavar="DIR")
    ingest.add_argument("--base-url", default=DEFAULT_BASE_URL, metavar="URL")
    ingest.add_argument(
        "--api-key",
        default=os.environ.get("ETHERSCAN_API_KEY"),
        help="API key (default: ETHERSCAN_API_KEY env var)",
    )
    ingest.add_argument("--rate-limit", type=float, default=5.0, metavar="N", help="requests per second")
    ingest.add_argument("--min-cap", type=Decimal, default=DEFAULT_MIN_CAP_USD, metavar="USD")
    ingest.add_argument("--max-in-flight", type=int, default=4, metavar="N")
    ingest.add_argument("--retries", type=int, default=3, metavar="N")
    ingest.add_argument("--backoff", type=float, default=0.5, metavar="SECONDS")
    ingest.add_argument("--timeout", type=float, default=10.0, metavar="SECONDS")
    ingest.add_argument("--offline", action="store_true", help="serve from cache only")
    ingest.add_argument("--provenance", metavar="NOTE", help="manifest snapshot note kept in the report")
    ingest.set_defaults(func=_cmd_ingest)

    summary = sub.add_parser("summary", help="aggregate metrics over a cache or source directory")
    summary.add_argument("source", metavar="DIR_OR_FILE")
    _add_format(summary)
    _add_measure_flags(summary)
    summary.add_argument(
        "--no-baselines",
        action="store_true",
        help="omit the published reference figures",
    )
    summary.set_defaults(func=_cmd_summary)

    diagram = sub.add_parser("diagram", help="emit a DOT inheritance diagram for one file")
    diagram.add_argument("source", metavar="FILE.sol")
    diagram.add_argument("--out", metavar="FILE", help="write DOT here instead of stdout")
    diagram.set_defaults(func=_cmd_diagram)

    return parser


def _collect_sources(raw_paths: list[str]) -> list[Path]:
    """Expand files and directories into a sorted list of .sol paths.

    A missing path is a configuration error, raised as SolmetricsError by
    the caller contract (handled in main as exit 2).
    """
    found: list[Path] = []
    for raw in raw_paths:
        path = Path(raw)
        if path.is_dir():
            found.extend(p for p in sorted(path.rglob("*.sol")) if p.is_file())
        elif path.is_file():
            found.append(path)
        else:
            raise SolmetricsError(f"no such file or directory: {raw}")
    if not found:
        raise SolmetricsError("no .sol files found under the given paths")
    return sorted(set(found))


def _write_output(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _measure_paths(paths, threshold, count_libraries, dot_dir=None):
    records = []
    failures = []
    for path in paths:
        try:
            unit = parse_file(str(path))
            graph = build_graph(unit)
            record = measure_unit(
                unit, graph, dit_threshold=threshold, count_libraries=count_libraries
            )
        except SolmetricsError as exc:
            failures.append((str(path), str(exc)))
            continue
        records.append(record)
        if dot_dir is not None:
            target = Path(dot_dir) / (path.stem + ".dot")
            target.write_text(emit_dot(graph, record), encoding="utf-8")
    return records, failures


def _report_failures(failures: list[tuple[str, str]]) -> None:
    for path, message in failures:
        print(f"failed: {path}: {message}", file=sys.stderr)


def _cmd_analyze(args: argparse.Namespace) -> int:
    paths = _collect_sources(args.paths)
    if args.dot_dir:
        Path(args.dot_dir).mkdir(parents=True, exist_ok=True)
    records, failures = _measure_paths(
        paths, args.threshold, args.count_libraries, dot_dir=args.dot_dir
    )
    doc = build_document(records, generated_at=args.timestamp)
    _write_output(emit_report(doc, ReportFormat(args.format)), args.out)
    _report_failures(failures)
    return 1 if failures else 0


def _cmd_summary(args: argparse.Namespace) -> int:
    paths = _collect_sources([args.source])
    records, failures = _measure_paths(paths, args.threshold, args.count_libraries)
    doc = build_document(
        records,
        with_baselines=not args.no_baselines,
        generated_at=args.timestamp,
    )
    _write_output(emit_report(doc, ReportFormat(args.format)), args.out)
    _report_failures(failures)
    return 1 if failures else 0


def _cmd_ingest(args: argparse.Namespace) -> int:
    if args.rate_limit <= 0:
        raise SolmetricsError("--rate-limit must be positive")
    config = IngestConfig(
        cache_dir=args.cache_dir,
        base_url=args.base_url,
        api_key=args.api_key,
        rate_limit=args.rate_limit,
        max_retries=args.retries,
        backoff_base=args.backoff,
        max_in_flight=args.max_in_flight,
        timeout=args.timeout,
        offline=args.offline,
        min_cap_usd=args.min_cap,
        provenance=args.provenance,
    )
    report = ingest_corpus(args.manifest, config)
    print(
        f"selected {report.selected}  fetched {report.fetched}  "
        f"not verified {report.not_verified}  failed {report.failed}"
    )
    return 1 if report.failed else 0


def _cmd_diagram(args: argparse.Namespace) -> int:
    path = Path(args.source)
    if not path.is_file():
        raise SolmetricsError(f"no such file: {args.source}")
    unit = parse_file(str(path))
    graph = build_graph(unit)
    try:
        record = measure_unit(unit, graph)
    except SolmetricsError:
        record = None  # library-only files still get a diagram
    _write_output(emit_dot(graph, record), args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolmetricsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
