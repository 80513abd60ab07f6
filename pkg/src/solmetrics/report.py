"""Deterministic emitters: DOT diagrams and JSON/CSV/table reports.

Identical inputs must yield identical bytes, so nodes and edges are written
in lexicographic order, JSON keys are sorted, and the document timestamp is
injectable (flag or SOURCE_DATE_EPOCH) rather than always sampled from the
wall clock. Rationals are kept exact in JSON (numerator/denominator pairs)
and rounded to two decimals in the human-facing CSV and table forms.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from typing import Iterable

from ._version import __version__
from .graph import InheritanceGraph, depth_of
from .metrics import (
    METRIC_LABELS,
    BaselineReport,
    CorpusSummary,
    MetricsRecord,
    SummaryMetric,
    compare_to_baselines,
    summarize,
)

JSON_SCHEMA = "solmetrics/1"


class ReportFormat(Enum):
    JSON = "json"
    CSV = "csv"
    TABLE = "table"


@dataclass(frozen=True)
class ReportDocument:
    records: tuple[MetricsRecord, ...]
    summaries: tuple[CorpusSummary, ...]
    baselines: tuple[BaselineReport, ...]
    tool_version: str
    generated_at: str


def resolve_timestamp(explicit: float | None = None) -> str:
    """ISO 8601 UTC stamp: the argument, else SOURCE_DATE_EPOCH, else now."""
    if explicit is None:
        env = os.environ.get("SOURCE_DATE_EPOCH")
        if env:
            try:
                explicit = float(env)
            except ValueError:
                explicit = None
    if explicit is None:
        return datetime.now(timezone.utc).isoformat(timespec="seconds")
    return datetime.fromtimestamp(explicit, timezone.utc).isoformat(timespec="seconds")


def build_document(
    records: Iterable[MetricsRecord],
    *,
    with_baselines: bool = False,
    generated_at: float | None = None,
) -> ReportDocument:
    """Assemble records plus their summaries into one renderable document.

    Records are sorted by unit path so parallel producers still yield a
    deterministic document.
    """
    ordered = tuple(sorted(records, key=lambda r: r.unit_path))
    summaries: tuple[CorpusSummary, ...] = ()
    baselines: tuple[BaselineReport, ...] = ()
    if ordered:
        summaries = tuple(
            summarize(list(ordered), metric)
            for metric in (SummaryMetric.MAX_DIT, SummaryMetric.AVG_NOC, SummaryMetric.SLOC)
        )
        if with_baselines:
            baselines = tuple(
                compare_to_baselines(s)
                for s in summaries
                if s.metric is not SummaryMetric.SLOC
            )
    return ReportDocument(
        records=ordered,
        summaries=summaries,
        baselines=baselines,
        tool_version=__version__,
        generated_at=resolve_timestamp(generated_at),
    )


def emit_dot(graph: InheritanceGraph, metrics: MetricsRecord | None = None) -> str:
    """Render one unit's inheritance diagram as DOT text.

    Arrows point child to parent (the generalization direction); rankdir=BT
    puts roots on top. Unresolved external bases are drawn dashed. Output
    order is lexicographic, so equal graphs give equal bytes.
    """
    dits = {}
    if metrics is not None:
        dits = {m.contract_name: m.dit for m in metrics.per_contract}
    lines = ["digraph inheritance {", "  rankdir=BT;"]
    for name in sorted(graph.nodes):
        dit = dits.get(name)
        if dit is None:
            dit = depth_of(graph, name)
        attrs = [f'label="{name}\\nDIT={dit}"']
        if graph.is_external(name):
            attrs.append("style=dashed")
        lines.append(f'  "{name}" [{", ".join(attrs)}];')
    for child, parent in sorted(graph.edges):
        lines.append(f'  "{child}" -> "{parent}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _record_payload(record: MetricsRecord) -> dict:
    return {
        "unit_path": record.unit_path,
        "class_count": record.class_count,
        "sloc": record.sloc,
        "max_dit": record.max_dit,
        "avg_noc": {
            "numerator": record.avg_noc.numerator,
            "denominator": record.avg_noc.denominator,
        },
        "flags": sorted(flag.value for flag in record.flags),
        "contracts": [
            {
                "name": m.contract_name,
                "kind": m.kind.value,
                "dit": m.dit,
                "noc": m.noc,
            }
            for m in record.per_contract
        ],
    }


def _summary_payload(summary: CorpusSummary) -> dict:
    return {
        "metric": summary.metric.value,
        "label": summary.metric_name,
        "mean": summary.mean,
        "median": summary.median,
        "stddev": summary.stddev,
        "n": summary.n,
        "min": summary.min,
        "max": summary.max,
    }


def _baseline_payload(baseline: BaselineReport) -> dict:
    return {
        "metric": baseline.metric.value,
        "study": {
            "mean": baseline.study.mean,
            "median": baseline.study.median,
            "stddev": baseline.study.stddev,
        },
        "classical_means": list(baseline.classical_means),
        "classical_max_noc": baseline.classical_max_noc,
        "study_max_avg": baseline.study_max_avg,
    }


def _emit_json(doc: ReportDocument) -> str:
    payload = {
        "schema": JSON_SCHEMA,
        "tool_version": doc.tool_version,
        "generated_at": doc.generated_at,
        "records": [_record_payload(r) for r in doc.records],
        "summaries": [_summary_payload(s) for s in doc.summaries],
        "baselines": [_baseline_payload(b) for b in doc.baselines],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit_csv(doc: ReportDocument) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["unit_path", "class_count", "sloc", "max_dit", "avg_noc", "flags"])
    for r in doc.records:
        writer.writerow([
            r.unit_path,
            r.class_count,
            r.sloc,
            r.max_dit,
            f"{float(r.avg_noc):.2f}",
            "|".join(sorted(flag.value for flag in r.flags)),
        ])
    if doc.summaries:
        writer.writerow([])
        writer.writerow(["metric", "mean", "median", "stddev", "n", "min", "max"])
        for s in doc.summaries:
            writer.writerow([
                s.metric_name,
                f"{s.mean:.2f}",
                f"{s.median:.2f}",
                f"{s.stddev:.2f}",
                s.n,
                f"{s.min:.2f}",
                f"{s.max:.2f}",
            ])
    return buf.getvalue()


def _emit_table(doc: ReportDocument) -> str:
    header = ("Metric", "Average", "Median", "Std Dev")
    rows: list[tuple[str, str, str, str]] = []
    for s in doc.summaries:
        rows.append((s.metric_name, f"{s.mean:.2f}", f"{s.median:.2f}", f"{s.stddev:.2f}"))
    for b in doc.baselines:
        rows.append((
            f"{METRIC_LABELS[b.metric]} (reference)",
            f"{b.study.mean:.2f}",
            f"{b.study.median:.2f}",
            f"{b.study.stddev:.2f}",
        ))

    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))

    def fmt(row: tuple[str, str, str, str]) -> str:
        first = row[0].ljust(widths[0])
        rest = [cell.rjust(widths[i + 1]) for i, cell in enumerate(row[1:])]
        return " | ".join([first] + rest)

    lines = [fmt(header), "-+-".join("-" * w for w in widths)]
    lines.extend(fmt(row) for row in rows)

    notes: list[str] = []
    for b in doc.baselines:
        if b.classical_means:
            means = ", ".join(f"{m:.2f}" for m in b.classical_means)
            notes.append(f"Reference DIT means for classical OO systems: {means}")
        if b.classical_max_noc is not None:
            note = f"Reference max NOC in classical OO systems: {b.classical_max_noc}"
            if b.study_max_avg is not None:
                note += f"; highest per-file NOC average in the contract study: {b.study_max_avg:.2f}"
            notes.append(note)
    if notes:
        lines.append("")
        lines.extend(notes)
    return "\n".join(lines) + "\n"


def emit_report(doc: ReportDocument, format: ReportFormat) -> str:
    if format is ReportFormat.JSON:
        return _emit_json(doc)
    if format is ReportFormat.CSV:
        return _emit_csv(doc)
    return _emit_table(doc)
