import json
import os
from fractions import Fraction

import pytest

from solmetrics import (
    CONTRACT_STUDY_DIT,
    CONTRACT_STUDY_NOC,
    CorpusSummary,
    JSON_SCHEMA,
    ReportFormat,
    SummaryMetric,
    UnresolvedBaseWarning,
    build_document,
    build_graph,
    emit_dot,
    emit_report,
    measure_unit,
    parse_source,
    resolve_timestamp,
    summarize,
)

from _oracles import parse_dot

STAMP_EPOCH = 1600084800.0
STAMP = "2020-09-14T12:00:00+00:00"


def measured(source, path="unit.sol"):
    unit = parse_source(source, path=path)
    graph = build_graph(unit)
    return graph, measure_unit(unit, graph)


def doc_for(sources, **kwargs):
    records = []
    for path, source in sources.items():
        _, record = measured(source, path=path)
        records.append(record)
    kwargs.setdefault("generated_at", STAMP_EPOCH)
    return build_document(records, **kwargs)


class TestEmitDot:
    def test_listing1_exact(self, fixtures_dir):
        unit = parse_source((fixtures_dir / "listing1.sol").read_text(), path="listing1.sol")
        graph = build_graph(unit)
        record = measure_unit(unit, graph)
        expected = (
            "digraph inheritance {\n"
            "  rankdir=BT;\n"
            '  "Base" [label="Base\\nDIT=0"];\n'
            '  "derived" [label="derived\\nDIT=1"];\n'
            '  "derived" -> "Base";\n'
            "}\n"
        )
        assert emit_dot(graph, record) == expected

    def test_isolated_nodes_have_no_edges(self, fixtures_dir):
        unit = parse_source((fixtures_dir / "listing2.sol").read_text(), path="listing2.sol")
        graph = build_graph(unit)
        text = emit_dot(graph, measure_unit(unit, graph))
        _, _, nodes, edges = parse_dot(text)
        assert set(nodes) == {"Display", "Request"}
        assert edges == []

    def test_diamond_edges_and_labels(self, fixtures_dir):
        unit = parse_source((fixtures_dir / "diamond.sol").read_text(), path="diamond.sol")
        graph = build_graph(unit)
        text = emit_dot(graph, measure_unit(unit, graph))
        name, attrs, nodes, edges = parse_dot(text)
        assert name == "inheritance"
        assert attrs["rankdir"] == "BT"
        assert nodes["D"]["label"] == "D\\nDIT=2"
        assert set(edges) == {("B", "A"), ("C", "A"), ("D", "B"), ("D", "C")}

    def test_edges_child_to_parent_and_sorted(self):
        graph, record = measured(
            "contract Z { }\ncontract M is Z { }\ncontract A is M, Z { }\n"
        )
        text = emit_dot(graph, record)
        _, _, _, edges = parse_dot(text)
        assert edges == [("A", "M"), ("A", "Z"), ("M", "Z")]

    def test_external_base_dashed(self):
        with pytest.warns(UnresolvedBaseWarning):
            graph, record = measured("contract Mine is Foreign { }\n")
        text = emit_dot(graph, record)
        _, _, nodes, _ = parse_dot(text)
        assert nodes["Foreign"].get("style") == "dashed"
        assert "DIT" in nodes["Mine"]["label"]

    def test_without_metrics_uses_graph_depths(self):
        source = "library Bits { }\ncontract App { }\n"
        unit = parse_source(source, path="libs.sol")
        graph = build_graph(unit)
        text = emit_dot(graph)
        _, _, nodes, _ = parse_dot(text)
        assert nodes["Bits"]["label"] == "Bits\\nDIT=0"

    def test_deterministic(self):
        source = "contract A { }\ncontract B is A { }\n"
        graph1, rec1 = measured(source)
        graph2, rec2 = measured(source)
        assert emit_dot(graph1, rec1) == emit_dot(graph2, rec2)


class TestJsonReport:
    def test_schema_and_shape(self):
        doc = doc_for({"one.sol": "contract A { }\ncontract B is A { }\n"})
        payload = json.loads(emit_report(doc, ReportFormat.JSON))
        assert payload["schema"] == JSON_SCHEMA
        assert payload["generated_at"] == STAMP
        record = payload["records"][0]
        assert record["unit_path"] == "one.sol"
        assert record["max_dit"] == 1
        assert record["avg_noc"] == {"numerator": 1, "denominator": 2}
        assert {s["metric"] for s in payload["summaries"]} == {
            "max_dit", "avg_noc", "sloc"
        }

    def test_round_trip_exact(self):
        doc = doc_for({
            "a.sol": "contract A { }\ncontract B is A { }\ncontract C is A { }\n",
            "b.sol": "contract D { }\n",
        })
        payload = json.loads(emit_report(doc, ReportFormat.JSON))
        by_path = {r["unit_path"]: r for r in payload["records"]}
        for record in doc.records:
            raw = by_path[record.unit_path]
            assert raw["class_count"] == record.class_count
            assert raw["sloc"] == record.sloc
            assert raw["max_dit"] == record.max_dit
            rebuilt = Fraction(raw["avg_noc"]["numerator"], raw["avg_noc"]["denominator"])
            assert rebuilt == record.avg_noc
            assert raw["flags"] == sorted(f.value for f in record.flags)
            names = [c["name"] for c in raw["contracts"]]
            assert names == [c.contract_name for c in record.per_contract]
            assert [c["dit"] for c in raw["contracts"]] == [
                c.dit for c in record.per_contract
            ]

    def test_byte_identical_across_runs(self):
        sources = {"x.sol": "contract X { }\n", "y.sol": "contract Y is X { }\ncontract X { }\n"}
        one = emit_report(doc_for(sources), ReportFormat.JSON)
        two = emit_report(doc_for(sources), ReportFormat.JSON)
        assert one == two
        assert one.endswith("\n")

    def test_baselines_serialized_when_requested(self):
        doc = doc_for(
            {"a.sol": "contract A { }\ncontract B is A { }\n"}, with_baselines=True
        )
        payload = json.loads(emit_report(doc, ReportFormat.JSON))
        metrics = {b["metric"] for b in payload["baselines"]}
        assert metrics == {"max_dit", "avg_noc"}
        dit = next(b for b in payload["baselines"] if b["metric"] == "max_dit")
        assert dit["study"]["mean"] == pytest.approx(3.29)
        assert dit["classical_means"] == [1.25, 1.54, 0.89]


class TestCsvReport:
    def test_blocks_and_rounding(self):
        doc = doc_for({
            "a.sol": "contract A { }\ncontract B is A { }\ncontract C is A { }\n",
        })
        text = emit_report(doc, ReportFormat.CSV)
        lines = text.split("\n")
        assert lines[0] == "unit_path,class_count,sloc,max_dit,avg_noc,flags"
        assert lines[1].startswith("a.sol,3,3,1,0.67,")
        blank = lines.index("")
        assert lines[blank + 1] == "metric,mean,median,stddev,n,min,max"
        summary_rows = {row.split(",")[0] for row in lines[blank + 2:] if row}
        assert summary_rows == {
            "Depth of Inheritance", "Number of Children", "Source Lines of Code"
        }

    def test_flags_joined_sorted(self):
        chain = "\n".join(
            ["contract C0 { }"]
            + [f"contract C{i} is C{i - 1} {{ }}" for i in range(1, 7)]
        ) + "\ncontract Lone { }\n"
        doc = doc_for({"deep.sol": chain})
        text = emit_report(doc, ReportFormat.CSV)
        record_row = text.split("\n")[1]
        assert record_row.endswith("DitExceedsThreshold")

    def test_unix_newlines_only(self):
        doc = doc_for({"a.sol": "contract A { }\n"})
        text = emit_report(doc, ReportFormat.CSV)
        assert "\r" not in text


class TestTableReport:
    def test_header_and_reference_rows(self):
        doc = doc_for(
            {"a.sol": "contract A { }\ncontract B is A { }\n"}, with_baselines=True
        )
        text = emit_report(doc, ReportFormat.TABLE)
        lines = text.split("\n")
        assert lines[0].split("|") == [c for c in lines[0].split("|")]
        header_cells = [c.strip() for c in lines[0].split("|")]
        assert header_cells == ["Metric", "Average", "Median", "Std Dev"]
        assert set(lines[1]) <= {"-", "+"}
        reference = [line for line in lines if "(reference)" in line]
        assert len(reference) == 2
        dit_ref = next(line for line in reference if "Depth of Inheritance" in line)
        cells = [c.strip() for c in dit_ref.split("|")]
        assert cells[1:] == ["3.29", "3.60", "1.40"]

    def test_reference_from_study_constants(self):
        # Feed the published figures through as computed values: the table
        # must render them with the same two-decimal formatting.
        summaries = (
            CorpusSummary(
                metric=SummaryMetric.MAX_DIT,
                metric_name="Depth of Inheritance",
                mean=CONTRACT_STUDY_DIT.mean,
                median=CONTRACT_STUDY_DIT.median,
                stddev=CONTRACT_STUDY_DIT.stddev,
                n=229,
                min=0.0,
                max=6.0,
            ),
            CorpusSummary(
                metric=SummaryMetric.AVG_NOC,
                metric_name="Number of Children",
                mean=CONTRACT_STUDY_NOC.mean,
                median=CONTRACT_STUDY_NOC.median,
                stddev=CONTRACT_STUDY_NOC.stddev,
                n=229,
                min=0.0,
                max=2.12,
            ),
        )
        doc = doc_for({"a.sol": "contract A { }\n"})
        doc = type(doc)(
            records=doc.records,
            summaries=summaries,
            baselines=doc.baselines,
            tool_version=doc.tool_version,
            generated_at=doc.generated_at,
        )
        text = emit_report(doc, ReportFormat.TABLE)
        dit_row = next(
            line for line in text.split("\n")
            if line.startswith("Depth of Inheritance") and "(reference)" not in line
        )
        cells = [c.strip() for c in dit_row.split("|")]
        assert cells[1:] == ["3.29", "3.60", "1.40"]
        noc_row = next(
            line for line in text.split("\n")
            if line.startswith("Number of Children") and "(reference)" not in line
        )
        assert [c.strip() for c in noc_row.split("|")][1:] == ["0.99", "1.00", "0.45"]

    def test_footnotes_present(self):
        doc = doc_for({"a.sol": "contract A { }\n"}, with_baselines=True)
        text = emit_report(doc, ReportFormat.TABLE)
        assert "1.25, 1.54, 0.89" in text
        assert "16" in text
        assert "2.12" in text

    def test_empty_document_is_header_only(self):
        doc = build_document([], generated_at=STAMP_EPOCH)
        text = emit_report(doc, ReportFormat.TABLE)
        lines = [line for line in text.split("\n") if line]
        assert len(lines) == 2  # header and rule, no data rows
        assert lines[0].startswith("Metric")


class TestBuildDocument:
    def test_records_sorted_by_path(self):
        doc = doc_for({
            "z.sol": "contract Z { }\n",
            "a.sol": "contract A { }\n",
            "m.sol": "contract M { }\n",
        })
        assert [r.unit_path for r in doc.records] == ["a.sol", "m.sol", "z.sol"]

    def test_summary_n_matches_records(self):
        doc = doc_for({f"f{i}.sol": "contract A { }\n" for i in range(4)})
        assert all(s.n == 4 for s in doc.summaries)

    def test_no_baselines_by_default(self):
        doc = doc_for({"a.sol": "contract A { }\n"})
        assert doc.baselines == ()

    def test_baseline_metrics_exclude_sloc(self):
        doc = doc_for({"a.sol": "contract A { }\n"}, with_baselines=True)
        assert {b.metric for b in doc.baselines} == {
            SummaryMetric.MAX_DIT, SummaryMetric.AVG_NOC
        }

    def test_empty_records_no_summaries(self):
        doc = build_document([], generated_at=STAMP_EPOCH)
        assert doc.summaries == ()
        assert doc.records == ()

    def test_summaries_match_direct_summarize(self):
        records = []
        for i, source in enumerate([
            "contract A { }\ncontract B is A { }\n",
            "contract C { }\n",
        ]):
            _, record = measured(source, path=f"s{i}.sol")
            records.append(record)
        doc = build_document(records, generated_at=STAMP_EPOCH)
        direct = summarize(records, SummaryMetric.MAX_DIT)
        indirect = next(s for s in doc.summaries if s.metric is SummaryMetric.MAX_DIT)
        assert indirect == direct


class TestResolveTimestamp:
    def test_explicit_epoch(self):
        assert resolve_timestamp(1600084800.0) == "2020-09-14T12:00:00+00:00"

    def test_env_fallback(self, monkeypatch):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "1600084800")
        assert resolve_timestamp() == "2020-09-14T12:00:00+00:00"

    def test_explicit_beats_env(self, monkeypatch):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
        assert resolve_timestamp(1600084800.0) == "2020-09-14T12:00:00+00:00"

    def test_now_when_unset(self, monkeypatch):
        monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)
        stamp = resolve_timestamp()
        assert stamp.endswith("+00:00")
        assert stamp[:3] in {"202", "203"}  # sane current-era year

    def test_document_uses_resolver(self, monkeypatch):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "1600084800")
        doc = build_document([])
        assert doc.generated_at == "2020-09-14T12:00:00+00:00"
