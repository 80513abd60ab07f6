"""Per-contract metrics, the complexity flag, and corpus-level statistics."""

from solmetrics import (
    SummaryMetric,
    build_graph,
    classify_dit,
    compare_to_baselines,
    measure_unit,
    parse_source,
    summarize,
)

SOURCES = {
    "registry.sol": """\
contract Store { uint256 internal v; }
contract Registry is Store { address internal owner; }
contract Audited is Registry { uint256 internal stamp; }
""",
    "token.sol": """\
interface IToken { function move(address to, uint256 n) external; }
contract Token is IToken {
    function move(address to, uint256 n) external { }
}
contract WrappedToken is Token { }
""",
    "flat.sol": """\
contract Single { uint256 internal v; }
""",
}

records = []
for path, source in SOURCES.items():
    unit = parse_source(source, path=path)
    record = measure_unit(unit, build_graph(unit))
    records.append(record)
    flags = ", ".join(sorted(f.value for f in record.flags)) or "-"
    print("%-14s max_dit=%d  avg_noc=%s  flags: %s"
          % (path, record.max_dit, record.avg_noc, flags))
    for c in record.per_contract:
        print("    %-14s DIT=%d NOC=%d -> %s"
              % (c.contract_name, c.dit, c.noc, classify_dit(c.dit).value))

# The flag threshold is strict: depth six is the first flagged value.
for depth in (5, 6):
    print("depth %d classifies as %s" % (depth, classify_dit(depth).value))

print()
for metric in (SummaryMetric.MAX_DIT, SummaryMetric.AVG_NOC):
    summary = summarize(records, metric)
    print("%-22s mean=%.2f median=%.2f stddev=%.2f (n=%d)"
          % (summary.metric_name, summary.mean, summary.median,
             summary.stddev, summary.n))
    report = compare_to_baselines(summary)
    print("    study figures:      mean=%.2f median=%.2f stddev=%.2f"
          % (report.study.mean, report.study.median, report.study.stddev))
    if report.classical_means:
        print("    classical OO means:", ", ".join(
            "%.2f" % m for m in report.classical_means))
