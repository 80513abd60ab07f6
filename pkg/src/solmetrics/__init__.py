"""Inheritance metrics for Solidity source corpora.

The pipeline runs in four stages, each usable on its own: parse declaration
headers out of a source file, build the inheritance graph, measure DIT and
NOC per contract and per file, then render diagrams and reports. A small
ingest layer fills a local cache from an Etherscan-style API first when the
corpus lives on-chain.
"""

from ._version import __version__
from .errors import (
    ApiError,
    DuplicateBase,
    DuplicateContractName,
    EmptyCorpus,
    EmptyManifest,
    EmptyUnit,
    InheritanceCycle,
    LibraryWithBases,
    LinearizationFailure,
    MalformedInheritanceClause,
    ManifestRowWarning,
    MissingFile,
    MissingHeader,
    NestedDeclarationWarning,
    NetworkError,
    RateLimited,
    SolmetricsError,
    SolmetricsWarning,
    SourceError,
    UnbalancedBraces,
    UnknownNode,
    UnresolvedBaseWarning,
    UnsupportedMetric,
    UnterminatedComment,
    UnterminatedString,
)
from .frontend import (
    BaseRef,
    ContractDef,
    ContractKind,
    SourceUnit,
    Token,
    TokenKind,
    count_sloc,
    parse_file,
    parse_source,
    parse_unit,
    tokenize,
)
from .graph import (
    InheritanceGraph,
    Linearization,
    build_graph,
    c3_linearize,
    children_of,
    depth_of,
)
from .ingest import (
    DEFAULT_BASE_URL,
    DEFAULT_MIN_CAP_USD,
    MANIFEST_HEADER,
    FetchResult,
    FetchStatus,
    IngestConfig,
    IngestReport,
    ManifestEntry,
    RateLimiter,
    fetch_source,
    filter_prominent,
    ingest_corpus,
    load_manifest,
)
from .metrics import (
    CLASSICAL_DIT_MEANS,
    CLASSICAL_MAX_NOC,
    CONTRACT_STUDY_DIT,
    CONTRACT_STUDY_MAX_AVG_NOC,
    CONTRACT_STUDY_NOC,
    BaselineReport,
    ContractMetrics,
    CorpusSummary,
    DitClass,
    MetricFlag,
    MetricsRecord,
    ReferenceStats,
    SummaryMetric,
    classify_dit,
    compare_to_baselines,
    measure_unit,
    summarize,
)
from .report import (
    JSON_SCHEMA,
    ReportDocument,
    ReportFormat,
    build_document,
    emit_dot,
    emit_report,
    resolve_timestamp,
)

__all__ = [
    "__version__",
    # errors and warnings
    "SolmetricsError", "SourceError", "SolmetricsWarning",
    "UnterminatedComment", "UnterminatedString", "UnbalancedBraces",
    "MalformedInheritanceClause", "LibraryWithBases", "DuplicateContractName",
    "InheritanceCycle", "DuplicateBase", "LinearizationFailure", "UnknownNode",
    "EmptyUnit", "EmptyCorpus", "UnsupportedMetric",
    "MissingFile", "MissingHeader", "EmptyManifest",
    "RateLimited", "NetworkError", "ApiError",
    "NestedDeclarationWarning", "UnresolvedBaseWarning", "ManifestRowWarning",
    # frontend
    "Token", "TokenKind", "ContractKind", "BaseRef", "ContractDef", "SourceUnit",
    "tokenize", "count_sloc", "parse_unit", "parse_source", "parse_file",
    # graph
    "InheritanceGraph", "Linearization",
    "build_graph", "c3_linearize", "depth_of", "children_of",
    # metrics
    "ContractMetrics", "MetricsRecord", "CorpusSummary", "BaselineReport",
    "ReferenceStats", "MetricFlag", "DitClass", "SummaryMetric",
    "measure_unit", "classify_dit", "summarize", "compare_to_baselines",
    "CLASSICAL_DIT_MEANS", "CLASSICAL_MAX_NOC", "CONTRACT_STUDY_DIT",
    "CONTRACT_STUDY_NOC", "CONTRACT_STUDY_MAX_AVG_NOC",
    # ingest
    "ManifestEntry", "FetchResult", "FetchStatus", "IngestConfig", "IngestReport",
    "RateLimiter", "load_manifest", "filter_prominent", "fetch_source",
    "ingest_corpus", "MANIFEST_HEADER", "DEFAULT_BASE_URL", "DEFAULT_MIN_CAP_USD",
    # report
    "ReportDocument", "ReportFormat", "JSON_SCHEMA",
    "build_document", "emit_dot", "emit_report", "resolve_timestamp",
]
