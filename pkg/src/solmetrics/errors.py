"""Exception and warning types shared across the package."""


class SolmetricsError(Exception):
    """Base class for all errors raised by this package."""


class SourceError(SolmetricsError):
    """A problem tied to a position in a Solidity source text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


# -- tokenizer / parser ------------------------------------------------------

class UnterminatedComment(SourceError):
    """A block comment is opened but never closed."""


class UnterminatedString(SourceError):
    """A string literal is opened but not closed before end of line/file."""


class UnbalancedBraces(SourceError):
    """Brace depth goes negative or does not return to zero at end of input."""


class MalformedInheritanceClause(SourceError):
    """A declaration header or its `is` clause is syntactically broken."""


class LibraryWithBases(SourceError):
    """A library declaration carries an inheritance clause."""


class DuplicateContractName(SourceError):
    """Two declarations in one compilation unit share a name."""


# -- inheritance graph -------------------------------------------------------

class InheritanceCycle(SolmetricsError):
    """The declared base relation contains a cycle; names the cycle."""


class DuplicateBase(SolmetricsError):
    """A declaration repeats the same base name."""


class LinearizationFailure(SolmetricsError):
    """No base order satisfies all local precedence lists (C3 merge stuck)."""


class UnknownNode(SolmetricsError):
    """A query names a node that is not in the graph."""


# -- metrics -----------------------------------------------------------------

class EmptyUnit(SolmetricsError):
    """A unit has no countable classes (library-only or declaration-free)."""


class EmptyCorpus(SolmetricsError):
    """Asked to summarize zero records."""


class UnsupportedMetric(SolmetricsError):
    """No literature baseline exists for the requested metric."""


# -- corpus ingestion --------------------------------------------------------

class MissingFile(SolmetricsError):
    """A required input file does not exist."""


class MissingHeader(SolmetricsError):
    """The manifest CSV lacks the expected header row."""


class EmptyManifest(SolmetricsError):
    """The manifest yields no usable entries."""


class RateLimited(SolmetricsError):
    """The API kept answering 429 after all retries."""


class NetworkError(SolmetricsError):
    """Transport-level failure talking to the API."""


class ApiError(SolmetricsError):
    """The API answered with a non-success or malformed payload."""


# -- warnings ----------------------------------------------------------------

class SolmetricsWarning(UserWarning):
    """Base class for non-fatal analysis warnings."""


class NestedDeclarationWarning(SolmetricsWarning):
    """A declaration keyword appeared inside a body (depth > 0)."""


class UnresolvedBaseWarning(SolmetricsWarning):
    """A base name is not declared in the unit; treated as an external root."""


class ManifestRowWarning(SolmetricsWarning):
    """A manifest row was malformed and skipped."""
