"""Declaration-level Solidity frontend.

Tokenizes source text and parses the structure the inheritance metrics need:
top-level ``contract`` / ``interface`` / ``library`` headers with their
ordered ``is`` clauses, plus pragma and import directives. Everything inside
braces is skipped by depth matching, so function bodies, state variables and
expressions are never modeled. Declaration syntax is stable across the
0.4.x-0.8.x compiler line, which is all this frontend targets.

All functions here are pure: identical input text yields identical results,
and nothing is shared between calls.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, replace
from enum import Enum
from typing import NamedTuple

from .errors import (
    DuplicateContractName,
    LibraryWithBases,
    MalformedInheritanceClause,
    NestedDeclarationWarning,
    UnbalancedBraces,
    UnterminatedComment,
    UnterminatedString,
)


class TokenKind(Enum):
    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    PUNCTUATOR = "punctuator"
    STRING_LITERAL = "string"
    NUMBER_LITERAL = "number"
    BRACE_OPEN = "brace_open"
    BRACE_CLOSE = "brace_close"
    PAREN_OPEN = "paren_open"
    PAREN_CLOSE = "paren_close"
    COMMA = "comma"
    SEMICOLON = "semicolon"


class Token(NamedTuple):
    kind: TokenKind
    text: str
    line: int    # 1-based
    column: int  # 1-based


class ContractKind(Enum):
    CONTRACT = "contract"
    INTERFACE = "interface"
    LIBRARY = "library"


@dataclass(frozen=True)
class BaseRef:
    """One name in an ``is`` clause; constructor arguments carry no metric
    weight but must be consumed."""

    name: str
    has_constructor_args: bool = False


@dataclass(frozen=True)
class ContractDef:
    name: str
    kind: ContractKind
    bases: tuple[BaseRef, ...]
    decl_line: int


@dataclass(frozen=True)
class SourceUnit:
    """One parsed Solidity file. ``contracts`` preserves source order."""

    path: str
    pragma_versions: tuple[str, ...]
    imports: tuple[str, ...]
    contracts: tuple[ContractDef, ...]
    raw_line_count: int = 0
    sloc: int = 0


# Only the declaration-level vocabulary is classified as keywords; body
# identifiers must stay identifiers so skipping never misfires.
KEYWORDS = frozenset({"contract", "interface", "library", "is", "abstract", "pragma", "import"})

_DECL_KEYWORDS = frozenset({"contract", "interface", "library"})

# Alternation order matters: complete comments/strings must win over their
# unterminated-open fallbacks, and the final single-char branch keeps the
# scan contiguous.
_SCAN = re.compile(
    r"""
      (?P<nl>\n)
    | (?P<ws>[^\S\n]+)
    | (?P<line_comment>//[^\n]*)
    | (?P<block_comment>/\*.*?\*/)
    | (?P<block_open>/\*)
    | (?P<string>"(?:[^"\\\n]|\\.)*"|'(?:[^'\\\n]|\\.)*')
    | (?P<string_open>["'])
    | (?P<ident>[A-Za-z_$][0-9A-Za-z_$]*)
    | (?P<number>[0-9][0-9A-Za-z_.]*)
    | (?P<punct>.)
    """,
    re.VERBOSE | re.DOTALL,
)

_PUNCT_KINDS = {
    "{": TokenKind.BRACE_OPEN,
    "}": TokenKind.BRACE_CLOSE,
    "(": TokenKind.PAREN_OPEN,
    ")": TokenKind.PAREN_CLOSE,
    ",": TokenKind.COMMA,
    ";": TokenKind.SEMICOLON,
}


def tokenize(source: str) -> list[Token]:
    """Token stream with comments and whitespace elided.

    Braces and parens inside comments or string literals are never emitted,
    so every structural token in the output is significant. Positions are
    1-based and reference the original text.

    Raises UnterminatedComment / UnterminatedString pointing at the opening
    delimiter.
    """
    tokens: list[Token] = []
    append = tokens.append
    line = 1
    line_start = 0
    for m in _SCAN.finditer(source):
        group = m.lastgroup
        if group == "ws" or group == "line_comment":
            continue
        if group == "nl":
            line += 1
            line_start = m.end()
            continue
        text = m.group()
        column = m.start() - line_start + 1
        if group == "ident":
            kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENTIFIER
        elif group == "punct":
            kind = _PUNCT_KINDS.get(text, TokenKind.PUNCTUATOR)
        elif group == "number":
            kind = TokenKind.NUMBER_LITERAL
        elif group == "string":
            kind = TokenKind.STRING_LITERAL
        elif group == "block_comment":
            newlines = text.count("\n")
            if newlines:
                line += newlines
                line_start = m.start() + text.rfind("\n") + 1
            continue
        elif group == "block_open":
            raise UnterminatedComment("unterminated block comment", line, column)
        else:  # string_open
            raise UnterminatedString("unterminated string literal", line, column)
        append(Token(kind, text, line, column))
    return tokens


def count_sloc(source: str) -> tuple[int, int]:
    """(physical line count, source lines of code).

    A line counts toward SLOC when it carries anything besides whitespace
    and comment content. String literals are code even when they contain
    comment-looking text. Never raises: an unterminated string runs to end
    of line, an unterminated block comment swallows the rest of the file.
    """
    lines = source.splitlines()
    sloc = 0
    in_block = False
    for text in lines:
        has_code = False
        i = 0
        n = len(text)
        while i < n:
            if in_block:
                end = text.find("*/", i)
                if end < 0:
                    break
                in_block = False
                i = end + 2
                continue
            ch = text[i]
            if ch in " \t\r\f\v":
                i += 1
                continue
            if ch == "/" and i + 1 < n:
                nxt = text[i + 1]
                if nxt == "/":
                    break
                if nxt == "*":
                    in_block = True
                    i += 2
                    continue
            if ch == '"' or ch == "'":
                has_code = True
                i += 1
                while i < n:
                    if text[i] == "\\":
                        i += 2
                    elif text[i] == ch:
                        i += 1
                        break
                    else:
                        i += 1
                continue
            has_code = True
            i += 1
        if has_code:
            sloc += 1
    return len(lines), sloc


_WORDY = frozenset({TokenKind.IDENTIFIER, TokenKind.KEYWORD, TokenKind.NUMBER_LITERAL})


def _join_texts(tokens: list[Token]) -> str:
    """Canonical text for a directive: word-ish neighbours get one space."""
    parts: list[str] = []
    prev: Token | None = None
    for tok in tokens:
        if prev is not None and prev.kind in _WORDY and tok.kind in _WORDY:
            parts.append(" ")
        parts.append(tok.text)
        prev = tok
    return "".join(parts)


class _Cursor:
    """Index-based walk over a token list with EOF-safe peeking."""

    __slots__ = ("tokens", "i")

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self, offset: int = 0) -> Token | None:
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else None

    def take(self) -> Token | None:
        tok = self.peek()
        if tok is not None:
            self.i += 1
        return tok


def _parse_base_name(cur: _Cursor, clause_line: int) -> str:
    tok = cur.peek()
    if tok is None or tok.kind is not TokenKind.IDENTIFIER:
        got = tok.text if tok is not None else "end of file"
        raise MalformedInheritanceClause(
            f"expected base name, got {got!r}",
            tok.line if tok else clause_line,
            tok.column if tok else 1,
        )
    parts = [tok.text]
    cur.take()
    # Qualified base names (Module.Base) are legal.
    while True:
        dot = cur.peek()
        nxt = cur.peek(1)
        if (
            dot is not None
            and dot.kind is TokenKind.PUNCTUATOR
            and dot.text == "."
            and nxt is not None
            and nxt.kind is TokenKind.IDENTIFIER
        ):
            cur.take()
            cur.take()
            parts.append(nxt.text)
        else:
            break
    return ".".join(parts)


def _consume_balanced_parens(cur: _Cursor, open_tok: Token) -> None:
    depth = 0
    while True:
        tok = cur.take()
        if tok is None:
            raise MalformedInheritanceClause(
                "unclosed constructor-argument list", open_tok.line, open_tok.column
            )
        if tok.kind is TokenKind.PAREN_OPEN:
            depth += 1
        elif tok.kind is TokenKind.PAREN_CLOSE:
            depth -= 1
            if depth == 0:
                return


def _parse_inheritance_clause(cur: _Cursor, is_tok: Token) -> tuple[BaseRef, ...]:
    bases: list[BaseRef] = []
    while True:
        name = _parse_base_name(cur, is_tok.line)
        has_args = False
        tok = cur.peek()
        if tok is not None and tok.kind is TokenKind.PAREN_OPEN:
            _consume_balanced_parens(cur, tok)
            has_args = True
        bases.append(BaseRef(name, has_args))
        tok = cur.peek()
        if tok is None:
            raise MalformedInheritanceClause(
                "inheritance clause runs into end of file", is_tok.line, is_tok.column
            )
        if tok.kind is TokenKind.COMMA:
            cur.take()
            continue
        if tok.kind is TokenKind.BRACE_OPEN:
            return tuple(bases)
        raise MalformedInheritanceClause(
            f"unexpected {tok.text!r} in inheritance clause", tok.line, tok.column
        )


def _parse_declaration(cur: _Cursor, kind_tok: Token) -> ContractDef:
    kind = ContractKind(kind_tok.text)
    name_tok = cur.peek()
    if name_tok is None or name_tok.kind is not TokenKind.IDENTIFIER:
        got = name_tok.text if name_tok is not None else "end of file"
        raise MalformedInheritanceClause(
            f"expected name after '{kind_tok.text}', got {got!r}",
            kind_tok.line,
            kind_tok.column,
        )
    cur.take()
    bases: tuple[BaseRef, ...] = ()
    tok = cur.peek()
    if tok is not None and tok.kind is TokenKind.KEYWORD and tok.text == "is":
        cur.take()
        bases = _parse_inheritance_clause(cur, tok)
        if kind is ContractKind.LIBRARY:
            raise LibraryWithBases(
                f"library {name_tok.text!r} cannot inherit", kind_tok.line, kind_tok.column
            )
    tok = cur.peek()
    if tok is None or tok.kind is not TokenKind.BRACE_OPEN:
        got = tok.text if tok is not None else "end of file"
        raise MalformedInheritanceClause(
            f"expected '{{' to open {kind.value} {name_tok.text!r}, got {got!r}",
            name_tok.line,
            name_tok.column,
        )
    # The brace itself is left for the main loop's depth tracking.
    return ContractDef(name_tok.text, kind, bases, kind_tok.line)


def _consume_directive(cur: _Cursor, allow_leading_brace: bool = False) -> list[Token]:
    """Tokens up to (excluding) the terminating semicolon, which is eaten."""
    body: list[Token] = []
    leading = allow_leading_brace
    while True:
        tok = cur.peek()
        if tok is None or tok.kind is TokenKind.SEMICOLON:
            cur.take()
            return body
        if tok.kind is TokenKind.BRACE_OPEN and leading:
            # `import {A, B as C} from "p";` carries its symbol list in
            # braces right after the keyword; skip the balanced group.
            depth = 0
            while tok is not None:
                if tok.kind is TokenKind.BRACE_OPEN:
                    depth += 1
                elif tok.kind is TokenKind.BRACE_CLOSE:
                    depth -= 1
                    if depth == 0:
                        cur.take()
                        break
                cur.take()
                tok = cur.peek()
            leading = False
            continue
        # Any other brace means the directive was never terminated; stop
        # before it so declaration parsing is not derailed.
        if tok.kind in (TokenKind.BRACE_OPEN, TokenKind.BRACE_CLOSE):
            return body
        body.append(tok)
        cur.take()
        leading = False


def parse_unit(tokens: list[Token], path: str) -> SourceUnit:
    """Parse the declaration-level structure of one compilation unit.

    Captures every top-level contract/interface/library header with its
    ordered base list; bodies are skipped by brace matching. Pragma and
    import directives are recorded. Line counts are not derivable from a
    token stream and stay zero; ``parse_source`` stamps them.
    """
    cur = _Cursor(tokens)
    depth = 0
    pragmas: list[str] = []
    imports: list[str] = []
    contracts: list[ContractDef] = []
    names: set[str] = set()

    while True:
        tok = cur.peek()
        if tok is None:
            break
        if tok.kind is TokenKind.BRACE_OPEN:
            depth += 1
            cur.take()
            continue
        if tok.kind is TokenKind.BRACE_CLOSE:
            depth -= 1
            if depth < 0:
                raise UnbalancedBraces("unmatched '}'", tok.line, tok.column)
            cur.take()
            continue
        if depth > 0:
            if tok.kind is TokenKind.KEYWORD and tok.text in _DECL_KEYWORDS:
                warnings.warn(
                    f"{path}: '{tok.text}' keyword inside a body at line {tok.line}; "
                    "nested declarations are not legal Solidity and are ignored",
                    NestedDeclarationWarning,
                    stacklevel=2,
                )
            cur.take()
            continue

        if tok.kind is TokenKind.KEYWORD:
            if tok.text == "pragma":
                cur.take()
                body = _consume_directive(cur)
                if body and body[0].kind is TokenKind.IDENTIFIER and body[0].text == "solidity":
                    pragmas.append(_join_texts(body[1:]))
                continue
            if tok.text == "import":
                cur.take()
                body = _consume_directive(cur, allow_leading_brace=True)
                strings = [t for t in body if t.kind is TokenKind.STRING_LITERAL]
                if strings:
                    imports.append(strings[-1].text[1:-1])
                continue
            if tok.text == "abstract":
                # 0.6+ `abstract contract`; the kind stays Contract.
                cur.take()
                continue
            if tok.text in _DECL_KEYWORDS:
                cur.take()
                decl = _parse_declaration(cur, tok)
                if decl.name in names:
                    raise DuplicateContractName(
                        f"duplicate declaration of {decl.name!r}", tok.line, tok.column
                    )
                names.add(decl.name)
                contracts.append(decl)
                continue
        cur.take()

    if depth != 0:
        last = tokens[-1] if tokens else None
        raise UnbalancedBraces(
            f"{depth} unclosed brace(s) at end of file",
            last.line if last else 1,
            last.column if last else 1,
        )
    return SourceUnit(
        path=path,
        pragma_versions=tuple(pragmas),
        imports=tuple(imports),
        contracts=tuple(contracts),
    )


def parse_source(source: str, path: str) -> SourceUnit:
    """tokenize + parse_unit + count_sloc over one source text."""
    unit = parse_unit(tokenize(source), path)
    raw, sloc = count_sloc(source)
    return replace(unit, raw_line_count=raw, sloc=sloc)


def parse_file(path: str) -> SourceUnit:
    with open(path, encoding="utf-8") as handle:
        return parse_source(handle.read(), path)
