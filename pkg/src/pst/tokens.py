"""Tokenizer for the surface language.

Symbols arrive in several shapes: plain identifiers (``Dom``, ``TOPSP``,
``x``), primed variables (``T'``), subscripted symbols (``1_{N}``,
``+_{SUB}``), backslash commands (``\\wedge``), subscripted commands
(``\\approx_{C}``) and styled names (``\\mathscr{B}``).  Each of those is a
single token.  Token text is always an exact slice of the source, so the
token stream plus the skipped whitespace reproduces the input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LexError

IDENT = "ident"
CMD = "cmd"
NUMBER = "number"
PUNCT = "punct"

# single characters that may carry a subscript and act as operator symbols
_OP_CHARS = set("+-*/<>=")
_PUNCT_CHARS = set("()[]{}<>,:.!=+-*/")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int
    start: int
    end: int

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.column})"


def tokenize(source: str) -> list[Token]:
    """Token list covering ``source``; comment lines (leading %) are skipped."""
    tokens: list[Token] = []
    i = 0
    line = 1
    line_start = 0
    n = len(source)

    def position(at: int) -> tuple[int, int]:
        return line, at - line_start + 1

    at_line_start = True
    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            line_start = i
            at_line_start = True
            continue
        if ch in " \t\r":
            i += 1
            continue
        if ch == "%" and at_line_start:
            while i < n and source[i] != "\n":
                i += 1
            continue
        at_line_start = False
        ln, col = position(i)
        start = i
        if ch == "\\":
            i += 1
            if i >= n or not source[i].isalpha():
                raise LexError("stray backslash", ln, col)
            while i < n and source[i].isalpha():
                i += 1
            # optional braced argument for styled names
            if i < n and source[i] == "{":
                i = _skip_braces(source, i, ln, col)
            i = _primes(source, i)
            i = _subscript(source, i, ln, col)
            i = _primes(source, i)
            tokens.append(Token(CMD, source[start:i], ln, col, start, i))
            continue
        if ch.isalnum():
            while i < n and (source[i].isalnum()):
                i += 1
            i = _primes(source, i)
            i = _subscript(source, i, ln, col)
            i = _primes(source, i)
            text = source[start:i]
            if text.isdigit():
                tokens.append(Token(NUMBER, text, ln, col, start, i))
            else:
                tokens.append(Token(IDENT, text, ln, col, start, i))
            continue
        if ch in _OP_CHARS:
            j = i + 1
            if j < n and source[j] == "_":
                j = _subscript(source, j, ln, col)
                tokens.append(Token(IDENT, source[start:j], ln, col, start, j))
                i = j
                continue
            tokens.append(Token(PUNCT, ch, ln, col, start, i + 1))
            i += 1
            continue
        if ch in _PUNCT_CHARS:
            tokens.append(Token(PUNCT, ch, ln, col, start, i + 1))
            i += 1
            continue
        raise LexError(f"illegal character {ch!r}", ln, col)
    return tokens


def _primes(source: str, i: int) -> int:
    while i < len(source) and source[i] == "'":
        i += 1
    return i


def _subscript(source: str, i: int, ln: int, col: int) -> int:
    """Consume ``_{...}`` with balanced braces, if present."""
    if i < len(source) and source[i] == "_":
        if i + 1 >= len(source) or source[i + 1] != "{":
            raise LexError("subscript must be a brace group", ln, col)
        return _skip_braces(source, i + 1, ln, col)
    return i


def _skip_braces(source: str, i: int, ln: int, col: int) -> int:
    depth = 0
    while i < len(source):
        if source[i] == "{":
            depth += 1
        elif source[i] == "}":
            depth -= 1
            if depth == 0:
                return i + 1
        i += 1
    raise LexError("unterminated brace group", ln, col)
