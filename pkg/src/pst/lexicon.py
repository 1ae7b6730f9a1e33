"""User lexicon: per-symbol natural-language templates.

The file format is ``@``-delimited.  An entry opens with ``NAME:arity@``
(or ``NAME:infix@``), carries ``key:template@`` clauses, and closes with a
doubled ``@@``:

    \\wp:1@
      symb:$\\wp(#^0)$@
      word:the power set of #0@@

Template placeholders ``#i`` substitute the rendering of argument ``i`` in
whatever mode it prefers; ``#^i`` forces the symbolic (math) rendering.
Dollar signs delimit math runs inside a template.  Recognized clause keys:

    symb  symbolic form            nsym  negated symbolic form
    word  natural-language form    reln  relational sentence form
    negn  negated sentence form    plur  plural predicate for merged runs
    nplu  negated plural form      prep  prepositional form for bounds
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import DuplicateEntry, LexiconSyntaxError, TemplateArityMismatch

__all__ = ["Lexicon", "LexiconEntry", "parse_lexicon", "DEFAULT_LEXICON",
           "CLAUSE_KEYS"]

CLAUSE_KEYS = ("symb", "nsym", "word", "reln", "negn", "plur", "nplu", "prep")

_PLACEHOLDER = re.compile(r"#(\^?)(\d+)")


@dataclass(frozen=True)
class LexiconEntry:
    symbol: str
    arity: Optional[int]  # None when declared infix
    infix: bool
    clauses: dict[str, str] = field(compare=False)

    def get(self, key: str) -> Optional[str]:
        return self.clauses.get(key)

    @property
    def effective_arity(self) -> int:
        return 2 if self.infix else (self.arity or 0)


class Lexicon:
    def __init__(self, entries: Optional[dict[str, LexiconEntry]] = None):
        self.entries: dict[str, LexiconEntry] = dict(entries or {})

    def get(self, symbol: str) -> Optional[LexiconEntry]:
        return self.entries.get(symbol)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def merged_over(self, defaults: "Lexicon") -> "Lexicon":
        """This lexicon with ``defaults`` filling the gaps."""
        merged = dict(defaults.entries)
        merged.update(self.entries)
        return Lexicon(merged)


def parse_lexicon(source: str) -> Lexicon:
    """Parse the ``@``-delimited lexicon format; unknown keys are rejected."""
    entries: dict[str, LexiconEntry] = {}
    i = 0
    n = len(source)
    line = 1

    def advance_to(j: int) -> None:
        nonlocal line, i
        line += source.count("\n", i, j)
        i = j

    def skip_space() -> None:
        j = i
        while j < n and source[j].isspace():
            j += 1
        advance_to(j)

    def read_until(stop: str, what: str) -> str:
        j = source.find(stop, i)
        if j < 0:
            raise LexiconSyntaxError(f"unterminated {what}", line)
        text = source[i:j]
        advance_to(j + 1)
        return text

    while True:
        skip_space()
        if i >= n:
            break
        if source[i] == "%":
            j = source.find("\n", i)
            advance_to(n if j < 0 else j + 1)
            continue
        entry_line = line
        symbol = read_until(":", "entry header").strip()
        if not symbol:
            raise LexiconSyntaxError("empty symbol in entry header", entry_line)
        arity_text = read_until("@", "entry header").strip()
        if arity_text == "infix":
            arity: Optional[int] = None
            infix = True
        elif arity_text.isdigit():
            arity = int(arity_text)
            infix = False
        else:
            raise LexiconSyntaxError(
                f"arity must be a number or 'infix', got {arity_text!r}",
                entry_line)
        clauses: dict[str, str] = {}
        while True:
            skip_space()
            if i >= n:
                raise LexiconSyntaxError(
                    f"entry for {symbol!r} not terminated by @@", entry_line)
            key_line = line
            key = read_until(":", "clause key").strip()
            if key not in CLAUSE_KEYS:
                raise LexiconSyntaxError(f"unknown clause key {key!r}", key_line)
            if key in clauses:
                raise LexiconSyntaxError(f"repeated clause {key!r}", key_line)
            template = read_until("@", "clause template")
            clauses[key] = template
            if i < n and source[i] == "@":
                advance_to(i + 1)
                break
        if symbol in entries:
            raise DuplicateEntry(symbol)
        entry = LexiconEntry(symbol, arity, infix, clauses)
        _check_templates(entry)
        entries[symbol] = entry
    return Lexicon(entries)


def _check_templates(entry: LexiconEntry) -> None:
    limit = entry.effective_arity
    for key, template in entry.clauses.items():
        for match in _PLACEHOLDER.finditer(template):
            index = int(match.group(2))
            if index >= limit:
                raise TemplateArityMismatch(
                    entry.symbol,
                    f"clause {key!r} references argument {index} but the "
                    f"entry has arity {limit}")


# Built-in entries for the primitive and foundational vocabulary, mirroring
# the shipped textbook lexicon; user entries override these.
_DEFAULT_SOURCE = r"""
\in:infix@
  symb:#0 $\in$ #1@
  nsym:#0 $\not\in$ #1@
  reln:#0 is in #1@
  negn:#0 is not in #1@
  plur:@
  nplu:@
  prep:#0 in #1@@

=:infix@
  symb:#0 $=$ #1@
  nsym:#0 $\not=$ #1@
  reln:#0 is equal to #1@
  negn:#0 is not equal to #1@@

\simeq:infix@
  symb:#0 $\simeq$ #1@
  reln:#0 is, whenever either side exists, equal to #1@@

\subseteq:infix@
  symb:#0 $\subseteq$ #1@
  nsym:#0 $\not\subseteq$ #1@
  reln:#0 is a subset of #1@
  negn:#0 is not a subset of #1@
  prep:#0 $\subseteq$ #1@@

\supseteq:infix@
  symb:#0 $\supseteq$ #1@
  reln:#0 is a superset of #1@
  prep:#0 $\supseteq$ #1@@

\cup:infix@
  symb:#0 $\cup$ #1@
  word:#0 union #1@@

\cap:infix@
  symb:#0 $\cap$ #1@
  word:#0 intersect #1@@

\backslash:infix@
  symb:#0 $\backslash$ #1@
  word:#0 minus #1@@

\wp:1@
  symb:$\wp(#^0)$@
  word:the power set of #0@@

\varpi_{0}:2@
  symb:$\langle #^0,#^1 \rangle$@
  word:the ordered pair of #0 and #1@@

\emptyset:0@
  symb:$\emptyset$@
  word:the empty set@@
"""

DEFAULT_LEXICON = parse_lexicon(_DEFAULT_SOURCE)
