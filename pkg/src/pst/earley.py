"""Chart parser for the surface grammar.

The definition grammar is not LL (set braces open both finite sets and
set-builder terms, parentheses open terms, formulas and binders), so the
parser does full context-free recognition with a shared item chart.  Rules
carry builder callbacks; a completed parse is evaluated bottom-up into an
AST.  The grammar is written without epsilon rules, which keeps completion
strictly backward-looking, and chained constructs are left-recursive, which
keeps item counts per chart set bounded on long operator chains.

Each item remembers up to two derivation links.  A second link on any item
reachable from the accepting item is a genuine ambiguity and is reported
with both parse trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import AmbiguityError, ParseError
from .tokens import Token


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple[str, ...]
    build: Callable[[list], object]


class Grammar:
    def __init__(self, rules: list[Rule], start: str):
        self.rules = rules
        self.start = start
        self.nonterminals = {r.lhs for r in rules}
        self.by_lhs: dict[str, list[int]] = {}
        for idx, rule in enumerate(rules):
            self.by_lhs.setdefault(rule.lhs, []).append(idx)


class _Item:
    __slots__ = ("rule", "dot", "origin", "links")

    def __init__(self, rule: int, dot: int, origin: int):
        self.rule = rule
        self.dot = dot
        self.origin = origin
        self.links: list[tuple[Optional["_Item"], object]] = []


def parse(grammar: Grammar, tokens: list[Token],
          categories: list[frozenset[str]]) -> object:
    """Parse the token stream, returning the built AST for the start symbol."""
    n = len(tokens)
    rules = grammar.rules
    nts = grammar.nonterminals
    charts: list[dict[tuple[int, int, int], _Item]] = [dict() for _ in range(n + 1)]
    waits: list[dict[str, list[_Item]]] = [dict() for _ in range(n + 1)]
    predicted: list[set[str]] = [set() for _ in range(n + 1)]
    expected: list[set[str]] = [set() for _ in range(n + 1)]

    order: list[list[_Item]] = [[] for _ in range(n + 1)]

    def add(pos: int, rule: int, dot: int, origin: int, link) -> None:
        key = (rule, dot, origin)
        chart = charts[pos]
        item = chart.get(key)
        if item is None:
            item = _Item(rule, dot, origin)
            if link is not None:
                item.links.append(link)
            chart[key] = item
            order[pos].append(item)
        elif link is not None and len(item.links) < 2 and link not in item.links:
            item.links.append(link)

    for ridx in grammar.by_lhs.get(grammar.start, ()):
        add(0, ridx, 0, 0, None)
    predicted[0].add(grammar.start)

    for i in range(n + 1):
        work = order[i]
        idx = 0
        while idx < len(work):
            item = work[idx]
            idx += 1
            rhs = rules[item.rule].rhs
            if item.dot == len(rhs):
                lhs = rules[item.rule].lhs
                for waiting in waits[item.origin].get(lhs, ()):
                    add(i, waiting.rule, waiting.dot + 1, waiting.origin,
                        (waiting, item))
                continue
            sym = rhs[item.dot]
            if sym in nts:
                waits[i].setdefault(sym, []).append(item)
                if sym not in predicted[i]:
                    predicted[i].add(sym)
                    for ridx in grammar.by_lhs.get(sym, ()):
                        add(i, ridx, 0, i, None)
            else:
                expected[i].add(sym)
                if i < n and sym in categories[i]:
                    add(i + 1, item.rule, item.dot + 1, item.origin,
                        (item, tokens[i]))

    accepting = [item for item in charts[n].values()
                 if item.origin == 0 and rules[item.rule].lhs == grammar.start
                 and item.dot == len(rules[item.rule].rhs)]
    if not accepting:
        furthest = max(p for p in range(n + 1) if charts[p])
        if furthest < n:
            tok = tokens[furthest]
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column,
                             tuple(sorted(expected[furthest])))
        last = tokens[-1] if tokens else None
        raise ParseError("unexpected end of input",
                         last.line if last else 0,
                         last.column if last else 0,
                         tuple(sorted(expected[furthest])))
    if len(accepting) > 1:
        trees = [_evaluate(rules, item, {}) for item in accepting[:2]]
        raise AmbiguityError("grammar admits multiple parses", tuple(trees))

    root = accepting[0]
    ambiguous = _find_ambiguous(rules, root)
    if ambiguous is not None:
        first = _evaluate(rules, root, {})
        second = _evaluate(rules, root, {ambiguous: 1})
        raise AmbiguityError("input admits multiple parses", (first, second))
    return _evaluate(rules, root, {})


def _links_of(item: _Item, overrides: dict) -> tuple[Optional[_Item], object]:
    return item.links[overrides.get(item, 0)]


def _children_of(item: _Item, overrides: dict) -> list:
    """Causes of one item in rule order, walking the predecessor chain."""
    chain = []
    cur = item
    while cur.dot > 0:
        pred, cause = _links_of(cur, overrides)
        chain.append(cause)
        cur = pred
    chain.reverse()
    return chain


def _find_ambiguous(rules, root: _Item) -> Optional[_Item]:
    seen: set[int] = set()
    stack = [root]
    while stack:
        item = stack.pop()
        if id(item) in seen:
            continue
        seen.add(id(item))
        if len(item.links) > 1:
            return item
        if item.dot > 0:
            pred, cause = item.links[0]
            stack.append(pred)
            if isinstance(cause, _Item):
                stack.append(cause)
    return None


def _evaluate(rules, root: _Item, overrides: dict) -> object:
    memo: dict[int, object] = {}
    stack: list[_Item] = [root]
    while stack:
        item = stack[-1]
        if id(item) in memo:
            stack.pop()
            continue
        chain = _children_of(item, overrides)
        pending = [c for c in chain if isinstance(c, _Item) and id(c) not in memo]
        if pending:
            stack.extend(pending)
            continue
        children = [memo[id(c)] if isinstance(c, _Item) else c for c in chain]
        memo[id(item)] = rules[item.rule].build(children)
        stack.pop()
    return memo[id(root)]
