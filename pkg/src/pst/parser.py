"""Parsing of definition blocks into surface ASTs.

A definition block is a header sentence followed by clause sentences and an
optional trailing precedence sentence, each terminated by a period.  The
header is regular and parsed by hand; clause bodies use the chart parser
from :mod:`pst.earley` because the expression grammar is not LL.  Infix
applications come out of the chart as flat chains and are then nested by
declared precedence (higher binds tighter, ties associate left).

The symbol table is threaded through corpus parsing: symbols declared by
earlier definitions are classified as function, relation or infix operators
for later ones, and an infix symbol used before its declaration is an
``UnknownSymbolError``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from . import syntax as s
from .earley import Grammar, Rule, parse as chart_parse
from .errors import ParseError, UnknownSymbolError
from .symbols import FUNCTION, RELATION, SymbolInfo, SymbolTable
from .tokens import CMD, NUMBER, PUNCT, Token, tokenize

__all__ = ["parse_definition", "parse_corpus", "CorpusParse", "tokenize",
           "symbol_info_for", "parse_formula_text", "parse_term_text"]

# ------------------------------------------------------------ classification

_PRIMITIVES = {
    "\\iff": "IFFK", "\\wedge": "ANDK", "\\vee": "ORK", "\\neg": "NOTK",
    "\\rightarrow": "IMPLIESK", "\\forall": "FORALLK", "\\exists": "EXISTSK",
    "\\lambda": "LAMBDAK", "\\uparrow": "UPARROW", "\\downarrow": "DOWNARROW",
    "\\simeq": "SIMEQ", "\\in": "INK",
}
_KEYWORDS = {"If": "IFK", "then": "THENK", "Otherwise": "OTHERWISEK",
             "fixed": "FIXEDK"}
_STYLED_PREFIXES = ("\\mathscr{", "\\mathbb{", "\\mathcal{", "\\mathfrak{")
_BRACKET_CATS = frozenset("(){}[]<>,:!")


def _base_name(text: str) -> str:
    m = re.match(r"[A-Za-z0-9]+", text)
    return m.group(0) if m else text


def _classify(tok: Token, table: SymbolTable, defsym: Optional[str]) -> frozenset[str]:
    text = tok.text
    if defsym is not None and text == defsym:
        return frozenset({"DEFSYM"})
    if tok.kind == PUNCT:
        if text == "=":
            return frozenset({"EQK"})
        if text in _BRACKET_CATS:
            return frozenset({text})
        info = table.lookup(text)
        if info is not None and info.infix:
            return frozenset({"INFIXFUN" if info.kind == FUNCTION else "INFIXREL"})
        return frozenset({"UNKNOWNSYM"})
    if tok.kind == NUMBER:
        return frozenset({"NUMBER"})
    if text in _PRIMITIVES:
        return frozenset({_PRIMITIVES[text]})
    if text in _KEYWORDS:
        return frozenset({_KEYWORDS[text]})
    info = table.lookup(text)
    if info is not None:
        if info.infix:
            return frozenset({"INFIXFUN" if info.kind == FUNCTION else "INFIXREL"})
        return frozenset({"FUNSYM" if info.kind == FUNCTION else "RELSYM"})
    if tok.kind == CMD:
        if text.startswith(_STYLED_PREFIXES):
            return frozenset({"VAR"})
        return frozenset({"UNKNOWNSYM"})
    base = _base_name(text)
    if base[0].isdigit():
        return frozenset({"UNKNOWNSYM"})
    cats = {"VAR"}
    if len(base) >= 2 and base.upper() == base:
        cats.add("RELSYM")  # all-caps names may head a bracket application
    return frozenset(cats)


# ------------------------------------------------------- precedence shaping


@dataclass
class _ChainAcc:
    """Persistent cons cell for a flat infix chain (avoids quadratic
    list copying on very long operator runs)."""

    prev: object  # _ChainAcc or the leftmost operand
    op: Token
    operand: s.PstTerm


def _resolve_chain(acc, table: SymbolTable) -> s.PstTerm:
    if not isinstance(acc, _ChainAcc):
        return acc
    rest: list[tuple[Token, s.PstTerm]] = []
    node = acc
    while isinstance(node, _ChainAcc):
        rest.append((node.op, node.operand))
        node = node.prev
    rest.reverse()
    operands = [node] + [t for _, t in rest]
    ops = [tok for tok, _ in rest]

    def prec(tok: Token) -> int:
        info = table.lookup(tok.text)
        if info is None or info.precedence is None:
            raise UnknownSymbolError(tok.text, tok.line, tok.column)
        return info.precedence

    # standard precedence climbing; ties associate left
    def climb(i: int, min_prec: int) -> tuple[s.PstTerm, int]:
        left = operands[i]
        j = i
        while j < len(ops) and prec(ops[j]) >= min_prec:
            op = ops[j]
            right, j = climb(j + 1, prec(op) + 1)
            left = s.InfixFunApp(op.text, left, right)
        return left, j

    result, consumed = climb(0, 0)
    assert consumed == len(ops)
    return result


def _apply(head: s.PstTerm, args: list, table: SymbolTable) -> s.PstTerm:
    if isinstance(head, s.DefinedFunApp) and not head.args:
        info = table.lookup(head.symbol)
        if info is not None and info.kind == FUNCTION and info.arity > 0:
            return s.DefinedFunApp(head.symbol, tuple(args))
    return s.SetFunApp(head, tuple(args))


def _relational(raw: tuple[list, list]) -> s.PstFormula:
    terms, rels = raw
    if len(terms) == 2:
        if rels[0] == "=":
            return s.PstEqual(terms[0], terms[1])
        if rels[0] == "\\simeq":
            return s.PstPartialEqual(terms[0], terms[1])
    return s.RelChain(tuple(terms), tuple(rels))


@dataclass
class _RawClause:
    guard: Optional[s.PstFormula]
    head: tuple[str, tuple[str, ...]]
    body: tuple[str, object]
    otherwise: bool


# ------------------------------------------------------------------- grammar


def _build_grammar(table: SymbolTable) -> dict[str, Grammar]:
    rules: list[Rule] = []

    def rule(lhs: str, rhs: list[str], build) -> None:
        rules.append(Rule(lhs, tuple(rhs), build))

    def first(c):
        return c[0]

    def second(c):
        return c[1]

    # clauses
    rule("clause", ["IFK", "formula", "THENK", "chead", "cbody"],
         lambda c: _RawClause(c[1], c[3], c[4], False))
    rule("clause", ["OTHERWISEK", "chead", "cbody"],
         lambda c: _RawClause(None, c[1], c[2], True))
    rule("clause", ["chead", "cbody"],
         lambda c: _RawClause(None, c[0], c[1], False))
    rule("cbody", ["SIMEQ", "term"], lambda c: (s.FUN_BODY, c[1]))
    rule("cbody", ["IFFK", "formula"], lambda c: (s.REL_BODY, c[1]))
    rule("cbody", ["UPARROW"], lambda c: (s.UNDEF_BODY, None))
    rule("chead", ["DEFSYM", "(", "varlist", ")"],
         lambda c: (c[0].text, tuple(c[2])))
    rule("chead", ["DEFSYM", "[", "varlist", "]"],
         lambda c: (c[0].text, tuple(c[2])))
    rule("chead", ["VAR", "DEFSYM", "VAR"],
         lambda c: (c[1].text, (c[0].text, c[2].text)))
    rule("chead", ["DEFSYM"], lambda c: (c[0].text, ()))

    # formulas, loosest to tightest
    rule("formula", ["ifff"], first)
    rule("ifff", ["impf"], first)
    rule("ifff", ["impf", "IFFK", "impf"], lambda c: s.PstIff(c[0], c[2]))
    rule("impf", ["orf"], first)
    rule("impf", ["orf", "IMPLIESK", "impf"], lambda c: s.PstImplies(c[0], c[2]))
    rule("orf", ["andf"], first)
    rule("orf", ["orf", "ORK", "andf"], lambda c: s.PstOr(c[0], c[2]))
    rule("andf", ["notf"], first)
    rule("andf", ["andf", "ANDK", "notf"], lambda c: s.PstAnd(c[0], c[2]))
    rule("notf", ["atomf"], first)
    rule("notf", ["NOTK", "notf"], lambda c: s.PstNot(c[1]))
    rule("atomf", ["relapp"], first)
    rule("atomf", ["chainf"], first)
    rule("atomf", ["memb"], first)
    rule("atomf", ["quant"], first)
    rule("atomf", ["term", "DOWNARROW"], lambda c: s.DefinedTerm(c[0]))
    rule("atomf", ["term", "UPARROW"], lambda c: s.UndefinedTerm(c[0]))
    rule("atomf", ["(", "formula", ")"], second)
    rule("relapp", ["RELSYM", "[", "termlist", "]"],
         lambda c: s.DefinedRelApp(c[0].text, tuple(c[2])))
    rule("relapp", ["RELSYM"], lambda c: s.DefinedRelApp(c[0].text, ()))
    rule("chainf", ["chain2"], lambda c: _relational(c[0]))
    rule("chain2", ["term", "relop", "term"],
         lambda c: ([c[0], c[2]], [c[1]]))
    rule("chain2", ["chain2", "relop", "term"],
         lambda c: (c[0][0] + [c[2]], c[0][1] + [c[1]]))
    rule("relop", ["INK"], lambda c: c[0].text)
    rule("relop", ["EQK"], lambda c: c[0].text)
    rule("relop", ["SIMEQ"], lambda c: c[0].text)
    rule("relop", ["INFIXREL"], lambda c: c[0].text)
    rule("relop", ["VAR"], lambda c: c[0].text)
    rule("mterms", ["term"], lambda c: [c[0]])
    rule("mterms", ["mterms", ",", "term"], lambda c: c[0] + [c[2]])
    rule("memb", ["term", ",", "mterms", "relop", "term"],
         lambda c: s.MultiMembership(tuple([c[0]] + c[2]), c[3], c[4]))
    rule("quant", ["(", "FORALLK", "varlist", ")", "qbody"],
         lambda c: s.Quantified("forall", tuple(c[2]), c[4], None))
    rule("quant", ["(", "FORALLK", "varlist", "bnd", ")", "qbody"],
         lambda c: s.Quantified("forall", tuple(c[2]), c[5], c[3]))
    rule("quant", ["(", "EXISTSK", "varlist", ")", "qbody"],
         lambda c: s.Quantified("exists", tuple(c[2]), c[4], None))
    rule("quant", ["(", "EXISTSK", "varlist", "bnd", ")", "qbody"],
         lambda c: s.Quantified("exists", tuple(c[2]), c[5], c[3]))
    rule("qbody", ["(", "formula", ")"], second)
    rule("qbody", ["quant"], first)
    rule("bnd", ["brel", "term"], lambda c: s.Bound(c[0], c[1]))
    rule("brel", ["INK"], lambda c: c[0].text)
    rule("brel", ["INFIXREL"], lambda c: c[0].text)
    rule("brel", ["VAR"], lambda c: c[0].text)

    # terms
    rule("term", ["ichain"], lambda c: _resolve_chain(c[0], table))
    rule("ichain", ["appt"], first)
    rule("ichain", ["ichain", "INFIXFUN", "appt"], lambda c: _extend_chain(c))
    rule("appt", ["atomt"], first)
    rule("appt", ["appt", "(", "termlist", ")"],
         lambda c: _apply(c[0], c[2], table))
    rule("atomt", ["VAR"], lambda c: s.Variable(c[0].text))
    rule("atomt", ["FUNSYM"], lambda c: s.DefinedFunApp(c[0].text, ()))
    rule("atomt", ["tuplet"], first)
    rule("atomt", ["finset"], first)
    rule("atomt", ["setb"], first)
    rule("atomt", ["lam"], first)
    rule("atomt", ["iotat"], first)
    rule("atomt", ["(", "term", ")"], second)
    rule("termlist", ["term"], lambda c: [c[0]])
    rule("termlist", ["termlist", ",", "term"], lambda c: c[0] + [c[2]])
    rule("termlist2", ["term", ",", "term"], lambda c: [c[0], c[2]])
    rule("termlist2", ["termlist2", ",", "term"], lambda c: c[0] + [c[2]])
    rule("tuplet", ["<", "termlist2", ">"], lambda c: s.TupleTerm(tuple(c[1])))
    rule("finset", ["{", "}"], lambda c: s.FiniteSet(()))
    rule("finset", ["{", "termlist", "}"], lambda c: s.FiniteSet(tuple(c[1])))
    rule("setb", ["{", "term", ":", "formula", "}"],
         lambda c: s.SetBuilder(c[1], c[3]))
    rule("setb", ["{", "term", ":", "formula", "fixedtail", "}"],
         lambda c: s.SetBuilder(c[1], c[3], None, tuple(c[4])))
    rule("setb", ["{", "VAR", "brel", "term", ":", "formula", "}"],
         lambda c: s.SetBuilder(s.Variable(c[1].text), c[5],
                                s.Bound(c[2], c[3])))
    rule("setb", ["{", "VAR", "brel", "term", ":", "formula", "fixedtail", "}"],
         lambda c: s.SetBuilder(s.Variable(c[1].text), c[5],
                                s.Bound(c[2], c[3]), tuple(c[6])))
    rule("fixedtail", [",", "VAR", "FIXEDK"], lambda c: [c[1].text])
    rule("fixedtail", ["fixedtail", ",", "VAR", "FIXEDK"],
         lambda c: c[0] + [c[2].text])
    rule("lam", ["(", "LAMBDAK", "VAR", ")", "(", "term", ")"],
         lambda c: s.Lambda(c[2].text, c[5]))
    rule("lam", ["(", "LAMBDAK", "VAR", "bnd", ")", "(", "term", ")"],
         lambda c: s.Lambda(c[2].text, c[6], c[3]))
    rule("iotat", ["(", "!", "VAR", ")", "(", "formula", ")"],
         lambda c: s.IotaTerm((c[2].text,), c[5]))
    rule("iotat", ["(", "!", "VAR", "bnd", ")", "(", "formula", ")"],
         lambda c: s.IotaTerm((c[2].text,), c[6], False, c[3]))
    rule("iotat", ["(", "!", "<", "varlist2", ">", ")", "(", "formula", ")"],
         lambda c: s.IotaTerm(tuple(c[3]), c[7], True))
    rule("iotat", ["(", "!", "<", "varlist2", ">", "bnd", ")", "(", "formula", ")"],
         lambda c: s.IotaTerm(tuple(c[3]), c[8], True, c[4]))
    rule("varlist", ["VAR"], lambda c: [c[0].text])
    rule("varlist", ["varlist", ",", "VAR"], lambda c: c[0] + [c[2].text])
    rule("varlist2", ["VAR", ",", "VAR"], lambda c: [c[0].text, c[2].text])
    rule("varlist2", ["varlist2", ",", "VAR"], lambda c: c[0] + [c[2].text])

    return {start: Grammar(rules, start)
            for start in ("clause", "formula", "term")}


def _extend_chain(c) -> _ChainAcc:
    return _ChainAcc(c[0], c[1], c[2])


# --------------------------------------------------------------- the parser


def _chart(grammar: Grammar, tokens: list[Token],
           cats: list[frozenset[str]]):
    try:
        return chart_parse(grammar, tokens, cats)
    except ValueError as exc:
        # an AST invariant violated during construction (e.g. repeated
        # binder names) is a syntax error from the user's point of view
        tok = tokens[0] if tokens else None
        raise ParseError(str(exc), tok.line if tok else 0,
                         tok.column if tok else 0) from exc


def _categorize_all(tokens: list[Token], table: SymbolTable,
                    defsym: Optional[str]) -> list[frozenset[str]]:
    cats = []
    for tok in tokens:
        c = _classify(tok, table, defsym)
        if c == frozenset({"UNKNOWNSYM"}):
            raise UnknownSymbolError(tok.text, tok.line, tok.column)
        cats.append(c)
    return cats


def _expect(tokens: list[Token], i: int, text: str) -> int:
    if i >= len(tokens) or tokens[i].text != text:
        tok = tokens[min(i, len(tokens) - 1)] if tokens else None
        raise ParseError(f"expected {text!r}",
                         tok.line if tok else 0, tok.column if tok else 0)
    return i + 1


def _split_sentences(tokens: list[Token]) -> list[list[Token]]:
    sentences: list[list[Token]] = []
    current: list[Token] = []
    for tok in tokens:
        if tok.kind == PUNCT and tok.text == ".":
            if current:
                sentences.append(current)
                current = []
        else:
            current.append(tok)
    if current:
        tok = current[-1]
        raise ParseError("missing final period", tok.line, tok.column)
    return sentences


def _parse_header(tokens: list[Token]) -> tuple[str, s.DefKind, str, int]:
    """Parse ``DEFINITION <label>: <kind> <symbol>.`` and return
    (label, kind-without-precedence, symbol, index past the period)."""
    if not tokens or tokens[0].text != "DEFINITION":
        tok = tokens[0] if tokens else None
        raise ParseError("definition must begin with DEFINITION",
                         tok.line if tok else 0, tok.column if tok else 0)
    i = 1
    label_parts = []
    while i < len(tokens) and tokens[i].text != ":":
        label_parts.append(tokens[i].text)
        i += 1
    label = "".join(label_parts)
    if not label:
        raise ParseError("missing definition label", tokens[0].line,
                         tokens[0].column)
    i = _expect(tokens, i, ":")
    if i < len(tokens) and tokens[i].text == "Infix":
        i += 1
        infix = True
        arity = 2
    else:
        if i >= len(tokens) or tokens[i].kind != NUMBER:
            raise ParseError("expected arity or 'Infix'",
                             tokens[min(i, len(tokens) - 1)].line,
                             tokens[min(i, len(tokens) - 1)].column)
        arity = int(tokens[i].text)
        i += 1
        i = _expect(tokens, i, "-")
        i = _expect(tokens, i, "ary")
        infix = False
    if i >= len(tokens) or tokens[i].text not in ("function", "relation"):
        tok = tokens[min(i, len(tokens) - 1)]
        raise ParseError("expected 'function' or 'relation'", tok.line,
                         tok.column)
    kind = FUNCTION if tokens[i].text == "function" else RELATION
    i += 1
    if i >= len(tokens):
        raise ParseError("missing symbol in header", tokens[-1].line,
                         tokens[-1].column)
    symbol = tokens[i].text
    i += 1
    i = _expect(tokens, i, ".")
    return label, s.DefKind(kind, arity, infix, None), symbol, i


def parse_definition(tokens: list[Token], table: Optional[SymbolTable] = None,
                     role: Optional[str] = None,
                     source: str = "") -> s.PstDefinition:
    """Parse the token stream of exactly one definition block."""
    if table is None:
        table = SymbolTable.base()
    label, kind, symbol, i = _parse_header(tokens)
    sentences = _split_sentences(tokens[i:])
    if not sentences:
        raise ParseError(f"{label}: definition has no clauses",
                         tokens[0].line, tokens[0].column)

    precedence: Optional[int] = None
    if (len(sentences[-1]) == 2 and sentences[-1][0].text == "Precedence"
            and sentences[-1][1].kind == NUMBER):
        if not kind.infix:
            raise ParseError(f"{label}: precedence on a non-infix definition",
                             sentences[-1][0].line, sentences[-1][0].column)
        precedence = int(sentences[-1][1].text)
        sentences = sentences[:-1]
    if kind.infix and kind.kind == FUNCTION and precedence is None:
        raise ParseError(f"{label}: infix function requires a Precedence sentence",
                         tokens[0].line, tokens[0].column)
    kind = s.DefKind(kind.kind, kind.arity, kind.infix, precedence)
    if not sentences:
        raise ParseError(f"{label}: definition has no clauses",
                         tokens[0].line, tokens[0].column)

    grammar = _build_grammar(table)["clause"]
    raw_clauses: list[_RawClause] = []
    for sentence in sentences:
        cats = _categorize_all(sentence, table, symbol)
        raw = _chart(grammar, sentence, cats)
        raw_clauses.append(raw)

    params = _check_heads(label, kind, symbol, raw_clauses,
                          tokens[0].line, tokens[0].column)
    clauses = tuple(_finish_clause(label, kind, rc) for rc in raw_clauses)
    _check_clause_shape(label, clauses, tokens[0].line, tokens[0].column)
    return s.PstDefinition(label=label, kind=kind, symbol=symbol,
                           params=params, clauses=clauses, role=role,
                           source=source)


def _check_heads(label, kind, symbol, raw_clauses, line, col) -> tuple[str, ...]:
    params: Optional[tuple[str, ...]] = None
    for rc in raw_clauses:
        head_sym, head_params = rc.head
        if head_sym != symbol:
            raise ParseError(f"{label}: clause head {head_sym!r} does not match "
                             f"declared symbol {symbol!r}", line, col)
        if len(head_params) != kind.arity:
            raise ParseError(f"{label}: head arity {len(head_params)} does not "
                             f"match declared arity {kind.arity}", line, col)
        if len(set(head_params)) != len(head_params):
            raise ParseError(f"{label}: repeated parameter names", line, col)
        if params is None:
            params = head_params
        elif params != head_params:
            raise ParseError(f"{label}: clauses disagree on parameter names",
                             line, col)
    assert params is not None
    return params


def _finish_clause(label, kind, rc: _RawClause) -> s.Clause:
    body_kind, payload = rc.body
    if body_kind == s.UNDEF_BODY:
        if kind.kind != FUNCTION:
            raise ParseError(f"{label}: only functions may be undefined")
        return s.Clause(rc.guard, None, rc.otherwise)
    if kind.kind == FUNCTION and body_kind != s.FUN_BODY:
        raise ParseError(f"{label}: function clause must use \\simeq")
    if kind.kind == RELATION and body_kind != s.REL_BODY:
        raise ParseError(f"{label}: relation clause must use \\iff")
    return s.Clause(rc.guard, payload, rc.otherwise)


def _check_clause_shape(label, clauses: tuple[s.Clause, ...], line, col) -> None:
    for idx, clause in enumerate(clauses):
        if clause.otherwise and idx != len(clauses) - 1:
            raise ParseError(f"{label}: Otherwise clause must be last", line, col)
        if (clause.guard is None and not clause.otherwise
                and len(clauses) != 1):
            raise ParseError(f"{label}: unguarded clause must stand alone",
                             line, col)
    if sum(1 for c in clauses if c.otherwise) > 1:
        raise ParseError(f"{label}: at most one Otherwise clause", line, col)


def symbol_info_for(d: s.PstDefinition) -> SymbolInfo:
    return SymbolInfo(d.symbol, d.kind.kind, d.kind.arity, d.kind.infix,
                      d.kind.precedence)


# ------------------------------------------------------------------- corpus


@dataclass
class CorpusIssue:
    label: Optional[str]
    line: int
    error: Exception

    def __str__(self) -> str:
        where = self.label or f"line {self.line}"
        return f"{where}: {self.error}"


@dataclass
class CorpusParse:
    definitions: list[s.PstDefinition]
    errors: list[CorpusIssue]
    table: SymbolTable

    @property
    def ok(self) -> bool:
        return not self.errors


_ROLE_RE = re.compile(r"^\s*%\s*protected-role:\s*(\S+)\s*$", re.MULTILINE)
_LABEL_RE = re.compile(r"DEFINITION\s+([^\s:]+)\s*:")


def parse_corpus(source: str, table: Optional[SymbolTable] = None) -> CorpusParse:
    """Parse a file of blank-line separated definition blocks.

    Precedence and symbol declarations from earlier definitions are in force
    for later ones.  Failures are collected per definition instead of
    aborting the run.
    """
    if table is None:
        table = SymbolTable.base()
    definitions: list[s.PstDefinition] = []
    errors: list[CorpusIssue] = []
    pending_role: Optional[str] = None

    for block, line_no in _blocks(source):
        role_match = _ROLE_RE.search(block)
        if role_match:
            pending_role = role_match.group(1)
        stripped = [ln for ln in block.splitlines()
                    if ln.strip() and not ln.lstrip().startswith("%")]
        if not stripped:
            continue
        label_match = _LABEL_RE.search(block)
        label = label_match.group(1) if label_match else None
        try:
            tokens = tokenize(block)
            definition = parse_definition(tokens, table, role=pending_role,
                                          source="\n".join(stripped))
            table.register(symbol_info_for(definition))
            definitions.append(definition)
            pending_role = None
        except Exception as exc:  # collected, not raised
            errors.append(CorpusIssue(label, line_no, exc))
            pending_role = None
    return CorpusParse(definitions, errors, table)


def _blocks(source: str):
    """Yield (text, first line number) for each blank-line separated block."""
    current: list[str] = []
    start_line = 1
    for idx, line in enumerate(source.splitlines(), start=1):
        if line.strip():
            if not current:
                start_line = idx
            current.append(line)
        elif current:
            yield "\n".join(current), start_line
            current = []
    if current:
        yield "\n".join(current), start_line


# --------------------------------------------------------------- test hooks


def parse_formula_text(text: str, table: Optional[SymbolTable] = None) -> s.PstFormula:
    if table is None:
        table = SymbolTable.base()
    tokens = tokenize(text)
    cats = _categorize_all(tokens, table, None)
    return _chart(_build_grammar(table)["formula"], tokens, cats)


def parse_term_text(text: str, table: Optional[SymbolTable] = None) -> s.PstTerm:
    if table is None:
        table = SymbolTable.base()
    tokens = tokenize(text)
    cats = _categorize_all(tokens, table, None)
    return _chart(_build_grammar(table)["term"], tokens, cats)
