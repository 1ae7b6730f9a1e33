"""Natural-language rendering of definitions through a user lexicon.

Connectives and quantifiers always render as words.  Terms and atomic
formulas render symbolically while they can: a node keeps a pure math form
as long as its lexicon entry has a symbolic clause and every argument still
has a math form.  A symbol whose entry only carries a word clause has no
math form, so everything enclosing it renders in words too -- the
monotonicity rule.  Three further touches follow the same house style:

* adjacent conjuncts applying the same relation merge into one plural
  sentence ("... and ... are topological spaces");
* a relation bounding a quantified variable uses its prepositional clause
  when it must be worded ("there exists W in the standard basis ...");
* formalization artifacts disappear when a template simply omits its
  argument or renders it by a plainer symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from . import syntax as s
from .errors import MissingLexiconEntry, TemplateArityMismatch
from .lexicon import DEFAULT_LEXICON, Lexicon, LexiconEntry
from .symbols import RELATION, SymbolTable

__all__ = ["render_nl"]


@dataclass(frozen=True)
class Piece:
    """One rendered fragment: mixed text, plus a pure math form if the
    fragment is still fully symbolic."""

    text: str
    math: Optional[str] = None


def _var(name: str) -> Piece:
    return Piece(f"${name}$", name)


_PLACEHOLDER = re.compile(r"#(\^?)(\d+)")


def _instantiate(symbol: str, template: str, args: list[Piece],
                 symbolic: bool) -> Piece:
    """Fill a template; ``symbolic`` templates also produce a math form."""
    text_parts: list[str] = []
    math_parts: list[str] = []
    math_ok = symbolic
    in_math = False
    pos = 0
    for match in _PLACEHOLDER.finditer(template):
        literal = template[pos:match.start()]
        pos = match.end()
        in_math = _emit_literal(literal, text_parts, math_parts, in_math)
        forced = match.group(1) == "^"
        index = int(match.group(2))
        if index >= len(args):
            raise TemplateArityMismatch(
                symbol, f"placeholder #{index} with {len(args)} arguments")
        arg = args[index]
        if in_math or forced:
            math = arg.math
            if math is None:
                math_ok = False
                text_parts.append(arg.text)
                math_parts.append(arg.text)
            elif in_math:
                text_parts.append(math)
                math_parts.append(math)
            else:
                text_parts.append(f"${math}$")
                math_parts.append(math)
        else:
            if arg.math is None:
                math_ok = False
            text_parts.append(arg.text)
            math_parts.append(arg.math if arg.math is not None else arg.text)
    in_math = _emit_literal(template[pos:], text_parts, math_parts, in_math)
    text = "".join(text_parts)
    return Piece(text, "".join(math_parts) if math_ok else None)


def _emit_literal(literal: str, text_parts: list[str],
                  math_parts: list[str], in_math: bool) -> bool:
    i = 0
    while i < len(literal):
        j = literal.find("$", i)
        if j < 0:
            text_parts.append(literal[i:])
            math_parts.append(literal[i:])
            break
        text_parts.append(literal[i:j])
        math_parts.append(literal[i:j])
        text_parts.append("$")
        in_math = not in_math
        i = j + 1
    return in_math


def _op_segment(entry: LexiconEntry) -> Optional[tuple[str, str]]:
    """(text, math) of the operator part of a binary symb template."""
    symb = entry.get("symb")
    if symb is None:
        return None
    match = re.fullmatch(r"#\^?0(.*)#\^?1", symb, re.DOTALL)
    if match is None:
        return None
    middle = match.group(1).strip()
    return middle, middle.replace("$", "").strip()


class _Renderer:
    def __init__(self, lexicon: Lexicon, table: SymbolTable):
        self.lexicon = lexicon
        self.table = table

    def entry(self, symbol: str) -> Optional[LexiconEntry]:
        return self.lexicon.get(symbol)

    # --------------------------------------------------------------- terms

    def term(self, term: s.PstTerm) -> Piece:
        match term:
            case s.Variable(name):
                return _var(name)
            case s.DefinedFunApp(symbol, args):
                return self._symbol_app(symbol, [self.term(a) for a in args])
            case s.InfixFunApp(symbol, left, right):
                return self._symbol_app(symbol, [self.term(left),
                                                 self.term(right)])
            case s.SetFunApp(fun, args):
                fp = self.term(fun)
                aps = [self.term(a) for a in args]
                if fp.math is not None and all(a.math is not None for a in aps):
                    math = f"{fp.math}({','.join(a.math for a in aps)})"
                    return Piece(f"${math}$", math)
                arg_text = " and ".join(a.text for a in aps)
                return Piece(f"the value of {fp.text} at {arg_text}")
            case s.TupleTerm(elements):
                parts = [self.term(e) for e in elements]
                if all(p.math is not None for p in parts):
                    math = f"\\langle {','.join(p.math for p in parts)} \\rangle"
                    return Piece(f"${math}$", math)
                return Piece("the tuple of " + _join_and([p.text for p in parts]))
            case s.FiniteSet(elements):
                parts = [self.term(e) for e in elements]
                if all(p.math is not None for p in parts):
                    math = "\\{" + ", ".join(p.math for p in parts) + "\\}"
                    return Piece(f"${math}$", math)
                return Piece("the set whose elements are "
                             + _join_and([p.text for p in parts]))
            case s.SetBuilder():
                return self._set_builder(term)
            case s.Lambda(var, body, bound):
                bp = self.term(body)
                subject = _var(var)
                if bound is not None:
                    where = self._bound_piece(subject, bound).text
                else:
                    where = subject.text
                return Piece(f"the function taking each {where} to {bp.text}")
            case s.IotaTerm():
                return self._iota(term)
        raise TypeError(f"not a surface term: {term!r}")

    def _symbol_app(self, symbol: str, args: list[Piece]) -> Piece:
        entry = self.entry(symbol)
        if entry is None:
            raise MissingLexiconEntry((symbol,))
        symb = entry.get("symb")
        if symb is not None and all(a.math is not None for a in args):
            return _instantiate(symbol, symb, args, symbolic=True)
        word = entry.get("word")
        if word is not None:
            piece = _instantiate(symbol, word, args, symbolic=False)
            return Piece(piece.text, None)
        if symb is not None:
            return Piece(_instantiate(symbol, symb, args, symbolic=False).text)
        raise MissingLexiconEntry((symbol,))

    def _set_builder(self, sb: s.SetBuilder) -> Piece:
        tp = self.term(sb.term)
        cp = self.formula(sb.condition)
        if sb.bound is not None:
            subject = self._bound_piece(tp, sb.bound)
        else:
            subject = tp
        if tp.math is not None and cp.math is not None and \
                (sb.bound is None or subject.math is not None):
            inner = subject.math if sb.bound is not None else tp.math
            math = f"\\{{{inner} : {cp.math}\\}}"
            return Piece(f"${math}$", math)
        return Piece(f"the set of {subject.text} such that {cp.text}")

    def _iota(self, it: s.IotaTerm) -> Piece:
        cp = self.formula(it.condition)
        if it.tuple_pattern:
            names = ", ".join(f"${v}$" for v in it.vars)
            subject = Piece(names)
        else:
            subject = _var(it.vars[0])
        if it.bound is not None:
            subject = self._bound_piece(subject, it.bound)
        return Piece(f"the unique {subject.text} such that {cp.text}")

    # ------------------------------------------------------------ formulas

    def formula(self, formula: s.PstFormula, negated: bool = False) -> Piece:
        match formula:
            case s.DefinedRelApp(symbol, args):
                return self._rel_atom(symbol, [self.term(a) for a in args],
                                      negated)
            case s.RelChain(terms, relations):
                return self._chain(terms, relations, negated)
            case s.MultiMembership(terms, relation, bound):
                parts = [self.term(t) for t in terms]
                subject = Piece(
                    ", ".join(p.text for p in parts),
                    ", ".join(p.math for p in parts)
                    if all(p.math is not None for p in parts) else None)
                return self._rel_atom(relation, [subject, self.term(bound)],
                                      negated)
            case s.PstEqual(l, r):
                return self._rel_atom("=", [self.term(l), self.term(r)],
                                      negated)
            case s.PstPartialEqual(l, r):
                return self._rel_atom("\\simeq", [self.term(l), self.term(r)],
                                      negated)
            case s.DefinedTerm(t):
                piece = self.term(t)
                verb = "is not defined" if negated else "is defined"
                return Piece(f"{piece.text} {verb}")
            case s.UndefinedTerm(t):
                piece = self.term(t)
                verb = "is defined" if negated else "is undefined"
                return Piece(f"{piece.text} {verb}")
            case s.PstNot(b):
                if negated:
                    return self.formula(b)
                inner = self.formula(b, negated=True)
                return inner
            case s.PstAnd(_, _):
                return self._conjunction(formula)
            case s.PstOr(l, r):
                return Piece(f"{self.formula(l).text} or {self.formula(r).text}")
            case s.PstImplies(l, r):
                return Piece(f"if {self.formula(l).text} "
                             f"then {self.formula(r).text}")
            case s.PstIff(l, r):
                return Piece(f"{self.formula(l).text} if and only if "
                             f"{self.formula(r).text}")
            case s.Quantified(kind, vars_, body, bound):
                return self._quantified(kind, vars_, body, bound)
        raise TypeError(f"not a surface formula: {formula!r}")

    def _rel_atom(self, symbol: str, args: list[Piece],
                  negated: bool) -> Piece:
        entry = self.entry(symbol)
        if entry is None:
            info = self.table.lookup(symbol)
            if info is None:
                # a plain variable used as a relation keeps its symbol
                seg = Piece(f"${symbol}$", symbol)
                return self._assemble_infix(args, seg, negated)
            raise MissingLexiconEntry((symbol,))
        mathable = all(a.math is not None for a in args)
        if mathable:
            key = "nsym" if negated else "symb"
            template = entry.get(key)
            if template is None and negated and entry.get("symb"):
                piece = _instantiate(symbol, entry.get("symb"), args, True)
                return Piece(f"it is not the case that {piece.text}")
            if template is not None:
                return _instantiate(symbol, template, args, symbolic=True)
        key = "negn" if negated else "reln"
        template = entry.get(key)
        if template is not None:
            return Piece(_instantiate(symbol, template, args, False).text)
        if negated and entry.get("reln"):
            inner = _instantiate(symbol, entry.get("reln"), args, False)
            return Piece(f"it is not the case that {inner.text}")
        raise MissingLexiconEntry((symbol,))

    def _assemble_infix(self, args: list[Piece], seg: Piece,
                        negated: bool) -> Piece:
        text = f"{args[0].text} {seg.text} {args[1].text}"
        math = None
        if all(a.math is not None for a in args) and seg.math is not None:
            math = f"{args[0].math} {seg.math} {args[1].math}"
        if negated:
            return Piece(f"it is not the case that {text}")
        return Piece(text, math)

    def _chain(self, terms, relations, negated: bool) -> Piece:
        if len(relations) == 1:
            return self._rel_atom(relations[0],
                                  [self.term(terms[0]), self.term(terms[1])],
                                  negated)
        parts = [self.term(t) for t in terms]
        segments = []
        for rel in relations:
            entry = self.entry(rel)
            seg = _op_segment(entry) if entry is not None else (f"${rel}$", rel)
            if seg is None:
                segments = None
                break
            segments.append(seg)
        if segments is not None and not negated:
            text_parts = [parts[0].text]
            math_parts = [parts[0].math]
            for seg, part in zip(segments, parts[1:]):
                text_parts.extend((seg[0], part.text))
                math_parts.extend((seg[1], part.math))
            text = " ".join(text_parts)
            if all(m is not None for m in math_parts):
                return Piece(text, " ".join(math_parts))
            return Piece(text)
        pieces = [self._rel_atom(rel, [parts[i], parts[i + 1]], negated)
                  for i, rel in enumerate(relations)]
        return Piece(_join_and([p.text for p in pieces]))

    def _conjunction(self, formula: s.PstFormula) -> Piece:
        conjuncts = _flatten_and(formula)
        pieces: list[str] = []
        i = 0
        while i < len(conjuncts):
            run = [conjuncts[i]]
            if isinstance(conjuncts[i], s.DefinedRelApp):
                symbol = conjuncts[i].symbol
                while (i + len(run) < len(conjuncts)
                       and isinstance(conjuncts[i + len(run)], s.DefinedRelApp)
                       and conjuncts[i + len(run)].symbol == symbol):
                    run.append(conjuncts[i + len(run)])
            merged = self._plural_merge(run) if len(run) > 1 else None
            if merged is not None:
                pieces.append(merged)
            else:
                pieces.extend(self.formula(c).text for c in run)
            i += len(run)
        return Piece(_join_and(pieces))

    def _plural_merge(self, run: list[s.DefinedRelApp]) -> Optional[str]:
        entry = self.entry(run[0].symbol)
        if entry is None:
            return None
        reln = entry.get("reln")
        if reln is None or " is a " not in reln:
            return None
        subject_template, noun = reln.split(" is a ", 1)
        plural = entry.get("plur")
        if not plural:
            plural = "are " + noun.rstrip() + "s"
        subjects = []
        for atom in run:
            args = [self.term(a) for a in atom.args]
            subjects.append(
                _instantiate(atom.symbol, subject_template, args, False).text)
        return f"{_join_and(subjects)} {plural}"

    def _quantified(self, kind, vars_, body, bound) -> Piece:
        names = Piece(", ".join(f"${v}$" for v in vars_),
                      ", ".join(vars_))
        subject = self._bound_piece(names, bound) if bound else names
        body_piece = self.formula(body)
        if kind == "forall":
            return Piece(f"for every {subject.text}, {body_piece.text}")
        verb = "there exists" if len(vars_) == 1 else "there exist"
        return Piece(f"{verb} {subject.text} such that {body_piece.text}")

    def _bound_piece(self, subject: Piece, bound: s.Bound) -> Piece:
        bp = self.term(bound.term)
        entry = self.entry(bound.relation)
        if entry is None:
            info = self.table.lookup(bound.relation)
            if info is None:
                seg = Piece(f"${bound.relation}$", bound.relation)
                return self._assemble_infix([subject, bp], seg, False)
            raise MissingLexiconEntry((bound.relation,))
        if subject.math is not None and bp.math is not None \
                and entry.get("symb") is not None:
            return _instantiate(bound.relation, entry.get("symb"),
                                [subject, bp], symbolic=True)
        prep = entry.get("prep")
        if prep is not None:
            return Piece(_instantiate(bound.relation, prep,
                                      [subject, bp], False).text)
        reln = entry.get("reln")
        if reln is not None:
            return Piece(_instantiate(bound.relation, reln,
                                      [subject, bp], False).text)
        raise MissingLexiconEntry((bound.relation,))


def _flatten_and(formula: s.PstFormula) -> list[s.PstFormula]:
    if isinstance(formula, s.PstAnd):
        return _flatten_and(formula.left) + _flatten_and(formula.right)
    return [formula]


def _join_and(parts: list[str]) -> str:
    if len(parts) <= 2:
        return " and ".join(parts)
    return ", ".join(parts[:-1]) + " and " + parts[-1]


def _capitalize(text: str) -> str:
    """Uppercase the first word of a sentence; a sentence opening with a
    math run is left alone (symbols have no uppercase form)."""
    i = 0
    in_math = False
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            i += 1
            while i < len(text) and text[i].isalpha():
                i += 1
            continue
        if ch == "$":
            in_math = not in_math
            i += 1
            continue
        if ch.isalpha():
            if in_math:
                return text
            return text[:i] + ch.upper() + text[i + 1:]
        i += 1
    return text


def _required_symbols(definition: s.PstDefinition,
                      table: SymbolTable) -> set[str]:
    needed: set[str] = set()

    def add_rel(rel: str) -> None:
        if rel in ("\\in", "=", "\\simeq") or table.lookup(rel) is not None:
            needed.add(rel)

    def visit(node) -> None:
        match node:
            case s.DefinedFunApp(symbol, args) | s.DefinedRelApp(symbol, args):
                needed.add(symbol)
                for a in args:
                    visit(a)
            case s.InfixFunApp(symbol, l, r):
                needed.add(symbol)
                visit(l)
                visit(r)
            case s.SetFunApp(fun, args):
                visit(fun)
                for a in args:
                    visit(a)
            case s.TupleTerm(elements) | s.FiniteSet(elements):
                for e in elements:
                    visit(e)
            case s.SetBuilder(term, condition, bound, _):
                visit(term)
                visit(condition)
                if bound:
                    add_rel(bound.relation)
                    visit(bound.term)
            case s.Lambda(_, body, bound):
                visit(body)
                if bound:
                    add_rel(bound.relation)
                    visit(bound.term)
            case s.IotaTerm(_, condition, _, bound):
                visit(condition)
                if bound:
                    add_rel(bound.relation)
                    visit(bound.term)
            case s.RelChain(terms, relations):
                for rel in relations:
                    add_rel(rel)
                for t in terms:
                    visit(t)
            case s.MultiMembership(terms, relation, bound):
                add_rel(relation)
                for t in terms:
                    visit(t)
                visit(bound)
            case s.PstEqual(l, r) | s.PstPartialEqual(l, r):
                add_rel("=")
                visit(l)
                visit(r)
            case s.DefinedTerm(t) | s.UndefinedTerm(t):
                visit(t)
            case s.PstNot(b):
                visit(b)
            case s.PstAnd(l, r) | s.PstOr(l, r) | s.PstImplies(l, r) | s.PstIff(l, r):
                visit(l)
                visit(r)
            case s.Quantified(_, _, body, bound):
                visit(body)
                if bound:
                    add_rel(bound.relation)
                    visit(bound.term)

    for clause in definition.clauses:
        if clause.guard is not None:
            visit(clause.guard)
        if clause.body is not None:
            visit(clause.body)
    return needed


def render_nl(definition: s.PstDefinition, lexicon: Lexicon,
              table: SymbolTable) -> str:
    """One-paragraph English rendering of a definition."""
    lex = lexicon.merged_over(DEFAULT_LEXICON)
    renderer = _Renderer(lex, table)

    head_entry = lex.get(definition.symbol)
    missing = {sym for sym in _required_symbols(definition, table)
               if lex.get(sym) is None}
    if head_entry is None:
        missing.add(definition.symbol)
    if missing:
        raise MissingLexiconEntry(tuple(sorted(missing)))

    params = [_var(p) for p in definition.params]
    sentences: list[str] = []
    for index, clause in enumerate(definition.clauses):
        head = _head_phrase(definition, head_entry, params, renderer)
        if clause.body is None:
            body_text = "undefined"
            link = "is"
        elif definition.kind.kind == RELATION:
            body_text = renderer.formula(clause.body).text
            link = "if and only if"
        else:
            body_text = renderer.term(clause.body).text
            link = "is"
        if clause.otherwise:
            sentence = f"Otherwise {head} {link} {body_text}."
        elif clause.guard is not None:
            guard_text = renderer.formula(clause.guard).text
            sentence = f"If {guard_text} then {head} {link} {body_text}."
        else:
            sentence = _capitalize(f"{head} {link} {body_text}.")
        sentences.append(sentence)
    return "Definition: " + " ".join(sentences)


def _head_phrase(definition: s.PstDefinition, entry, params: list[Piece],
                 renderer: _Renderer) -> str:
    if definition.kind.kind == RELATION:
        reln = entry.get("reln")
        if reln is not None:
            return _instantiate(definition.symbol, reln, params, False).text
        symb = entry.get("symb")
        if symb is not None:
            return _instantiate(definition.symbol, symb, params, False).text
        raise MissingLexiconEntry((definition.symbol,))
    word = entry.get("word")
    if word is not None:
        phrase = _instantiate(definition.symbol, word, params, False).text
        return f"\\emph{{{phrase}}}"
    head = renderer._symbol_app(definition.symbol, params)
    return head.text
