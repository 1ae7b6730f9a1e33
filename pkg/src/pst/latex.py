"""Rendering of surface and core expressions to source text and LaTeX.

Two output forms exist.  ``render_pst`` emits canonical surface source,
suitable for re-parsing; it is the basis of the round-trip guarantees.
``render_latex`` emits the typeset house style: declared symbols wrapped in
``\\mathop{\\mathtt{...}}``, tuples as ``\\seq{...}``, set braces as
``\\lbrace ... \\rbrace``, with math material inside dollar runs.  The LaTeX
form can be fed back through :func:`latex_to_pst` and re-parsed, which is
how the round-trip over the typeset form is checked.

Core-language output differs slightly from surface output: membership and
equality print bare, binders group into multi-variable prefixes, and atoms
led by a description term are parenthesized for readability.
"""

from __future__ import annotations

from typing import Optional

from . import dzfc as d
from . import syntax as s
from .symbols import SymbolTable

__all__ = ["render_pst", "render_latex", "latex_to_pst"]

# formula connective tightness levels
_IFF, _IMPLIES, _OR, _AND, _NOT = range(5)


# ============================================================ surface source


def render_pst(node, table: Optional[SymbolTable] = None) -> str:
    """Canonical source text for a definition or surface expression."""
    if isinstance(node, s.PstDefinition):
        return _def_src(node)
    if isinstance(node, s.TERM_TYPES):
        return _term_src(node, table)
    return _formula_src(node, _IFF, table)


def _def_src(definition: s.PstDefinition) -> str:
    kind = definition.kind
    if kind.infix:
        kind_text = f"Infix {kind.kind}"
    else:
        kind_text = f"{kind.arity}-ary {kind.kind}"
    parts = [f"DEFINITION {definition.label}: {kind_text} {definition.symbol}."]
    for clause in definition.clauses:
        parts.append(_clause_src(definition, clause))
    if kind.precedence is not None:
        parts.append(f"Precedence {kind.precedence}.")
    return " ".join(parts)


def _head_src(definition: s.PstDefinition) -> str:
    kind = definition.kind
    params = definition.params
    if kind.infix:
        return f"{params[0]} {definition.symbol} {params[1]}"
    if kind.arity == 0:
        return definition.symbol
    joined = ",".join(params)
    brackets = "[]" if kind.kind == "relation" else "()"
    return f"{definition.symbol}{brackets[0]}{joined}{brackets[1]}"


def _clause_src(definition: s.PstDefinition, clause: s.Clause) -> str:
    head = _head_src(definition)
    if clause.body is None:
        body = f"{head} \\uparrow"
    elif definition.kind.kind == "function":
        body = f"{head} \\simeq {_term_src(clause.body, None)}"
    else:
        body = f"{head} \\iff {_formula_src(clause.body, _IFF, None)}"
    if clause.otherwise:
        return f"Otherwise {body}."
    if clause.guard is not None:
        return f"If {_formula_src(clause.guard, _IFF, None)} then {body}."
    return f"{body}."


def _term_src(term: s.PstTerm, table) -> str:
    match term:
        case s.Variable(name):
            return name
        case s.DefinedFunApp(symbol, args):
            if not args:
                return symbol
            return f"{symbol}({','.join(_term_src(a, table) for a in args)})"
        case s.InfixFunApp(symbol, left, right):
            return (f"{_infix_operand(left, symbol, table, tight=False)} {symbol} "
                    f"{_infix_operand(right, symbol, table, tight=True)}")
        case s.SetFunApp(fun, args):
            head = _term_src(fun, table)
            if isinstance(fun, s.InfixFunApp):
                head = f"({head})"
            return f"{head}({','.join(_term_src(a, table) for a in args)})"
        case s.TupleTerm(elements):
            return f"<{','.join(_term_src(e, table) for e in elements)}>"
        case s.FiniteSet(elements):
            return "{" + ",".join(_term_src(e, table) for e in elements) + "}"
        case s.SetBuilder(body, condition, bound, fixed):
            inner = _term_src(body, table)
            if bound is not None:
                inner += f" {bound.relation} {_term_src(bound.term, table)}"
            tail = "".join(f", {v} fixed" for v in fixed)
            return f"{{{inner} : {_formula_src(condition, _IFF, table)}{tail}}}"
        case s.Lambda(var, body, bound):
            binder = var
            if bound is not None:
                binder += f" {bound.relation} {_term_src(bound.term, table)}"
            return f"(\\lambda {binder})({_term_src(body, table)})"
        case s.IotaTerm(vars_, condition, tuple_pattern, bound):
            binder = f"<{','.join(vars_)}>" if tuple_pattern else vars_[0]
            if bound is not None:
                binder += f" {bound.relation} {_term_src(bound.term, table)}"
            return f"(!{binder})({_formula_src(condition, _IFF, table)})"
    raise TypeError(f"not a surface term: {term!r}")


def _infix_operand(term: s.PstTerm, op: str, table, tight: bool) -> str:
    text = _term_src(term, table)
    if not isinstance(term, s.InfixFunApp):
        return text
    if table is not None:
        outer = table.lookup(op)
        inner = table.lookup(term.symbol)
        if outer and inner and outer.precedence is not None \
                and inner.precedence is not None \
                and (inner.precedence > outer.precedence
                     or (not tight and inner.precedence == outer.precedence)):
            return text
    return f"({text})"


def _formula_src(formula: s.PstFormula, level: int, table) -> str:
    def wrap(text: str, mine: int) -> str:
        return f"({text})" if mine < level else text

    match formula:
        case s.DefinedRelApp(symbol, args):
            if not args:
                return symbol
            return f"{symbol}[{','.join(_term_src(a, table) for a in args)}]"
        case s.RelChain(terms, relations):
            parts = [_term_src(terms[0], table)]
            for rel, term in zip(relations, terms[1:]):
                parts.append(rel)
                parts.append(_term_src(term, table))
            return " ".join(parts)
        case s.MultiMembership(terms, relation, bound):
            heads = ",".join(_term_src(t, table) for t in terms)
            return f"{heads} {relation} {_term_src(bound, table)}"
        case s.PstEqual(l, r):
            return f"{_term_src(l, table)} = {_term_src(r, table)}"
        case s.PstPartialEqual(l, r):
            return f"{_term_src(l, table)} \\simeq {_term_src(r, table)}"
        case s.DefinedTerm(t):
            return f"{_term_src(t, table)} \\downarrow"
        case s.UndefinedTerm(t):
            return f"{_term_src(t, table)} \\uparrow"
        case s.PstNot(b):
            return wrap(f"\\neg {_formula_src(b, _NOT, table)}", _NOT)
        case s.PstAnd(l, r):
            return wrap(f"{_formula_src(l, _AND, table)} \\wedge "
                        f"{_formula_src(r, _NOT, table)}", _AND)
        case s.PstOr(l, r):
            return wrap(f"{_formula_src(l, _OR, table)} \\vee "
                        f"{_formula_src(r, _AND, table)}", _OR)
        case s.PstImplies(l, r):
            return wrap(f"{_formula_src(l, _OR, table)} \\rightarrow "
                        f"{_formula_src(r, _IMPLIES, table)}", _IMPLIES)
        case s.PstIff(l, r):
            return wrap(f"{_formula_src(l, _IMPLIES, table)} \\iff "
                        f"{_formula_src(r, _IMPLIES, table)}", _IFF)
        case s.Quantified(kind, vars_, body, bound):
            keyword = "\\forall" if kind == "forall" else "\\exists"
            binder = ",".join(vars_)
            if bound is not None:
                binder += f" {bound.relation} {_term_src(bound.term, table)}"
            if isinstance(body, s.Quantified):
                tail = _formula_src(body, _IFF, table)
            else:
                tail = f"({_formula_src(body, _IFF, table)})"
            return f"({keyword} {binder}){tail}"
    raise TypeError(f"not a surface formula: {formula!r}")


# ==================================================================== LaTeX


def render_latex(node, table: Optional[SymbolTable] = None) -> str:
    """House-style LaTeX for definitions, axioms, and expressions."""
    if isinstance(node, s.PstDefinition):
        return _latex_definition(node, table)
    if isinstance(node, d.DefiningAxiom):
        return _latex_axiom(node)
    if isinstance(node, s.TERM_TYPES):
        return _lx_term(node, table)
    if isinstance(node, (d.Var, d.FunApp, d.Iota)):
        return _dz_term(node)
    if isinstance(node, s.FORMULA_TYPES):
        return _lx_formula(node, _IFF, table)
    return _dz_formula(node, _IFF)


def _mathop(symbol: str) -> str:
    return f"\\mathop{{\\mathtt{{{symbol}}}}}"


def _is_declared(symbol: str, table: Optional[SymbolTable]) -> bool:
    return table is not None and table.lookup(symbol) is not None


# ------------------------------------------------------------ surface LaTeX


def _latex_definition(definition: s.PstDefinition,
                      table: Optional[SymbolTable]) -> str:
    kind = definition.kind
    kind_text = f"Infix {kind.kind}" if kind.infix else f"{kind.arity}-ary {kind.kind}"
    parts = [f"DEFINITION {definition.label}: {kind_text} "
             f"${_mathop(definition.symbol)}$."]
    for clause in definition.clauses:
        parts.append(_latex_clause(definition, clause, table))
    if kind.precedence is not None:
        parts.append(f"Precedence {kind.precedence}.")
    return " ".join(parts)


def _latex_head(definition: s.PstDefinition) -> str:
    kind = definition.kind
    params = definition.params
    if kind.infix:
        return f"{params[0]} {_mathop(definition.symbol)} {params[1]}"
    if kind.arity == 0:
        return _mathop(definition.symbol)
    brackets = "[]" if kind.kind == "relation" else "()"
    return (f"{_mathop(definition.symbol)}{brackets[0]}"
            f"{','.join(params)}{brackets[1]}")


def _latex_clause(definition: s.PstDefinition, clause: s.Clause,
                  table) -> str:
    head = _latex_head(definition)
    if clause.body is None:
        body = f"{head}\\mathord{{\\uparrow}}"
    elif definition.kind.kind == "function":
        body = f"{head} \\simeq {_lx_term(clause.body, table)}"
    else:
        body = f"{head} \\leftrightarrow {_lx_formula(clause.body, _IFF, table)}"
    if clause.otherwise:
        return f"Otherwise ${body}$."
    if clause.guard is not None:
        return (f"If ${_lx_formula(clause.guard, _IFF, table)}$ "
                f"then ${body}$.")
    return f"${body}$."


def _lx_symbol(symbol: str, table, infix: bool = False) -> str:
    # the set-difference backslash is the one symbol the house style leaves
    # bare in infix position
    if infix and symbol == "\\backslash":
        return symbol
    return _mathop(symbol)


def _lx_rel(rel: str, table) -> str:
    if rel == "=":
        return "="
    if rel == "\\simeq":
        return "\\simeq"
    if rel == "\\in" or _is_declared(rel, table):
        return _lx_symbol(rel, table, infix=True)
    return f"\\mbox{{ ${rel}$ }}"  # a plain variable used as a relation


def _lx_term(term: s.PstTerm, table) -> str:
    match term:
        case s.Variable(name):
            return name
        case s.DefinedFunApp(symbol, args):
            if not args:
                return _mathop(symbol)
            return f"{_mathop(symbol)}({','.join(_lx_term(a, table) for a in args)})"
        case s.InfixFunApp(symbol, left, right):
            lsrc = _lx_infix_operand(left, symbol, table, tight=False)
            rsrc = _lx_infix_operand(right, symbol, table, tight=True)
            return f"{lsrc} {_lx_symbol(symbol, table, infix=True)} {rsrc}"
        case s.SetFunApp(fun, args):
            head = _lx_term(fun, table)
            if isinstance(fun, s.InfixFunApp):
                head = f"({head})"
            return f"{head}({','.join(_lx_term(a, table) for a in args)})"
        case s.TupleTerm(elements):
            return f"\\seq{{{','.join(_lx_term(e, table) for e in elements)}}}"
        case s.FiniteSet(elements):
            inner = ",".join(_lx_term(e, table) for e in elements)
            return f"\\lbrace {inner} \\rbrace" if inner else "\\lbrace \\rbrace"
        case s.SetBuilder(body, condition, bound, fixed):
            inner = _lx_term(body, table)
            if bound is not None:
                inner += f" {_lx_rel(bound.relation, table)} {_lx_term(bound.term, table)}"
            tail = "".join(f", \\mbox{{ ${v}$ fixed}}" for v in fixed)
            return (f"\\lbrace {inner} : "
                    f"{_lx_formula(condition, _IFF, table)}{tail} \\rbrace")
        case s.Lambda(var, body, bound):
            binder = var
            if bound is not None:
                binder += f" {_lx_rel(bound.relation, table)} {_lx_term(bound.term, table)}"
            return f"(\\lambda {binder})({_lx_term(body, table)})"
        case s.IotaTerm(vars_, condition, tuple_pattern, bound):
            binder = f"\\seq{{{','.join(vars_)}}}" if tuple_pattern else vars_[0]
            if bound is not None:
                binder += f" {_lx_rel(bound.relation, table)} {_lx_term(bound.term, table)}"
            return f"(! {binder})({_lx_formula(condition, _IFF, table)})"
    raise TypeError(f"not a surface term: {term!r}")


def _lx_infix_operand(term: s.PstTerm, op: str, table, tight: bool) -> str:
    text = _lx_term(term, table)
    if isinstance(term, s.InfixFunApp):
        if table is not None:
            outer = table.lookup(op)
            inner = table.lookup(term.symbol)
            if outer and inner and outer.precedence is not None \
                    and inner.precedence is not None \
                    and (inner.precedence > outer.precedence
                         or (not tight and inner.precedence == outer.precedence)):
                return text
        return f"({text})"
    return text


def _lx_formula(formula: s.PstFormula, level: int, table) -> str:
    def wrap(text: str, mine: int) -> str:
        return f"({text})" if mine < level else text

    match formula:
        case s.DefinedRelApp(symbol, args):
            if not args:
                return _mathop(symbol)
            return f"{_mathop(symbol)}[{','.join(_lx_term(a, table) for a in args)}]"
        case s.RelChain(terms, relations):
            parts = [_lx_term(terms[0], table)]
            for rel, term in zip(relations, terms[1:]):
                parts.append(_lx_rel(rel, table))
                parts.append(_lx_term(term, table))
            return " ".join(parts)
        case s.MultiMembership(terms, relation, bound):
            heads = ",".join(_lx_term(t, table) for t in terms)
            return f"{heads} {_lx_rel(relation, table)} {_lx_term(bound, table)}"
        case s.PstEqual(l, r):
            return f"{_lx_term(l, table)} = {_lx_term(r, table)}"
        case s.PstPartialEqual(l, r):
            return f"{_lx_term(l, table)} \\simeq {_lx_term(r, table)}"
        case s.DefinedTerm(t):
            return f"{_lx_term(t, table)}\\mathord{{\\downarrow}}"
        case s.UndefinedTerm(t):
            return f"{_lx_term(t, table)}\\mathord{{\\uparrow}}"
        case s.PstNot(b):
            return wrap(f"\\neg {_lx_formula(b, _NOT, table)}", _NOT)
        case s.PstAnd(l, r):
            return wrap(f"{_lx_formula(l, _AND, table)} \\wedge "
                        f"{_lx_formula(r, _NOT, table)}", _AND)
        case s.PstOr(l, r):
            return wrap(f"{_lx_formula(l, _OR, table)} \\vee "
                        f"{_lx_formula(r, _AND, table)}", _OR)
        case s.PstImplies(l, r):
            return wrap(f"{_lx_formula(l, _OR, table)} \\rightarrow "
                        f"{_lx_formula(r, _IMPLIES, table)}", _IMPLIES)
        case s.PstIff(l, r):
            return wrap(f"{_lx_formula(l, _IMPLIES, table)} \\leftrightarrow "
                        f"{_lx_formula(r, _IMPLIES, table)}", _IFF)
        case s.Quantified(kind, vars_, body, bound):
            keyword = "\\forall" if kind == "forall" else "\\exists"
            binder = ",".join(vars_)
            if bound is not None:
                binder += f" {_lx_rel(bound.relation, table)} {_lx_term(bound.term, table)}"
            if isinstance(body, s.Quantified):
                tail = _lx_formula(body, _IFF, table)
            else:
                tail = f"({_lx_formula(body, _IFF, table)})"
            return f"({keyword} {binder}){tail}"
    raise TypeError(f"not a surface formula: {formula!r}")


# --------------------------------------------------------------- core LaTeX


def _latex_axiom(axiom: d.DefiningAxiom) -> str:
    params = ",".join(axiom.params)
    if axiom.kind == "function":
        head = _mathop(axiom.symbol) + (f"({params})" if params else "")
        return f"{head} \\simeq {_dz_term(axiom.body)}"
    head = _mathop(axiom.symbol) + (f"[{params}]" if params else "")
    return f"{head} \\leftrightarrow {_dz_formula(axiom.body, _IFF)}"


def _dz_term(term: d.Term) -> str:
    match term:
        case d.Var(name):
            return name
        case d.FunApp(symbol, args):
            if not args:
                return _mathop(symbol)
            return f"{_mathop(symbol)}({','.join(_dz_term(a) for a in args)})"
        case d.Iota(var, body):
            return f"(\\iota {var}){_dz_body(body)}"
    raise TypeError(f"not a core term: {term!r}")


def _dz_body(formula: d.Formula) -> str:
    """Binder body: quantifier prefixes concatenate without extra parens."""
    if isinstance(formula, (d.Forall, d.Exists)):
        return _dz_formula(formula, _IFF)
    return f"({_dz_formula(formula, _IFF)})"


def _dz_atom_parens(formula: d.Formula, text: str) -> str:
    # an atom led by a description reads badly unparenthesized
    left = getattr(formula, "left", None)
    if isinstance(left, d.Iota):
        return f"({text})"
    return text


def _dz_formula(formula: d.Formula, level: int) -> str:
    def wrap(text: str, mine: int) -> str:
        return f"({text})" if mine < level else text

    match formula:
        case d.Membership(l, r):
            return _dz_atom_parens(formula, f"{_dz_term(l)} \\in {_dz_term(r)}")
        case d.Equal(l, r):
            return _dz_atom_parens(formula, f"{_dz_term(l)} = {_dz_term(r)}")
        case d.PartialEqual(l, r):
            return _dz_atom_parens(formula,
                                   f"{_dz_term(l)} \\simeq {_dz_term(r)}")
        case d.IsDefined(t):
            return f"{_dz_term(t)}\\mathord{{\\downarrow}}"
        case d.RelApp(symbol, args):
            if not args:
                return _mathop(symbol)
            return f"{_mathop(symbol)}[{','.join(_dz_term(a) for a in args)}]"
        case d.Not(b):
            return wrap(f"\\neg {_dz_formula(b, _NOT)}", _NOT)
        case d.And(l, r):
            return wrap(f"{_dz_formula(l, _AND)} \\wedge "
                        f"{_dz_formula(r, _NOT)}", _AND)
        case d.Or(l, r):
            return wrap(f"{_dz_formula(l, _OR)} \\vee "
                        f"{_dz_formula(r, _AND)}", _OR)
        case d.Implies(l, r):
            return wrap(f"{_dz_formula(l, _OR)} \\rightarrow "
                        f"{_dz_formula(r, _IMPLIES)}", _IMPLIES)
        case d.Iff(l, r):
            return wrap(f"{_dz_formula(l, _IMPLIES)} \\leftrightarrow "
                        f"{_dz_formula(r, _IMPLIES)}", _IFF)
        case d.Forall(_, _) | d.Exists(_, _):
            keyword = "\\forall" if isinstance(formula, d.Forall) else "\\exists"
            names = [formula.var]
            body = formula.body
            while isinstance(body, type(formula)):
                names.append(body.var)
                body = body.body
            return f"({keyword} {','.join(names)}){_dz_body(body)}"
    raise TypeError(f"not a core formula: {formula!r}")


# ------------------------------------------------------------- LaTeX intake


_GROUP_MACROS = ("\\mathop", "\\mathtt", "\\mathord", "\\mbox", "\\seq")
_PLAIN_REWRITES = (("\\leftrightarrow", "\\iff"),
                   ("\\lbrace", "{"), ("\\rbrace", "}"))


def latex_to_pst(text: str) -> str:
    """Strip house-style typesetting so the LaTeX form parses as source."""
    out = _unwrap_groups(text)
    out = out.replace("$", " ")
    for old, new in _PLAIN_REWRITES:
        out = out.replace(old, f" {new} ")
    return out


def _unwrap_groups(text: str) -> str:
    result = []
    i = 0
    n = len(text)
    while i < n:
        matched = None
        for macro in _GROUP_MACROS:
            if text.startswith(macro + "{", i):
                matched = macro
                break
        if matched is None:
            result.append(text[i])
            i += 1
            continue
        start = i + len(matched) + 1
        depth = 1
        j = start
        while j < n and depth:
            if text[j] == "{":
                depth += 1
            elif text[j] == "}":
                depth -= 1
            j += 1
        inner = _unwrap_groups(text[start:j - 1])
        if matched == "\\seq":
            result.append(f"<{inner}>")
        else:
            result.append(inner)
        i = j
    return "".join(result)
