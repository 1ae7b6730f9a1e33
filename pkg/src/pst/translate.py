"""Desugaring of surface expressions and definitions into the core language.

Each piece of sugar is eliminated by a fixed scheme:

* set application ``f(x)`` becomes the unique value paired with the
  argument inside ``f``;
* tuples become right-nested applications of the pairing function;
* finite set literals and set builders become comprehension descriptions
  ``(iota z)(forall y)(y in z <-> ...)``;
* lambda terms become descriptions of their graphs;
* ``!`` descriptions map onto the core description binder, spelling out
  tuple patterns with existential witnesses;
* relation chains, multi-membership and bounded quantifiers unfold into
  conjunctions and implications;
* a plain variable in relation position reads as a set of pairs, so
  ``x R y`` becomes membership of the encoded pair in ``R``.

Fresh variables are drawn per definition: description values from the x
series, comprehension member variables from the y series (as is the value
variable of a case axiom), comprehended sets from the z series.  Names
appearing in the source are never reused.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from . import dzfc as d
from . import syntax as s
from .dzfc import FreshNamer
from .errors import FixedVarNotFree, OverlapWarning, PstError, UnregisteredSymbol
from .symbols import FUNCTION, RELATION, SymbolTable

__all__ = ["TranslationEnv", "translate_term", "translate_formula",
           "translate_definition", "TranslationError"]

PRIMITIVE_RELATIONS = ("\\in", "=", "\\simeq")


class TranslationError(PstError):
    pass


@dataclass
class TranslationEnv:
    table: SymbolTable
    fresh: FreshNamer

    @classmethod
    def for_definition(cls, definition: s.PstDefinition,
                       table: SymbolTable) -> "TranslationEnv":
        return cls(table, FreshNamer(s.definition_all_names(definition)))

    @classmethod
    def for_expression(cls, expr: s.PstExpr, table: SymbolTable) -> "TranslationEnv":
        names = s.pst_free_vars(expr) | _bound_names(expr)
        return cls(table, FreshNamer(names))


def _bound_names(expr: s.PstExpr) -> frozenset[str]:
    dummy = s.PstDefinition("X.0", s.DefKind(RELATION, 0), "DUMMYSYM", (),
                            (s.Clause(None, _as_formula(expr)),))
    return s.definition_all_names(dummy)


def _as_formula(expr: s.PstExpr) -> s.PstFormula:
    if isinstance(expr, s.TERM_TYPES):
        return s.DefinedTerm(expr)
    return expr


# -------------------------------------------------------------------- terms


def translate_term(term: s.PstTerm, env: TranslationEnv) -> d.Term:
    match term:
        case s.Variable(name):
            return d.Var(name)
        case s.DefinedFunApp(symbol, args):
            info = env.table.lookup(symbol)
            if info is None or info.kind != FUNCTION:
                raise UnregisteredSymbol(symbol)
            if len(args) != info.arity:
                raise TranslationError(
                    f"{symbol} expects {info.arity} arguments, got {len(args)}")
            return d.FunApp(symbol, tuple(translate_term(a, env) for a in args))
        case s.InfixFunApp(symbol, left, right):
            info = env.table.lookup(symbol)
            if info is None or info.kind != FUNCTION:
                raise UnregisteredSymbol(symbol)
            return d.FunApp(symbol, (translate_term(left, env),
                                     translate_term(right, env)))
        case s.SetFunApp(fun, args):
            fun_t = translate_term(fun, env)
            arg_ts = tuple(translate_term(a, env) for a in args)
            argpart = arg_ts[0] if len(arg_ts) == 1 else d.pair_nest(arg_ts)
            value = env.fresh.value_var()
            return d.Iota(value, d.Membership(d.pair(argpart, d.Var(value)),
                                              fun_t))
        case s.TupleTerm(elements):
            return d.pair_nest(tuple(translate_term(e, env) for e in elements))
        case s.FiniteSet(elements):
            return _translate_finite_set(term, env)
        case s.SetBuilder():
            return _translate_set_builder(term, env)
        case s.Lambda():
            return _translate_lambda(term, env)
        case s.IotaTerm():
            return _translate_iota(term, env)
    raise TypeError(f"not a surface term: {term!r}")


def _translate_finite_set(term: s.FiniteSet, env: TranslationEnv) -> d.Term:
    z = env.fresh.set_var()
    y = env.fresh.member_var()
    member = d.Membership(d.Var(y), d.Var(z))
    if not term.elements:
        return d.Iota(z, d.Forall(y, d.Not(member)))
    options = [d.Equal(d.Var(y), translate_term(e, env)) for e in term.elements]
    return d.Iota(z, d.Forall(y, d.Iff(member, d.disjoin(options))))


def _translate_set_builder(sb: s.SetBuilder, env: TranslationEnv) -> d.Term:
    occurring = s.pst_free_vars(sb.term) | s.pst_free_vars(sb.condition)
    if sb.bound is not None:
        occurring |= s.pst_free_vars(sb.bound.term)
    for name in sb.fixed:
        if name not in occurring:
            raise FixedVarNotFree(name)
    binders = s.set_builder_binders(sb)
    z = env.fresh.set_var()
    y = env.fresh.member_var()
    member = d.Membership(d.Var(y), d.Var(z))
    if isinstance(sb.term, s.Variable) and binders == (sb.term.name,):
        # the comprehension variable itself is the member: substitute directly
        v = sb.term.name
        parts = []
        if sb.bound is not None:
            parts.append(_bound_atom(sb.bound, d.Var(v), env))
        parts.append(translate_formula(sb.condition, env))
        body = d.substitute(d.conjoin(parts), {v: d.Var(y)})
        return d.Iota(z, d.Forall(y, d.Iff(member, body)))
    value = translate_term(sb.term, env)
    parts = [d.Equal(d.Var(y), value)]
    if sb.bound is not None:
        parts.append(_bound_atom(sb.bound, d.Var(y), env))
    parts.append(translate_formula(sb.condition, env))
    body = d.conjoin(parts)
    for v in reversed(binders):
        body = d.Exists(v, body)
    return d.Iota(z, d.Forall(y, d.Iff(member, body)))


def _translate_lambda(lam: s.Lambda, env: TranslationEnv) -> d.Term:
    z = env.fresh.set_var()
    y = env.fresh.member_var()
    x = env.fresh.value_var()
    parts = [d.Equal(d.Var(y), d.pair(d.Var(lam.var), d.Var(x))),
             d.Equal(d.Var(x), translate_term(lam.body, env))]
    if lam.bound is not None:
        parts.append(_bound_atom(lam.bound, d.Var(lam.var), env))
    graph = d.Exists(lam.var, d.Exists(x, d.conjoin(parts)))
    return d.Iota(z, d.Forall(y, d.Iff(d.Membership(d.Var(y), d.Var(z)),
                                       graph)))


def _translate_iota(it: s.IotaTerm, env: TranslationEnv) -> d.Term:
    if it.tuple_pattern:
        x = env.fresh.value_var()
        parts = [d.Equal(d.Var(x),
                         d.pair_nest(tuple(d.Var(v) for v in it.vars)))]
        if it.bound is not None:
            parts.append(_bound_atom(it.bound, d.Var(x), env))
        parts.append(translate_formula(it.condition, env))
        body: d.Formula = d.conjoin(parts)
        for v in reversed(it.vars):
            body = d.Exists(v, body)
        return d.Iota(x, body)
    (v,) = it.vars
    parts = []
    if it.bound is not None:
        parts.append(_bound_atom(it.bound, d.Var(v), env))
    parts.append(translate_formula(it.condition, env))
    return d.Iota(v, d.conjoin(parts))


# ----------------------------------------------------------------- formulas


def translate_formula(formula: s.PstFormula, env: TranslationEnv) -> d.Formula:
    match formula:
        case s.DefinedRelApp(symbol, args):
            info = env.table.lookup(symbol)
            if info is None or info.kind != RELATION:
                raise UnregisteredSymbol(symbol)
            if len(args) != info.arity:
                raise TranslationError(
                    f"{symbol} expects {info.arity} arguments, got {len(args)}")
            return d.RelApp(symbol, tuple(translate_term(a, env) for a in args))
        case s.RelChain(terms, relations):
            atoms = []
            for i, rel in enumerate(relations):
                atoms.append(_rel_atom(rel,
                                       translate_term(terms[i], env),
                                       translate_term(terms[i + 1], env),
                                       env))
            return d.conjoin(atoms)
        case s.MultiMembership(terms, relation, bound):
            atoms = [_rel_atom(relation, translate_term(t, env),
                               translate_term(bound, env), env)
                     for t in terms]
            return d.conjoin(atoms)
        case s.PstEqual(l, r):
            return d.Equal(translate_term(l, env), translate_term(r, env))
        case s.PstPartialEqual(l, r):
            return d.PartialEqual(translate_term(l, env),
                                  translate_term(r, env))
        case s.DefinedTerm(t):
            return d.IsDefined(translate_term(t, env))
        case s.UndefinedTerm(t):
            return d.Not(d.IsDefined(translate_term(t, env)))
        case s.PstNot(b):
            return d.Not(translate_formula(b, env))
        case s.PstAnd(l, r):
            return d.And(translate_formula(l, env), translate_formula(r, env))
        case s.PstOr(l, r):
            return d.Or(translate_formula(l, env), translate_formula(r, env))
        case s.PstImplies(l, r):
            return d.Implies(translate_formula(l, env),
                             translate_formula(r, env))
        case s.PstIff(l, r):
            return d.Iff(translate_formula(l, env), translate_formula(r, env))
        case s.Quantified(kind, vars_, body, bound):
            return _translate_quantified(kind, vars_, body, bound, env)
    raise TypeError(f"not a surface formula: {formula!r}")


def _translate_quantified(kind: str, vars_: tuple[str, ...],
                          body: s.PstFormula, bound, env) -> d.Formula:
    bound_atoms = []
    if bound is not None:
        bound_atoms = [_bound_atom(bound, d.Var(v), env) for v in vars_]
    inner = translate_formula(body, env)
    if kind == "exists":
        core: d.Formula = d.conjoin(bound_atoms + [inner])
        ctor = d.Exists
    else:
        core = d.Implies(d.conjoin(bound_atoms), inner) if bound_atoms else inner
        ctor = d.Forall
    for v in reversed(vars_):
        core = ctor(v, core)
    return core


def _rel_atom(rel: str, left: d.Term, right: d.Term,
              env: TranslationEnv) -> d.Formula:
    if rel == "\\in":
        return d.Membership(left, right)
    if rel == "=":
        return d.Equal(left, right)
    if rel == "\\simeq":
        return d.PartialEqual(left, right)
    info = env.table.lookup(rel)
    if info is not None:
        if info.kind != RELATION:
            raise UnregisteredSymbol(rel)
        return d.RelApp(rel, (left, right))
    # a plain variable in relation position: a set of encoded pairs
    return d.Membership(d.pair(left, right), d.Var(rel))


def _bound_atom(bound: s.Bound, subject: d.Term, env: TranslationEnv) -> d.Formula:
    return _rel_atom(bound.relation, subject,
                     translate_term(bound.term, env), env)


# -------------------------------------------------------------- definitions


def translate_definition(definition: s.PstDefinition,
                         table: SymbolTable) -> d.DefiningAxiom:
    """Build the defining axiom for one parsed definition.

    Fresh-name state is reset per definition, so repeated runs produce
    structurally identical output.
    """
    env = TranslationEnv.for_definition(definition, table)
    if definition.kind.kind == RELATION:
        body = _relation_body(definition, env)
    else:
        body = _function_body(definition, env)
    params = definition.params
    extra = d.free_vars(body) - set(params)
    if extra:
        raise TranslationError(
            f"{definition.label}: free variables {sorted(extra)} are not "
            "parameters")
    _warn_on_overlap(definition, env)
    return d.DefiningAxiom(definition.symbol, definition.kind.kind, params,
                           body)


def _relation_body(definition: s.PstDefinition, env: TranslationEnv) -> d.Formula:
    clauses = definition.clauses
    if len(clauses) == 1 and clauses[0].guard is None and not clauses[0].otherwise:
        return translate_formula(clauses[0].body, env)
    guards: list[d.Formula] = []
    disjuncts: list[d.Formula] = []
    for clause in clauses:
        if clause.body is None:
            raise TranslationError(
                f"{definition.label}: relations cannot be undefined")
        payload = translate_formula(clause.body, env)
        if clause.guard is not None:
            guard = translate_formula(clause.guard, env)
            guards.append(guard)
            disjuncts.append(d.And(guard, payload))
        elif clause.otherwise and guards:
            disjuncts.append(d.And(d.Not(d.disjoin(guards)), payload))
        else:
            disjuncts.append(payload)
    return d.disjoin(disjuncts)


def _function_body(definition: s.PstDefinition, env: TranslationEnv) -> d.Term:
    clauses = definition.clauses
    value_clauses = [c for c in clauses if c.body is not None]
    # clauses that merely declare undefinedness contribute nothing: the
    # description below is already undefined outside every guard
    if (len(value_clauses) == 1 and value_clauses[0].guard is None
            and not value_clauses[0].otherwise):
        return translate_term(value_clauses[0].body, env)
    if not value_clauses:
        raise TranslationError(
            f"{definition.label}: function with no value clause")
    result = env.fresh.result_var()
    guards: list[d.Formula] = []
    disjuncts: list[d.Formula] = []
    for clause in value_clauses:
        payload = d.PartialEqual(d.Var(result),
                                 translate_term(clause.body, env))
        if clause.guard is not None:
            guard = translate_formula(clause.guard, env)
            guards.append(guard)
            disjuncts.append(d.And(guard, payload))
        elif clause.otherwise and guards:
            disjuncts.append(d.And(d.Not(d.disjoin(guards)), payload))
        else:
            disjuncts.append(payload)
    return d.Iota(result, d.disjoin(disjuncts))


def _warn_on_overlap(definition: s.PstDefinition, env: TranslationEnv) -> None:
    guarded = [c.guard for c in definition.clauses if c.guard is not None]
    if len(guarded) < 2:
        return
    fresh_env = TranslationEnv(env.table,
                               FreshNamer(s.definition_all_names(definition)))
    translated = [translate_formula(g, fresh_env) for g in guarded]
    for i in range(len(translated)):
        for j in range(i + 1, len(translated)):
            a, b = translated[i], translated[j]
            if a == d.Not(b) or b == d.Not(a):
                continue
            warnings.warn(
                f"{definition.label}: guards may overlap; clauses are "
                "applied as written", OverlapWarning)
            return
