"""Abstract syntax for the sugared surface language.

The surface language layers convenience syntax over the core: tuples,
finite-set literals, set-builder notation with fixed-variable annotations,
lambda abstraction, definite descriptions written with ``!``, infix
relation chains, membership of several terms at once, and quantifiers
bounded by any infix relation.  Definitions are case lists of guarded
clauses with an optional Otherwise clause.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

# ---------------------------------------------------------------------- terms


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class DefinedFunApp:
    """Application of a declared function symbol; bare names are 0-ary."""

    symbol: str
    args: tuple["PstTerm", ...] = ()


@dataclass(frozen=True)
class InfixFunApp:
    symbol: str
    left: "PstTerm"
    right: "PstTerm"


@dataclass(frozen=True)
class SetFunApp:
    """Any term used as a function: f(x) is the unique u with <x,u> in f."""

    fun: "PstTerm"
    args: tuple["PstTerm", ...]


@dataclass(frozen=True)
class TupleTerm:
    elements: tuple["PstTerm", ...]

    def __post_init__(self):
        if len(self.elements) < 2:
            raise ValueError("tuples have at least two components")


@dataclass(frozen=True)
class FiniteSet:
    elements: tuple["PstTerm", ...] = ()


@dataclass(frozen=True)
class Bound:
    """An infix-relation bound attached to a binder, e.g. ``x \\in S``."""

    relation: str
    term: "PstTerm"


@dataclass(frozen=True)
class SetBuilder:
    term: "PstTerm"
    condition: "PstFormula"
    bound: Optional[Bound] = None  # only when ``term`` is a single variable
    fixed: tuple[str, ...] = ()


@dataclass(frozen=True)
class Lambda:
    var: str
    body: "PstTerm"
    bound: Optional[Bound] = None


@dataclass(frozen=True)
class IotaTerm:
    """Definite description; binds one variable or a tuple of variables."""

    vars: tuple[str, ...]
    condition: "PstFormula"
    tuple_pattern: bool = False
    bound: Optional[Bound] = None

    def __post_init__(self):
        if not self.vars or len(set(self.vars)) != len(self.vars):
            raise ValueError("description pattern variables must be "
                             "nonempty and distinct")
        if len(self.vars) > 1 and not self.tuple_pattern:
            raise ValueError("several binders require a tuple pattern")


PstTerm = Union[Variable, DefinedFunApp, InfixFunApp, SetFunApp, TupleTerm,
                FiniteSet, SetBuilder, Lambda, IotaTerm]

# ------------------------------------------------------------------- formulas


@dataclass(frozen=True)
class DefinedRelApp:
    symbol: str
    args: tuple[PstTerm, ...] = ()


@dataclass(frozen=True)
class RelChain:
    """t1 R1 t2 R2 ... ; relation slots name primitive, declared infix, or
    plain variables read as sets of tuples."""

    terms: tuple[PstTerm, ...]
    relations: tuple[str, ...]  # len(terms) - 1 entries


@dataclass(frozen=True)
class MultiMembership:
    terms: tuple[PstTerm, ...]  # >= 2
    relation: str
    bound: PstTerm


@dataclass(frozen=True)
class PstEqual:
    left: PstTerm
    right: PstTerm


@dataclass(frozen=True)
class PstPartialEqual:
    left: PstTerm
    right: PstTerm


@dataclass(frozen=True)
class DefinedTerm:
    term: PstTerm


@dataclass(frozen=True)
class UndefinedTerm:
    term: PstTerm


@dataclass(frozen=True)
class PstNot:
    body: "PstFormula"


@dataclass(frozen=True)
class PstAnd:
    left: "PstFormula"
    right: "PstFormula"


@dataclass(frozen=True)
class PstOr:
    left: "PstFormula"
    right: "PstFormula"


@dataclass(frozen=True)
class PstImplies:
    left: "PstFormula"
    right: "PstFormula"


@dataclass(frozen=True)
class PstIff:
    left: "PstFormula"
    right: "PstFormula"


@dataclass(frozen=True)
class Quantified:
    kind: str  # "forall" | "exists"
    vars: tuple[str, ...]
    body: "PstFormula"
    bound: Optional[Bound] = None

    def __post_init__(self):
        if not self.vars or len(set(self.vars)) != len(self.vars):
            raise ValueError("binder lists must be nonempty and distinct")


PstFormula = Union[DefinedRelApp, RelChain, MultiMembership, PstEqual,
                   PstPartialEqual, DefinedTerm, UndefinedTerm, PstNot,
                   PstAnd, PstOr, PstImplies, PstIff, Quantified]

PstExpr = Union[PstTerm, PstFormula]

TERM_TYPES = (Variable, DefinedFunApp, InfixFunApp, SetFunApp, TupleTerm,
              FiniteSet, SetBuilder, Lambda, IotaTerm)
FORMULA_TYPES = (DefinedRelApp, RelChain, MultiMembership, PstEqual,
                 PstPartialEqual, DefinedTerm, UndefinedTerm, PstNot,
                 PstAnd, PstOr, PstImplies, PstIff, Quantified)

# ---------------------------------------------------------------- definitions

FUN_BODY = "function"
REL_BODY = "relation"
UNDEF_BODY = "undefined"


@dataclass(frozen=True)
class Clause:
    guard: Optional[PstFormula]
    body: Optional[PstExpr]  # term, formula, or None for an Otherwise-undefined clause
    otherwise: bool = False

    @property
    def body_kind(self) -> str:
        if self.body is None:
            return UNDEF_BODY
        if isinstance(self.body, TERM_TYPES):
            return FUN_BODY
        return REL_BODY


@dataclass(frozen=True)
class DefKind:
    kind: str  # "function" | "relation"
    arity: int
    infix: bool = False
    precedence: Optional[int] = None


@dataclass(frozen=True)
class PstDefinition:
    label: str
    kind: DefKind
    symbol: str
    params: tuple[str, ...]
    clauses: tuple[Clause, ...]
    role: Optional[str] = None  # protected-role tag from a source comment
    source: str = field(default="", compare=False)

    @property
    def otherwise_present(self) -> bool:
        return any(c.otherwise for c in self.clauses)

    @property
    def book(self) -> str:
        return self.label.split(".", 1)[0]


# ----------------------------------------------------------------- traversal


def term_var_occurrences(term: PstTerm) -> list[str]:
    """Free variables of a term in first-occurrence order (left to right)."""
    seen: list[str] = []

    def visit(node: PstTerm, bound: frozenset[str]) -> None:
        match node:
            case Variable(name):
                if name not in bound and name not in seen:
                    seen.append(name)
            case DefinedFunApp(_, args):
                for a in args:
                    visit(a, bound)
            case InfixFunApp(_, l, r):
                visit(l, bound)
                visit(r, bound)
            case SetFunApp(fun, args):
                visit(fun, bound)
                for a in args:
                    visit(a, bound)
            case TupleTerm(elements) | FiniteSet(elements):
                for e in elements:
                    visit(e, bound)
            case SetBuilder():
                for name in sorted(pst_free_vars(node)):
                    if name not in bound and name not in seen:
                        seen.append(name)
            case Lambda() | IotaTerm():
                for name in sorted(pst_free_vars(node)):
                    if name not in bound and name not in seen:
                        seen.append(name)
    visit(term, frozenset())
    return seen


def set_builder_binders(sb: SetBuilder) -> tuple[str, ...]:
    """The variables a set builder binds: free variables of the body term
    in occurrence order, minus the ones annotated fixed."""
    return tuple(v for v in term_var_occurrences(sb.term) if v not in sb.fixed)


def pst_free_vars(expr: PstExpr) -> frozenset[str]:
    out: set[str] = set()

    def visit(node: PstExpr, bound: frozenset[str]) -> None:
        match node:
            case Variable(name):
                if name not in bound:
                    out.add(name)
            case DefinedFunApp(_, args) | DefinedRelApp(_, args) | TupleTerm(args) | FiniteSet(args):
                for a in args:
                    visit(a, bound)
            case InfixFunApp(_, l, r):
                visit(l, bound)
                visit(r, bound)
            case SetFunApp(fun, args):
                visit(fun, bound)
                for a in args:
                    visit(a, bound)
            case SetBuilder(term, condition, b, _fixed):
                binders = frozenset(set_builder_binders(node))
                visit(term, bound | binders)
                visit(condition, bound | binders)
                if b is not None:
                    visit(b.term, bound | binders)
            case Lambda(v, body, b):
                if b is not None:
                    visit(b.term, bound | {v})
                visit(body, bound | {v})
            case IotaTerm(vs, condition, _tp, b):
                if b is not None:
                    visit(b.term, bound | set(vs))
                visit(condition, bound | set(vs))
            case RelChain(terms, _):
                for t in terms:
                    visit(t, bound)
            case MultiMembership(terms, _, bterm):
                for t in terms:
                    visit(t, bound)
                visit(bterm, bound)
            case PstEqual(l, r) | PstPartialEqual(l, r):
                visit(l, bound)
                visit(r, bound)
            case DefinedTerm(t) | UndefinedTerm(t):
                visit(t, bound)
            case PstNot(b):
                visit(b, bound)
            case PstAnd(l, r) | PstOr(l, r) | PstImplies(l, r) | PstIff(l, r):
                visit(l, bound)
                visit(r, bound)
            case Quantified(_, vs, body, b):
                if b is not None:
                    visit(b.term, bound | set(vs))
                visit(body, bound | set(vs))
            case _:
                raise TypeError(f"not a surface expression: {node!r}")
    visit(expr, frozenset())
    return frozenset(out)


def definition_all_names(d: PstDefinition) -> frozenset[str]:
    """Every identifier-ish name in a definition, for fresh-name avoidance."""
    names: set[str] = set(d.params)
    names.add(d.symbol)

    def collect(node) -> None:
        match node:
            case Variable(name):
                names.add(name)
            case DefinedFunApp(_, args) | DefinedRelApp(_, args) | \
                    TupleTerm(args) | FiniteSet(args):
                for a in args:
                    collect(a)
            case InfixFunApp(_, l, r):
                collect(l)
                collect(r)
            case SetFunApp(fun, args):
                collect(fun)
                for a in args:
                    collect(a)
            case SetBuilder(term, condition, b, fixed):
                names.update(fixed)
                collect(term)
                collect(condition)
                if b is not None:
                    collect(b.term)
            case Lambda(v, body, b):
                names.add(v)
                collect(body)
                if b is not None:
                    collect(b.term)
            case IotaTerm(vs, condition, _tp, b):
                names.update(vs)
                collect(condition)
                if b is not None:
                    collect(b.term)
            case RelChain(terms, rels):
                names.update(rels)
                for t in terms:
                    collect(t)
            case MultiMembership(terms, _, bterm):
                for t in terms:
                    collect(t)
                collect(bterm)
            case PstEqual(l, r) | PstPartialEqual(l, r):
                collect(l)
                collect(r)
            case DefinedTerm(t) | UndefinedTerm(t):
                collect(t)
            case PstNot(b):
                collect(b)
            case PstAnd(l, r) | PstOr(l, r) | PstImplies(l, r) | PstIff(l, r):
                collect(l)
                collect(r)
            case Quantified(_, vs, body, b):
                names.update(vs)
                collect(body)
                if b is not None:
                    collect(b.term)

    for clause in d.clauses:
        if clause.guard is not None:
            collect(clause.guard)
        if clause.body is not None:
            collect(clause.body)
    return frozenset(names)
