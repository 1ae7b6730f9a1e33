"""Core expression trees for set theory with definitions and partial terms.

Terms may fail to denote: defined function symbols stand for partial
functions, and a definite description is undefined unless a unique witness
exists.  The vocabulary is deliberately small -- membership, equality,
partial equality, definedness, applications of defined symbols, the usual
connectives, single-variable quantifiers, and the description binder.
Everything here is immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .saturate import SAT_MAX

# The pairing function used to encode tuples; applied to (a, b) it yields
# the classic two-level set {{a}, {a, b}}.
PAIR_SYMBOL = "\\varpi_{0}"

# ---------------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class FunApp:
    symbol: str
    args: tuple["Term", ...] = ()


@dataclass(frozen=True)
class Iota:
    """Definite description: the unique ``var`` satisfying ``body``."""

    var: str
    body: "Formula"


Term = Union[Var, FunApp, Iota]

# ------------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Membership:
    left: Term
    right: Term


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term


@dataclass(frozen=True)
class PartialEqual:
    """s = t whenever either side denotes; vacuously true otherwise."""

    left: Term
    right: Term


@dataclass(frozen=True)
class IsDefined:
    term: Term


@dataclass(frozen=True)
class RelApp:
    symbol: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Membership, Equal, PartialEqual, IsDefined, RelApp,
                Not, And, Or, Implies, Iff, Forall, Exists]

Expr = Union[Term, Formula]


def conjoin(parts: list) -> "Formula":
    """Right-nested conjunction of one or more formulas."""
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def disjoin(parts: list) -> "Formula":
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


def pair(left: Term, right: Term) -> FunApp:
    return FunApp(PAIR_SYMBOL, (left, right))


def pair_nest(terms: tuple[Term, ...]) -> Term:
    """Right-nested pairing encoding a tuple; single terms pass through."""
    if len(terms) == 1:
        return terms[0]
    return pair(terms[0], pair_nest(terms[1:]))


# ------------------------------------------------------------- defining axioms


@dataclass(frozen=True)
class DefiningAxiom:
    """One conservative extension step.

    Functions are introduced by ``symbol(params) ~ body`` with a term body,
    relations by ``symbol[params] <-> body`` with a formula body.  The body
    may only mention symbols introduced earlier; recursion is not allowed.
    """

    symbol: str
    kind: str  # "function" | "relation"
    params: tuple[str, ...]
    body: Expr


# ----------------------------------------------------------------- traversal


def free_vars(expr: Expr) -> frozenset[str]:
    """Variables with at least one unbound occurrence.

    Iterative so that pathologically deep expanded trees do not overflow
    the interpreter stack.
    """
    out: set[str] = set()
    stack: list[tuple[Expr, frozenset[str]]] = [(expr, frozenset())]
    while stack:
        node, bound = stack.pop()
        match node:
            case Var(name):
                if name not in bound:
                    out.add(name)
            case FunApp(_, args) | RelApp(_, args):
                for a in args:
                    stack.append((a, bound))
            case Iota(v, body) | Forall(v, body) | Exists(v, body):
                stack.append((body, bound | {v}))
            case Membership(l, r) | Equal(l, r) | PartialEqual(l, r):
                stack.append((l, bound))
                stack.append((r, bound))
            case IsDefined(t):
                stack.append((t, bound))
            case Not(b):
                stack.append((b, bound))
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                stack.append((l, bound))
                stack.append((r, bound))
            case _:
                raise TypeError(f"not a dzfc expression: {node!r}")
    return frozenset(out)


def all_names(expr: Expr) -> frozenset[str]:
    """Every variable name occurring anywhere, bound or free."""
    out: set[str] = set()
    stack: list[Expr] = [expr]
    while stack:
        node = stack.pop()
        match node:
            case Var(name):
                out.add(name)
            case FunApp(_, args) | RelApp(_, args):
                stack.extend(args)
            case Iota(v, body) | Forall(v, body) | Exists(v, body):
                out.add(v)
                stack.append(body)
            case Membership(l, r) | Equal(l, r) | PartialEqual(l, r):
                stack.append(l)
                stack.append(r)
            case IsDefined(t):
                stack.append(t)
            case Not(b):
                stack.append(b)
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                stack.append(l)
                stack.append(r)
    return frozenset(out)


def used_symbols(expr: Expr) -> frozenset[str]:
    """Defined function and relation symbols applied anywhere in ``expr``."""
    out: set[str] = set()
    stack: list[Expr] = [expr]
    while stack:
        node = stack.pop()
        match node:
            case FunApp(sym, args) | RelApp(sym, args):
                out.add(sym)
                stack.extend(args)
            case Iota(_, body) | Forall(_, body) | Exists(_, body) | Not(body):
                stack.append(body)
            case Membership(l, r) | Equal(l, r) | PartialEqual(l, r):
                stack.append(l)
                stack.append(r)
            case IsDefined(t):
                stack.append(t)
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                stack.append(l)
                stack.append(r)
    return frozenset(out)


_FRESH_LETTERS = ("x", "y", "z")


def fresh_vars(count: int, avoid: frozenset[str] | set[str]) -> list[str]:
    """Deterministic fresh names x_{0}, y_{0}, z_{0}, x_{1}, ... skipping ``avoid``."""
    out: list[str] = []
    index = 0
    while len(out) < count:
        for letter in _FRESH_LETTERS:
            name = f"{letter}_{{{index}}}"
            if name not in avoid and name not in out:
                out.append(name)
                if len(out) == count:
                    break
        index += 1
    return out


class FreshNamer:
    """Per-definition fresh-name supply with a letter preference per role.

    Description values introduced for set applications and bound tuples use
    the x series, member variables of comprehension axioms the y series, the
    comprehended set itself the z series.  Each request skips names already
    used or present in the source expression.
    """

    def __init__(self, avoid: set[str] | frozenset[str]):
        self._taken = set(avoid)

    def _next(self, letter: str) -> str:
        index = 0
        while True:
            name = f"{letter}_{{{index}}}"
            if name not in self._taken:
                self._taken.add(name)
                return name
            index += 1

    def value_var(self) -> str:
        return self._next("x")

    def member_var(self) -> str:
        return self._next("y")

    def result_var(self) -> str:
        """Variable standing for a definition's value in its case axiom."""
        return self._next("y")

    def set_var(self) -> str:
        return self._next("z")


def alpha_equal(a: Expr, b: Expr) -> bool:
    """Structural equality up to consistent renaming of bound variables."""
    stack: list[tuple[Expr, Expr, tuple, tuple]] = [(a, b, (), ())]
    # scopes are tuples of names, innermost last; bound vars compare by index
    while stack:
        x, y, sx, sy = stack.pop()
        if type(x) is not type(y):
            return False
        match x:
            case Var(n):
                ix = _scope_index(sx, n)
                iy = _scope_index(sy, y.name)
                if ix != iy or (ix is None and n != y.name):
                    return False
            case FunApp(sym, args) | RelApp(sym, args):
                if sym != y.symbol or len(args) != len(y.args):
                    return False
                stack.extend((p, q, sx, sy) for p, q in zip(args, y.args))
            case Iota(v, body) | Forall(v, body) | Exists(v, body):
                stack.append((body, y.body, sx + (v,), sy + (y.var,)))
            case Membership(l, r) | Equal(l, r) | PartialEqual(l, r):
                stack.append((l, y.left, sx, sy))
                stack.append((r, y.right, sx, sy))
            case IsDefined(t):
                stack.append((t, y.term, sx, sy))
            case Not(body):
                stack.append((body, y.body, sx, sy))
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                stack.append((l, y.left, sx, sy))
                stack.append((r, y.right, sx, sy))
    return True


def _scope_index(scope: tuple, name: str):
    for i in range(len(scope) - 1, -1, -1):
        if scope[i] == name:
            return i
    return None


def symbol_length(expr: Expr) -> int:
    """Occurrence count of meaningful symbols, saturating at ``SAT_MAX``.

    Variables (including binder positions), defined symbols, connectives,
    quantifiers, the description binder and atomic relations each count one;
    parentheses and commas count nothing.
    """
    total = 0
    stack: list[Expr] = [expr]
    while stack:
        node = stack.pop()
        match node:
            case Var(_):
                total += 1
            case FunApp(_, args) | RelApp(_, args):
                total += 1
                stack.extend(args)
            case Iota(_, body) | Forall(_, body) | Exists(_, body):
                total += 2
                stack.append(body)
            case Membership(l, r) | Equal(l, r) | PartialEqual(l, r):
                total += 1
                stack.append(l)
                stack.append(r)
            case IsDefined(t):
                total += 1
                stack.append(t)
            case Not(b):
                total += 1
                stack.append(b)
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                total += 1
                stack.append(l)
                stack.append(r)
        if total >= SAT_MAX:
            return SAT_MAX
    return total


# -------------------------------------------------------------- serialization
#
# Canonical JSON tree: every node is {"node": <kind>, ...fields}.  The field
# names below are fixed; see docs/formats.md.

_TERM_KINDS = {"var", "funapp", "iota"}


def to_json(expr: Expr) -> dict:
    match expr:
        case Var(name):
            return {"node": "var", "name": name}
        case FunApp(sym, args):
            return {"node": "funapp", "symbol": sym,
                    "args": [to_json(a) for a in args]}
        case Iota(v, body):
            return {"node": "iota", "var": v, "body": to_json(body)}
        case Membership(l, r):
            return {"node": "membership", "left": to_json(l), "right": to_json(r)}
        case Equal(l, r):
            return {"node": "equal", "left": to_json(l), "right": to_json(r)}
        case PartialEqual(l, r):
            return {"node": "partial_equal", "left": to_json(l), "right": to_json(r)}
        case IsDefined(t):
            return {"node": "is_defined", "term": to_json(t)}
        case RelApp(sym, args):
            return {"node": "relapp", "symbol": sym,
                    "args": [to_json(a) for a in args]}
        case Not(b):
            return {"node": "not", "body": to_json(b)}
        case And(l, r):
            return {"node": "and", "left": to_json(l), "right": to_json(r)}
        case Or(l, r):
            return {"node": "or", "left": to_json(l), "right": to_json(r)}
        case Implies(l, r):
            return {"node": "implies", "left": to_json(l), "right": to_json(r)}
        case Iff(l, r):
            return {"node": "iff", "left": to_json(l), "right": to_json(r)}
        case Forall(v, body):
            return {"node": "forall", "var": v, "body": to_json(body)}
        case Exists(v, body):
            return {"node": "exists", "var": v, "body": to_json(body)}
    raise TypeError(f"not a dzfc expression: {expr!r}")


def from_json(data: dict) -> Expr:
    kind = data["node"]
    if kind == "var":
        return Var(data["name"])
    if kind == "funapp":
        return FunApp(data["symbol"], tuple(from_json(a) for a in data["args"]))
    if kind == "iota":
        return Iota(data["var"], from_json(data["body"]))
    if kind == "membership":
        return Membership(from_json(data["left"]), from_json(data["right"]))
    if kind == "equal":
        return Equal(from_json(data["left"]), from_json(data["right"]))
    if kind == "partial_equal":
        return PartialEqual(from_json(data["left"]), from_json(data["right"]))
    if kind == "is_defined":
        return IsDefined(from_json(data["term"]))
    if kind == "relapp":
        return RelApp(data["symbol"], tuple(from_json(a) for a in data["args"]))
    if kind == "not":
        return Not(from_json(data["body"]))
    if kind == "and":
        return And(from_json(data["left"]), from_json(data["right"]))
    if kind == "or":
        return Or(from_json(data["left"]), from_json(data["right"]))
    if kind == "implies":
        return Implies(from_json(data["left"]), from_json(data["right"]))
    if kind == "iff":
        return Iff(from_json(data["left"]), from_json(data["right"]))
    if kind == "forall":
        return Forall(data["var"], from_json(data["body"]))
    if kind == "exists":
        return Exists(data["var"], from_json(data["body"]))
    raise ValueError(f"unknown node kind {kind!r}")


def is_term(expr: Expr) -> bool:
    return isinstance(expr, (Var, FunApp, Iota))


def substitute(expr: Expr, mapping: dict[str, Term]) -> Expr:
    """Capture-avoiding substitution of terms for free variables.

    Binders whose variable would capture a free variable of a substituted
    term are renamed on the way down.  Implemented with an explicit stack so
    that deeply nested expansion products remain safe to substitute into.
    """
    if not mapping:
        return expr
    risky = frozenset().union(*(free_vars(t) for t in mapping.values()))

    OPEN, CLOSE = 0, 1
    work: list[tuple[int, object, object]] = [(OPEN, expr, mapping)]
    results: list[Expr] = []
    while work:
        op, node, env = work.pop()
        if op == CLOSE:
            node(results)
            continue
        match node:
            case Var(name):
                results.append(env.get(name, node))
            case FunApp(sym, args):
                _close_build(work, results,
                             lambda rs, sym=sym, n=len(args):
                             rs.append(FunApp(sym, _take(rs, n))))
                for a in reversed(args):
                    work.append((OPEN, a, env))
            case RelApp(sym, args):
                _close_build(work, results,
                             lambda rs, sym=sym, n=len(args):
                             rs.append(RelApp(sym, _take(rs, n))))
                for a in reversed(args):
                    work.append((OPEN, a, env))
            case Iota(v, body) | Forall(v, body) | Exists(v, body):
                ctor = type(node)
                inner = {k: t for k, t in env.items() if k != v}
                new_v = v
                if inner and v in risky:
                    new_v = fresh_vars(1, risky | all_names(body) | set(inner))[0]
                    inner[v] = Var(new_v)
                if inner:
                    _close_build(work, results,
                                 lambda rs, ctor=ctor, new_v=new_v:
                                 rs.append(ctor(new_v, rs.pop())))
                    work.append((OPEN, body, inner))
                else:
                    results.append(node)
            case Membership(l, r) | Equal(l, r) | PartialEqual(l, r) | \
                    And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                ctor = type(node)
                _close_build(work, results,
                             lambda rs, ctor=ctor:
                             rs.append(ctor(*_take(rs, 2))))
                work.append((OPEN, r, env))
                work.append((OPEN, l, env))
            case IsDefined(t):
                _close_build(work, results,
                             lambda rs: rs.append(IsDefined(rs.pop())))
                work.append((OPEN, t, env))
            case Not(b):
                _close_build(work, results,
                             lambda rs: rs.append(Not(rs.pop())))
                work.append((OPEN, b, env))
            case _:
                raise TypeError(f"not a dzfc expression: {node!r}")
    assert len(results) == 1
    return results[0]


def _close_build(work, results, builder):
    work.append((1, builder, None))


def _take(results: list, n: int) -> tuple:
    taken = tuple(results[len(results) - n:])
    del results[len(results) - n:]
    return taken
