"""Registry of translated definitions, dependency DAG, and expansion.

Definitions are stored in declaration order; each node's edges point at the
defined symbols used by its axiom body, which makes the graph acyclic by
construction.  Expansion replaces defined relation applications by their
bodies and eliminates defined function applications by introducing an
existential witness at the smallest enclosing atomic formula:

    A(f(t)) becomes (exists v)(v ~ body_f(t) /\\ A(v))

recursively, until only primitive vocabulary (and, in partial mode, a
protected set of foundational symbols) remains.  Mid-expression descriptions
are kept as is; their inner formulas are expanded in place.

The store is built single-writer and can be frozen, after which reads and
expansion are side-effect free and safe to run concurrently (expansion keeps
no shared state between calls).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import dzfc as d
from . import syntax as s
from .errors import (BudgetExceeded, DuplicateSymbol, ForwardReference,
                     PstError, UnknownSymbol)
from .parser import CorpusIssue, parse_corpus, symbol_info_for
from .saturate import SAT_MAX
from .symbols import SymbolTable
from .translate import translate_definition

__all__ = ["DefStore", "StoredDefinition", "DagView", "ProtectedSet",
           "PROTECTED_ROLES", "expand", "dag_size", "dag_depth",
           "load_corpus", "BASE_PAIR_SOURCE"]

PROTECTED_ROLES = frozenset({
    "union", "intersection", "difference", "pair", "powerset",
    "empty-set", "subset", "superset",
})

# The pairing function is part of the base environment of every store.
BASE_PAIR_SOURCE = """\
% protected-role: pair
DEFINITION FS.2.46: 2-ary function \\varpi_{0}.
\\varpi_{0}(a,b) \\simeq {{a},{a,b}}.
"""

SCHEMA_VERSION = "pst-defstore/1"
BASE_PAIR_LABEL = "FS.2.46"


@dataclass(frozen=True)
class StoredDefinition:
    symbol: str
    label: str
    book: str
    role: Optional[str]
    definition: s.PstDefinition
    axiom: d.DefiningAxiom
    deps: tuple[str, ...]
    source: str


@dataclass(frozen=True)
class ProtectedSet:
    """Symbols left unexpanded in partial mode."""

    symbols: frozenset[str]

    @classmethod
    def from_store(cls, store: "DefStore",
                   roles: frozenset[str] = PROTECTED_ROLES) -> "ProtectedSet":
        return cls(frozenset(sd.symbol for sd in store
                             if sd.role in roles))

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.symbols


class DefStore:
    def __init__(self, bootstrap: bool = True):
        self._defs: dict[str, StoredDefinition] = {}
        self.table = SymbolTable()
        self.frozen = False
        if bootstrap:
            issues = self.extend_from_source(BASE_PAIR_SOURCE)
            assert not issues, issues

    # ------------------------------------------------------------- building

    def register(self, definition: s.PstDefinition,
                 axiom: d.DefiningAxiom) -> StoredDefinition:
        if self.frozen:
            raise PstError("store is frozen")
        symbol = definition.symbol
        if symbol in self._defs:
            raise DuplicateSymbol(symbol)
        used = d.used_symbols(axiom.body)
        missing = tuple(sorted(sym for sym in used if sym not in self._defs))
        if missing:
            raise ForwardReference(symbol, missing)
        deps = tuple(sorted(used))
        stored = StoredDefinition(symbol=symbol, label=definition.label,
                                  book=definition.book, role=definition.role,
                                  definition=definition, axiom=axiom,
                                  deps=deps, source=definition.source)
        self._defs[symbol] = stored
        if symbol not in self.table:
            self.table.register(symbol_info_for(definition))
        return stored

    def extend_from_source(self, source: str) -> list[CorpusIssue]:
        """Parse, translate and register a corpus; returns collected issues."""
        parsed = parse_corpus(source, self.table)
        issues = list(parsed.errors)
        for definition in parsed.definitions:
            try:
                axiom = translate_definition(definition, self.table)
                self.register(definition, axiom)
            except Exception as exc:
                issues.append(CorpusIssue(definition.label, 0, exc))
        return issues

    def freeze(self) -> "DefStore":
        self.frozen = True
        return self

    # -------------------------------------------------------------- queries

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._defs

    def __iter__(self):
        return iter(self._defs.values())

    def __len__(self) -> int:
        return len(self._defs)

    def get(self, symbol: str) -> StoredDefinition:
        try:
            return self._defs[symbol]
        except KeyError:
            raise UnknownSymbol(symbol) from None

    def by_label(self, label: str) -> Optional[StoredDefinition]:
        for sd in self._defs.values():
            if sd.label == label:
                return sd
        return None

    def symbols(self) -> tuple[str, ...]:
        return tuple(self._defs)

    def user_definitions(self):
        """Stored definitions excluding the bootstrap pairing function."""
        return (sd for sd in self._defs.values()
                if sd.label != BASE_PAIR_LABEL)

    def deps_of(self, symbol: str) -> tuple[str, ...]:
        return self.get(symbol).deps

    def protected_symbols(self) -> frozenset[str]:
        return ProtectedSet.from_store(self).symbols

    def dag_of(self, symbol: str) -> "DagView":
        root = self.get(symbol).symbol
        reachable: set[str] = set()
        stack = [root]
        while stack:
            sym = stack.pop()
            if sym in reachable:
                continue
            reachable.add(sym)
            stack.extend(self._defs[sym].deps)
        edges = {sym: tuple(dep for dep in self._defs[sym].deps)
                 for sym in reachable}
        order = tuple(sym for sym in self._defs if sym in reachable)
        return DagView(root=root, nodes=order, edges=edges)

    # -------------------------------------------------------- serialization

    def to_json(self) -> dict:
        records = []
        for sd in self._defs.values():
            info = self.table.lookup(sd.symbol)
            records.append({
                "symbol": sd.symbol,
                "label": sd.label,
                "book": sd.book,
                "role": sd.role,
                "kind": info.kind,
                "arity": info.arity,
                "infix": info.infix,
                "precedence": info.precedence,
                "source": sd.source,
                "deps": list(sd.deps),
                "axiom": {
                    "symbol": sd.axiom.symbol,
                    "kind": sd.axiom.kind,
                    "params": list(sd.axiom.params),
                    "body": d.to_json(sd.axiom.body),
                },
            })
        return {"schema": SCHEMA_VERSION, "definitions": records}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "DefStore":
        if data.get("schema") != SCHEMA_VERSION:
            raise PstError(f"unsupported store schema {data.get('schema')!r}")
        store = cls(bootstrap=False)
        from .parser import parse_definition, tokenize  # local to avoid cycle
        for record in data["definitions"]:
            tokens = tokenize(record["source"])
            definition = parse_definition(tokens, store.table,
                                          role=record["role"],
                                          source=record["source"])
            axiom = d.DefiningAxiom(record["axiom"]["symbol"],
                                    record["axiom"]["kind"],
                                    tuple(record["axiom"]["params"]),
                                    d.from_json(record["axiom"]["body"]))
            store.table.register(symbol_info_for(definition))
            store.register(definition, axiom)
        return store

    @classmethod
    def loads(cls, text: str) -> "DefStore":
        return cls.from_json(json.loads(text))


# ----------------------------------------------------------------- DAG views


@dataclass(frozen=True)
class DagView:
    root: str
    nodes: tuple[str, ...]  # declaration order, dependencies first
    edges: dict[str, tuple[str, ...]] = field(compare=False)

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def depth(self) -> int:
        return dag_depth(self)


def dag_size(dag: DagView) -> int:
    return dag.size


def dag_depth(dag: DagView) -> int:
    """Edge count of the longest directed path (a lone node has depth 0)."""
    longest: dict[str, int] = {}
    for sym in dag.nodes:  # dependencies precede dependents
        deps = dag.edges.get(sym, ())
        longest[sym] = max((longest[dep] + 1 for dep in deps), default=0)
    return max(longest.values(), default=0)


# ---------------------------------------------------------------- expansion


def expand(expr: d.Expr, store: DefStore, mode: str = "full",
           budget: int = SAT_MAX,
           protected: Optional[frozenset[str]] = None) -> d.Expr:
    """Eliminate defined symbols from a core expression.

    ``mode`` is one of ``none``, ``full`` or ``partial``; partial mode skips
    the store's protected foundational symbols (or an explicit set).  The
    running symbol count of the output is checked against ``budget``;
    exceeding it raises :class:`BudgetExceeded` with the saturated count,
    which is an expected outcome for deep definitions.
    """
    if mode == "none":
        return expr
    if mode == "full":
        skip: frozenset[str] = frozenset()
    elif mode == "partial":
        if protected is None:
            skip = store.protected_symbols()
        elif isinstance(protected, ProtectedSet):
            skip = protected.symbols
        else:
            skip = frozenset(protected)
    else:
        raise ValueError(f"unknown expansion mode {mode!r}")
    for sym in d.used_symbols(expr):
        if sym not in store:
            raise UnknownSymbol(sym)
    return _Expander(store, skip, budget).run(expr)


class _Expander:
    def __init__(self, store: DefStore, skip: frozenset[str], budget: int):
        self.store = store
        self.skip = skip
        self.budget = budget
        self.count = 0
        self.taken: set[str] = set()
        self._fresh_index = 0

    def expandable(self, symbol: str) -> bool:
        return symbol in self.store and symbol not in self.skip

    def tally(self, weight: int) -> None:
        self.count += weight
        if self.count > self.budget:
            raise BudgetExceeded(min(self.count, SAT_MAX), self.budget)

    def fresh(self, atom: d.Formula) -> str:
        avoid = self.taken | d.all_names(atom)
        while True:
            for letter in ("x", "y", "z"):
                name = f"{letter}_{{{self._fresh_index}}}"
                if name not in avoid:
                    self.taken.add(name)
                    return name
            self._fresh_index += 1

    def run(self, expr: d.Expr) -> d.Expr:
        self.taken |= d.all_names(expr)
        if d.is_term(expr):
            return self._expand_term_shell(expr)
        return self._expand_formula(expr)

    # Terms have no enclosing atom, so only their description bodies can be
    # expanded; defined symbols in function position are left in place.
    def _expand_term_shell(self, term: d.Term) -> d.Term:
        match term:
            case d.Var(_):
                return term
            case d.FunApp(sym, args):
                return d.FunApp(sym, tuple(self._expand_term_shell(a)
                                           for a in args))
            case d.Iota(v, body):
                return d.Iota(v, self._expand_formula(body))
        raise TypeError(f"not a term: {term!r}")

    def _expand_formula(self, formula: d.Formula) -> d.Formula:
        OPEN, CLOSE = 0, 1
        work: list[tuple[int, object]] = [(OPEN, formula)]
        results: list = []
        while work:
            op, node = work.pop()
            if op == CLOSE:
                node(results)
                continue
            match node:
                case d.Not(b):
                    self.tally(1)
                    work.append((CLOSE, lambda rs: rs.append(d.Not(rs.pop()))))
                    work.append((OPEN, b))
                case d.And(l, r) | d.Or(l, r) | d.Implies(l, r) | d.Iff(l, r):
                    self.tally(1)
                    ctor = type(node)
                    work.append((CLOSE,
                                 lambda rs, ctor=ctor:
                                 rs.append(ctor(*_pop2(rs)))))
                    work.append((OPEN, r))
                    work.append((OPEN, l))
                case d.Forall(v, b) | d.Exists(v, b):
                    self.tally(2)
                    ctor = type(node)
                    work.append((CLOSE,
                                 lambda rs, ctor=ctor, v=v:
                                 rs.append(ctor(v, rs.pop()))))
                    work.append((OPEN, b))
                case _:
                    replacement = self._step_atom(node)
                    if replacement is not None:
                        work.append((OPEN, replacement))
                        continue
                    # settled atom: expand description bodies in place
                    bodies = _iota_bodies(node)
                    if not bodies:
                        self.tally(_shell_weight(node))
                        results.append(node)
                        continue
                    self.tally(_shell_weight(node))
                    work.append((CLOSE,
                                 lambda rs, atom=node, k=len(bodies):
                                 rs.append(_rebuild_atom(atom, _take(rs, k)))))
                    for body in reversed(bodies):
                        work.append((OPEN, body))
        assert len(results) == 1
        return results[0]

    def _step_atom(self, atom: d.Formula) -> Optional[d.Formula]:
        """One elimination step on an atom, or None when settled."""
        if isinstance(atom, d.RelApp) and self.expandable(atom.symbol):
            stored = self.store.get(atom.symbol)
            self.taken |= d.all_names(stored.axiom.body)
            mapping = dict(zip(stored.axiom.params, atom.args))
            return d.substitute(stored.axiom.body, mapping)
        site = _first_site(atom, self.expandable)
        if site is None:
            return None
        fun = site
        stored = self.store.get(fun.symbol)
        self.taken |= d.all_names(stored.axiom.body)
        mapping = dict(zip(stored.axiom.params, fun.args))
        rhs = d.substitute(stored.axiom.body, mapping)
        v = self.fresh(atom)
        replaced = _replace_first(atom, fun, d.Var(v))
        return d.Exists(v, d.And(d.PartialEqual(d.Var(v), rhs), replaced))


def _pop2(rs: list) -> tuple:
    r = rs.pop()
    l = rs.pop()
    return (l, r)


def _take(rs: list, n: int) -> list:
    taken = rs[len(rs) - n:]
    del rs[len(rs) - n:]
    return taken


def _atom_terms(atom: d.Formula) -> tuple[d.Term, ...]:
    match atom:
        case d.Membership(l, r) | d.Equal(l, r) | d.PartialEqual(l, r):
            return (l, r)
        case d.IsDefined(t):
            return (t,)
        case d.RelApp(_, args):
            return args
    raise TypeError(f"not an atomic formula: {atom!r}")


def _with_atom_terms(atom: d.Formula, terms: list[d.Term]) -> d.Formula:
    match atom:
        case d.Membership(_, _):
            return d.Membership(terms[0], terms[1])
        case d.Equal(_, _):
            return d.Equal(terms[0], terms[1])
        case d.PartialEqual(_, _):
            return d.PartialEqual(terms[0], terms[1])
        case d.IsDefined(_):
            return d.IsDefined(terms[0])
        case d.RelApp(sym, _):
            return d.RelApp(sym, tuple(terms))
    raise TypeError(f"not an atomic formula: {atom!r}")


def _first_site(atom: d.Formula, expandable) -> Optional[d.FunApp]:
    """First defined-function application in preorder, not under a
    description binder."""
    stack: list[d.Term] = list(reversed(_atom_terms(atom)))
    while stack:
        term = stack.pop()
        match term:
            case d.FunApp(sym, args):
                if expandable(sym):
                    return term
                stack.extend(reversed(args))
            case _:
                pass  # variables and descriptions are opaque here
    return None


def _replace_first(atom: d.Formula, target: d.Term, new: d.Term) -> d.Formula:
    """Replace the first preorder occurrence of ``target`` (by identity)."""
    done = [False]

    def rewrite(term: d.Term) -> d.Term:
        if done[0]:
            return term
        if term is target:
            done[0] = True
            return new
        if isinstance(term, d.FunApp):
            return d.FunApp(term.symbol, tuple(rewrite(a) for a in term.args))
        return term

    terms = [rewrite(t) for t in _atom_terms(atom)]
    assert done[0], "site not found during replacement"
    return _with_atom_terms(atom, terms)


def _iota_bodies(atom: d.Formula) -> list[d.Formula]:
    """Description bodies inside an atom, in preorder."""
    bodies: list[d.Formula] = []
    stack: list[d.Term] = list(reversed(_atom_terms(atom)))
    while stack:
        term = stack.pop()
        match term:
            case d.Iota(_, body):
                bodies.append(body)
            case d.FunApp(_, args):
                stack.extend(reversed(args))
            case _:
                pass
    return bodies


def _rebuild_atom(atom: d.Formula, new_bodies: list[d.Formula]) -> d.Formula:
    it = iter(new_bodies)

    def rebuild(term: d.Term) -> d.Term:
        match term:
            case d.Iota(v, _):
                return d.Iota(v, next(it))
            case d.FunApp(sym, args):
                return d.FunApp(sym, tuple(rebuild(a) for a in args))
            case _:
                return term

    result = _with_atom_terms(atom, [rebuild(t) for t in _atom_terms(atom)])
    return result


def _shell_weight(atom: d.Formula) -> int:
    """Symbol count of an atom excluding description bodies."""
    total = 1  # the atomic relation itself
    stack: list[d.Term] = list(_atom_terms(atom))
    while stack:
        term = stack.pop()
        match term:
            case d.Var(_):
                total += 1
            case d.FunApp(_, args):
                total += 1
                stack.extend(args)
            case d.Iota(_, _):
                total += 2
    return total


# ------------------------------------------------------------------ loading


def load_corpus(sources: Iterable[str] | str,
                store: Optional[DefStore] = None) -> tuple[DefStore, list[CorpusIssue]]:
    """Build a store from one or more corpus texts, collecting issues."""
    if isinstance(sources, str):
        sources = [sources]
    if store is None:
        store = DefStore()
    issues: list[CorpusIssue] = []
    for source in sources:
        issues.extend(store.extend_from_source(source))
    return store, issues
