"""Quantifier-depth and length measurement, direct and compositional.

Every definition is measured in four states: as written in the surface
language, as translated to the core language, fully expanded, and partially
expanded (foundational symbols kept).  Expanded forms of realistic corpora
are astronomically large, so expanded measurements are computed without
materializing anything: a cost evaluator walks the small defining bodies
and combines per-symbol summaries, mirroring the expansion algorithm of
:mod:`pst.store` step for step.  Where materialization is feasible the two
routes agree exactly; that equality is the module's central test.

Cost model.  A term placed in an atomic formula is summarized by

* ``size``   -- symbols it contributes, including its witness wraps;
* ``ow``     -- how many existential wraps it pushes onto the atom's spine;
* ``peak``   -- deepest quantifier nesting among its wrap equations,
  counted from the atom (wraps below earlier wraps sit deeper);
* ``walt_*`` -- alternation summaries of those equations;
* ``rdepth``/``ralt_*`` -- quantifier structure inside description bodies
  that stay in place.

Alternation summaries track, per subformula, the maximal number of
same-kind quantifier runs over paths whose first quantifier is universal
(``alt_a``) or existential (``alt_e``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import dzfc as d
from . import syntax as s
from .errors import CycleError
from .saturate import SAT_MAX, sat_add
from .store import DefStore, StoredDefinition
from .symbols import RELATION

__all__ = ["quantifier_depth", "MetricsEngine", "DepthSummary",
           "LengthSummary", "CompositionalProfile", "profile",
           "depth_summary", "corpus_report", "MetricsReport",
           "pst_symbol_length", "measured_formula"]


# ---------------------------------------------------------- direct measuring


def _children_and_quant(node):
    """(children, (kind, binder_count) or None) for both AST families."""
    match node:
        case d.Var(_) | s.Variable(_):
            return (), None
        case d.FunApp(_, args) | d.RelApp(_, args):
            return args, None
        case d.Iota(_, body):
            return (body,), None
        case d.Membership(l, r) | d.Equal(l, r) | d.PartialEqual(l, r):
            return (l, r), None
        case d.IsDefined(t):
            return (t,), None
        case d.Not(b) | s.PstNot(b):
            return (b,), None
        case d.And(l, r) | d.Or(l, r) | d.Implies(l, r) | d.Iff(l, r):
            return (l, r), None
        case d.Forall(_, body):
            return (body,), ("forall", 1)
        case d.Exists(_, body):
            return (body,), ("exists", 1)
        case s.DefinedFunApp(_, args) | s.DefinedRelApp(_, args):
            return args, None
        case s.InfixFunApp(_, l, r):
            return (l, r), None
        case s.SetFunApp(fun, args):
            return (fun, *args), None
        case s.TupleTerm(elements) | s.FiniteSet(elements):
            return elements, None
        case s.SetBuilder(term, condition, bound, _):
            extra = (bound.term,) if bound else ()
            return (term, *extra, condition), None
        case s.Lambda(_, body, bound):
            extra = (bound.term,) if bound else ()
            return (*extra, body), None
        case s.IotaTerm(_, condition, _, bound):
            extra = (bound.term,) if bound else ()
            return (*extra, condition), None
        case s.RelChain(terms, _):
            return terms, None
        case s.MultiMembership(terms, _, bound):
            return (*terms, bound), None
        case s.PstEqual(l, r) | s.PstPartialEqual(l, r):
            return (l, r), None
        case s.DefinedTerm(t) | s.UndefinedTerm(t):
            return (t,), None
        case s.PstAnd(l, r) | s.PstOr(l, r) | s.PstImplies(l, r) | s.PstIff(l, r):
            return (l, r), None
        case s.Quantified(kind, vars_, body, bound):
            extra = (bound.term,) if bound else ()
            return (*extra, body), (kind, len(vars_))
    raise TypeError(f"cannot measure {node!r}")


def _measure(expr) -> tuple[int, int, int]:
    """(depth, alt starting with forall, alt starting with exists)."""
    OPEN, CLOSE = 0, 1
    work = [(OPEN, expr)]
    results: list[tuple[int, int, int]] = []
    while work:
        op, node = work.pop()
        if op == CLOSE:
            node(results)
            continue
        children, quant = _children_and_quant(node)
        if not children:
            results.append((0, 0, 0))
            continue

        def close(rs, n=len(children), quant=quant):
            parts = rs[len(rs) - n:]
            del rs[len(rs) - n:]
            depth = max(p[0] for p in parts)
            alt_a = max(p[1] for p in parts)
            alt_e = max(p[2] for p in parts)
            if quant is not None:
                kind, count = quant
                depth += count
                same, other = (alt_a, alt_e) if kind == "forall" else (alt_e, alt_a)
                merged = max(1, same, other + 1 if other else 1)
                if kind == "forall":
                    alt_a, alt_e = merged, 0
                else:
                    alt_a, alt_e = 0, merged
            rs.append((depth, alt_a, alt_e))

        work.append((CLOSE, close))
        for child in reversed(children):
            work.append((OPEN, child))
    assert len(results) == 1
    return results[0]


def quantifier_depth(expr, alternating: bool = False) -> int:
    """Maximal quantifier nesting along any path; in alternating mode the
    maximal number of same-kind quantifier runs.  Binders that are not
    quantifiers (descriptions, set builders, lambdas) do not count; a
    multi-binder quantifier counts one per variable but a single run.
    """
    depth, alt_a, alt_e = _measure(expr)
    return max(alt_a, alt_e) if alternating else depth


def pst_symbol_length(expr) -> int:
    """Symbol count of a surface expression, saturating.

    Variables, symbols, connectives and binder variables count one;
    brackets and commas count nothing, matching the core convention.
    """
    total = 0
    stack = [expr]
    while stack:
        node = stack.pop()
        match node:
            case s.Variable(_):
                total += 1
            case s.DefinedFunApp(_, args) | s.DefinedRelApp(_, args):
                total += 1
                stack.extend(args)
            case s.InfixFunApp(_, l, r):
                total += 1
                stack.extend((l, r))
            case s.SetFunApp(fun, args):
                stack.append(fun)
                stack.extend(args)
            case s.TupleTerm(elements) | s.FiniteSet(elements):
                stack.extend(elements)
            case s.SetBuilder(term, condition, bound, _):
                stack.append(term)
                stack.append(condition)
                if bound:
                    total += 1
                    stack.append(bound.term)
            case s.Lambda(_, body, bound):
                total += 2
                stack.append(body)
                if bound:
                    total += 1
                    stack.append(bound.term)
            case s.IotaTerm(vars_, condition, _, bound):
                total += 1 + len(vars_)
                stack.append(condition)
                if bound:
                    total += 1
                    stack.append(bound.term)
            case s.RelChain(terms, rels):
                total += len(rels)
                stack.extend(terms)
            case s.MultiMembership(terms, _, bound):
                total += 1
                stack.extend(terms)
                stack.append(bound)
            case s.PstEqual(l, r) | s.PstPartialEqual(l, r):
                total += 1
                stack.extend((l, r))
            case s.DefinedTerm(t) | s.UndefinedTerm(t):
                total += 1
                stack.append(t)
            case s.PstNot(b):
                total += 1
                stack.append(b)
            case s.PstAnd(l, r) | s.PstOr(l, r) | s.PstImplies(l, r) | s.PstIff(l, r):
                total += 1
                stack.extend((l, r))
            case s.Quantified(_, vars_, body, bound):
                total += 1 + len(vars_)
                stack.append(body)
                if bound:
                    total += 1
                    stack.append(bound.term)
        if total >= SAT_MAX:
            return SAT_MAX
    return total


# ------------------------------------------------------- compositional costs


class TermCost(NamedTuple):
    size: int
    ow: int
    peak: int
    walt_a: int
    walt_e: int
    rdepth: int
    ralt_a: int
    ralt_e: int


class FormulaCost(NamedTuple):
    size: int
    depth: int
    alt_a: int
    alt_e: int


UNIT_VAR = TermCost(1, 0, 0, 0, 0, 0, 0, 0)


def _fold_slots(slots) -> TermCost:
    """Combine slot costs left to right; sizes add, wraps stack in order."""
    size = 0
    prefix = 0
    peak = 0
    walt_a = walt_e = 0
    rdepth = 0
    ralt_a = ralt_e = 0
    for c in slots:
        size = sat_add(size, c.size)
        if c.ow:
            peak = max(peak, prefix + c.peak)
            prefix += c.ow
        walt_a = max(walt_a, c.walt_a)
        walt_e = max(walt_e, c.walt_e)
        rdepth = max(rdepth, c.rdepth)
        ralt_a = max(ralt_a, c.ralt_a)
        ralt_e = max(ralt_e, c.ralt_e)
    return TermCost(size, prefix, peak, walt_a, walt_e, rdepth, ralt_a, ralt_e)


def _atom_cost(head_weight: int, slots) -> FormulaCost:
    f = _fold_slots(slots)
    size = sat_add(head_weight, f.size)
    m = f.ow
    depth = max(m + f.rdepth, f.peak)
    if m == 0:
        return FormulaCost(size, depth, f.ralt_a, f.ralt_e)
    # every quantified path starts in the existential wrap run
    alt_e = 1
    cont_e = max(f.walt_e, f.ralt_e)
    cont_a = max(f.walt_a, f.ralt_a)
    if cont_e:
        alt_e = max(alt_e, cont_e)
    if cont_a:
        alt_e = max(alt_e, cont_a + 1)
    return FormulaCost(size, depth, 0, alt_e)


class _Unresolved(Exception):
    """Internal: a body walk needs a summary that is not memoized yet."""

    def __init__(self, key):
        self.key = key


class MetricsEngine:
    """Expanded-size and depth evaluator over a frozen store.

    ``protected`` symbols are treated as primitive (partial expansion).
    Summaries are memoized per (symbol, argument summaries); towers whose
    expansions are astronomically large evaluate in time linear in the
    corpus.  Long dependency chains resolve through a worklist instead of
    nested calls, so evaluation depth is bounded by the nesting of a single
    defining body, not by the corpus.  Engines keep private memo tables, so
    separate instances are safe to use concurrently.
    """

    def __init__(self, store: DefStore,
                 protected: frozenset[str] = frozenset()):
        self.store = store
        self.protected = frozenset(protected)
        self._memo: dict = {}

    def expandable(self, symbol: str) -> bool:
        return symbol in self.store and symbol not in self.protected

    def _resolve(self, key) -> FormulaCost:
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        pending = [key]
        active = {key}
        while pending:
            top = pending[-1]
            try:
                value = self._evaluate_key(top)
            except _Unresolved as missing:
                if missing.key in active:  # unreachable for stored graphs
                    raise CycleError(tuple(k[1] for k in pending))
                pending.append(missing.key)
                active.add(missing.key)
                continue
            self._memo[top] = value
            active.discard(top)
            pending.pop()
        return self._memo[key]

    def _evaluate_key(self, key) -> FormulaCost:
        kind, symbol, argcosts = key
        sd = self.store.get(symbol)
        env = dict(zip(sd.axiom.params, argcosts))
        if kind == "rel":
            return self.formula_cost(sd.axiom.body, env, strict=True)
        rhs = self.term_cost(sd.axiom.body, env, strict=True)
        return _atom_cost(1, (UNIT_VAR, rhs))

    def _sub_cost(self, kind: str, symbol: str, argcosts, strict: bool):
        key = (kind, symbol, argcosts)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if strict:
            raise _Unresolved(key)
        return self._resolve(key)

    # ------------------------------------------------------------ internals

    def term_cost(self, term: d.Term, env: dict[str, TermCost],
                  strict: bool = False) -> TermCost:
        match term:
            case d.Var(name):
                return env.get(name, UNIT_VAR)
            case d.FunApp(symbol, args):
                argcosts = tuple(self.term_cost(a, env, strict)
                                 for a in args)
                if self.expandable(symbol):
                    eq = self._sub_cost("eq", symbol, argcosts, strict)
                    return TermCost(size=sat_add(4, eq.size), ow=1,
                                    peak=1 + eq.depth, walt_a=eq.alt_a,
                                    walt_e=eq.alt_e, rdepth=0,
                                    ralt_a=0, ralt_e=0)
                f = _fold_slots(argcosts)
                return TermCost(sat_add(1, f.size), f.ow, f.peak,
                                f.walt_a, f.walt_e, f.rdepth,
                                f.ralt_a, f.ralt_e)
            case d.Iota(v, body):
                inner = {k: c for k, c in env.items() if k != v}
                fc = self.formula_cost(body, inner, strict)
                return TermCost(size=sat_add(2, fc.size), ow=0, peak=0,
                                walt_a=0, walt_e=0, rdepth=fc.depth,
                                ralt_a=fc.alt_a, ralt_e=fc.alt_e)
        raise TypeError(f"not a term: {term!r}")

    def formula_cost(self, formula: d.Formula, env: dict[str, TermCost],
                     strict: bool = False) -> FormulaCost:
        match formula:
            case d.Membership(l, r) | d.Equal(l, r) | d.PartialEqual(l, r):
                return _atom_cost(1, (self.term_cost(l, env, strict),
                                      self.term_cost(r, env, strict)))
            case d.IsDefined(t):
                return _atom_cost(1, (self.term_cost(t, env, strict),))
            case d.RelApp(symbol, args):
                argcosts = tuple(self.term_cost(a, env, strict)
                                 for a in args)
                if self.expandable(symbol):
                    return self._sub_cost("rel", symbol, argcosts, strict)
                return _atom_cost(1, argcosts)
            case d.Not(b):
                fc = self.formula_cost(b, env, strict)
                return FormulaCost(sat_add(1, fc.size), fc.depth,
                                   fc.alt_a, fc.alt_e)
            case d.And(l, r) | d.Or(l, r) | d.Implies(l, r) | d.Iff(l, r):
                fl = self.formula_cost(l, env, strict)
                fr = self.formula_cost(r, env, strict)
                return FormulaCost(sat_add(1, fl.size, fr.size),
                                   max(fl.depth, fr.depth),
                                   max(fl.alt_a, fr.alt_a),
                                   max(fl.alt_e, fr.alt_e))
            case d.Forall(v, b):
                inner = {k: c for k, c in env.items() if k != v}
                fc = self.formula_cost(b, inner, strict)
                merged = max(1, fc.alt_a, fc.alt_e + 1 if fc.alt_e else 1)
                return FormulaCost(sat_add(2, fc.size), fc.depth + 1,
                                   merged, 0)
            case d.Exists(v, b):
                inner = {k: c for k, c in env.items() if k != v}
                fc = self.formula_cost(b, inner, strict)
                merged = max(1, fc.alt_e, fc.alt_a + 1 if fc.alt_a else 1)
                return FormulaCost(sat_add(2, fc.size), fc.depth + 1,
                                   0, merged)
        raise TypeError(f"not a formula: {formula!r}")

    def rel_cost(self, symbol: str, argcosts: tuple[TermCost, ...]) -> FormulaCost:
        return self._resolve(("rel", symbol, argcosts))

    def eq_cost(self, symbol: str, argcosts: tuple[TermCost, ...]) -> FormulaCost:
        """Cost of the expanded wrap equation ``v ~ body(args)``."""
        return self._resolve(("eq", symbol, argcosts))

    # -------------------------------------------------------------- queries

    def definition_cost(self, sd: StoredDefinition) -> FormulaCost:
        """Cost of the expanded measured formula of one definition."""
        if sd.axiom.kind == RELATION:
            return self.formula_cost(sd.axiom.body, {})
        rhs = self.term_cost(sd.axiom.body, {})
        return _atom_cost(1, (UNIT_VAR, rhs))


def measured_formula(sd: StoredDefinition) -> d.Formula:
    """The formula a definition's core-language metrics are taken on:
    the axiom body for relations, the graph equation ``v ~ body`` for
    functions."""
    if sd.axiom.kind == RELATION:
        return sd.axiom.body
    return d.PartialEqual(d.Var("v"), sd.axiom.body)


# ----------------------------------------------------------------- profiles


@dataclass(frozen=True)
class CompositionalProfile:
    """Per-definition expansion summary with unit (plain variable) arguments.

    ``expanded_length`` and ``param_occurrences`` satisfy the linear length
    recurrence: using the definition with arguments costs
    ``expanded_length + sum(occurrences[i] * (cost(arg_i) - 1))``.  The
    depth recurrence ``max(depth, nesting[i] + depth(arg_i))`` is exact for
    wrap-free arguments; the engine computes the general case.
    """

    symbol: str
    expanded_length: int
    depth: int
    alt_depth: int
    param_occurrences: tuple[int, ...]
    param_nesting: tuple[int, ...]


_PROBE_DEPTH = 10 ** 7


def profile(store: DefStore, symbol: str,
            protected: frozenset[str] = frozenset()) -> CompositionalProfile:
    engine = MetricsEngine(store, protected)
    sd = store.get(symbol)
    base = engine.definition_cost(sd)
    params = sd.axiom.params
    occurrences = []
    nesting = []
    size_probe = TermCost(2, 0, 0, 0, 0, 0, 0, 0)
    depth_probe = TermCost(1, 0, 0, 0, 0, _PROBE_DEPTH, 0, 0)
    for param in params:
        occ_cost = _cost_with(engine, sd, {param: size_probe})
        occurrences.append(occ_cost.size - base.size
                           if occ_cost.size < SAT_MAX else SAT_MAX)
        deep_cost = _cost_with(engine, sd, {param: depth_probe})
        nesting.append(max(deep_cost.depth - _PROBE_DEPTH, 0))
    return CompositionalProfile(symbol=symbol, expanded_length=base.size,
                                depth=base.depth,
                                alt_depth=max(base.alt_a, base.alt_e),
                                param_occurrences=tuple(occurrences),
                                param_nesting=tuple(nesting))


def _cost_with(engine: MetricsEngine, sd: StoredDefinition,
               env: dict[str, TermCost]) -> FormulaCost:
    if sd.axiom.kind == RELATION:
        return engine.formula_cost(sd.axiom.body, env)
    rhs = engine.term_cost(sd.axiom.body, env)
    return _atom_cost(1, (UNIT_VAR, rhs))


# ------------------------------------------------------------------ reports


@dataclass(frozen=True)
class DepthSummary:
    pst_depth: int
    pst_alt_depth: int
    dzfc_depth: int
    dzfc_alt_depth: int
    full_depth: int
    full_alt_depth: int
    partial_depth: int
    partial_alt_depth: int

    def as_dict(self) -> dict:
        return {
            "pst_depth": self.pst_depth,
            "pst_alt_depth": self.pst_alt_depth,
            "dzfc_depth": self.dzfc_depth,
            "dzfc_alt_depth": self.dzfc_alt_depth,
            "full_depth": self.full_depth,
            "full_alt_depth": self.full_alt_depth,
            "partial_depth": self.partial_depth,
            "partial_alt_depth": self.partial_alt_depth,
        }


@dataclass(frozen=True)
class LengthSummary:
    pst_len: int
    dzfc_len: int
    full_len: int
    partial_len: int

    def as_dict(self) -> dict:
        return {"pst_len": self.pst_len, "dzfc_len": self.dzfc_len,
                "full_len": self.full_len, "partial_len": self.partial_len}


def _pst_measure(definition: s.PstDefinition) -> tuple[int, int, int]:
    depth = alt = length = 0
    for clause in definition.clauses:
        for part in (clause.guard, clause.body):
            if part is None:
                continue
            dpt, aa, ae = _measure(part)
            depth = max(depth, dpt)
            alt = max(alt, aa, ae)
            length = sat_add(length, pst_symbol_length(part))
    return depth, alt, length


def depth_summary(store: DefStore, sd: StoredDefinition,
                  full_engine: MetricsEngine,
                  partial_engine: MetricsEngine) -> tuple[DepthSummary, LengthSummary]:
    pst_depth, pst_alt, pst_len = _pst_measure(sd.definition)
    measured = measured_formula(sd)
    dz_depth, dz_aa, dz_ae = _measure(measured)
    full = full_engine.definition_cost(sd)
    part = partial_engine.definition_cost(sd)
    depths = DepthSummary(
        pst_depth=pst_depth, pst_alt_depth=pst_alt,
        dzfc_depth=dz_depth, dzfc_alt_depth=max(dz_aa, dz_ae),
        full_depth=full.depth, full_alt_depth=max(full.alt_a, full.alt_e),
        partial_depth=part.depth,
        partial_alt_depth=max(part.alt_a, part.alt_e))
    lengths = LengthSummary(
        pst_len=pst_len, dzfc_len=d.symbol_length(measured),
        full_len=full.size, partial_len=part.size)
    return depths, lengths


_DEPTH_COLUMNS = ("pst_depth", "pst_alt_depth", "dzfc_depth", "dzfc_alt_depth",
                  "full_depth", "full_alt_depth", "partial_depth",
                  "partial_alt_depth")
_LEN_COLUMNS = ("pst_len", "dzfc_len", "full_len", "partial_len")


@dataclass(frozen=True)
class MetricsReport:
    rows: tuple[dict, ...]
    aggregates: dict
    histogram: dict

    def to_json(self) -> dict:
        return {"schema": "pst-metrics/1", "definitions": list(self.rows),
                "aggregates": self.aggregates, "histogram": self.histogram}

    def to_text(self) -> str:
        lines: list[str] = []
        lines.append("Dependency dag sizes and depths")
        lines.append(f"{'':12}{'':8}{'Max':>12} {'Mean':>12}")
        for book, agg in self.aggregates.items():
            for metric, key in (("Depth", "dag_depth"), ("Size", "dag_size")):
                lines.append(f"{book:12}{metric:8}{agg[key]['max']:>12} "
                             f"{agg[key]['mean']:>12.2f}")
        lines.append("")
        lines.append("Quantifier depths")
        lines.append(f"{'column':24}{'Max':>12} {'Mean':>12}")
        overall = self.aggregates["All"]
        for column in _DEPTH_COLUMNS:
            lines.append(f"{column:24}{overall[column]['max']:>12} "
                         f"{overall[column]['mean']:>12.2f}")
        lines.append("")
        lines.append("Lengths")
        for column in _LEN_COLUMNS:
            lines.append(f"{column:24}{overall[column]['max']:>12} "
                         f"{overall[column]['mean']:>12.2f}")
        lines.append("")
        lines.append("Surface quantifier depth frequencies")
        lines.append(f"{'Depth':>6} {'plain':>8} {'alternating':>12}")
        plain = self.histogram["pst_depth"]
        alt = self.histogram["pst_alt_depth"]
        for depth in sorted(set(plain) | set(alt), key=int):
            lines.append(f"{depth:>6} {plain.get(depth, 0):>8} "
                         f"{alt.get(depth, 0):>12}")
        return "\n".join(lines) + "\n"


def corpus_report(store: DefStore) -> MetricsReport:
    """Per-definition and per-book table of dag and depth statistics."""
    full_engine = MetricsEngine(store)
    partial_engine = MetricsEngine(store, store.protected_symbols())
    rows = []
    for sd in store:
        depths, lengths = depth_summary(store, sd, full_engine, partial_engine)
        dag = store.dag_of(sd.symbol)
        row = {"label": sd.label, "symbol": sd.symbol, "book": sd.book,
               "dag_size": dag.size, "dag_depth": dag.depth}
        row.update(depths.as_dict())
        row.update(lengths.as_dict())
        rows.append(row)

    books = sorted({row["book"] for row in rows})
    aggregates = {}
    for book in ["All"] + books:
        subset = rows if book == "All" else [r for r in rows if r["book"] == book]
        agg = {}
        for column in ("dag_size", "dag_depth") + _DEPTH_COLUMNS + _LEN_COLUMNS:
            values = [r[column] for r in subset]
            agg[column] = {"max": max(values),
                           "mean": round(sum(values) / len(values), 2)}
        aggregates[book] = agg

    histogram = {"pst_depth": {}, "pst_alt_depth": {}}
    for row in rows:
        for key in histogram:
            bucket = str(row[key])
            histogram[key][bucket] = histogram[key].get(bucket, 0) + 1
    return MetricsReport(tuple(rows), aggregates, histogram)
