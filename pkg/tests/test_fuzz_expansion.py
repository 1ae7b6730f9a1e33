"""Randomized cross-checks of the two expansion routes.

Random corpora are generated as source text and pushed through the real
pipeline (tokenize, parse, translate, register).  For every definition the
compositional cost evaluator must agree exactly with measurements taken on
the materialized expansion, in both full and partial modes, and the
materializer itself must be idempotent and preserve free variables.
"""

import random

import pytest

from pst import dzfc as d
from pst.errors import BudgetExceeded
from pst.metrics import MetricsEngine, measured_formula, quantifier_depth
from pst.store import expand, load_corpus

BUDGET = 150_000


def _random_term(rng, params, funs, depth):
    """Source text of a term whose free variables lie in ``params``."""
    choices = ["var"]
    if depth > 0:
        choices += ["pair", "braces"]
        if funs:
            choices += ["app", "app", "join"]
        choices += ["builder", "builder", "description", "lambda"]
    kind = rng.choice(choices)
    var = rng.choice(params)
    if kind == "var":
        return var
    if kind == "pair":
        return (f"<{_random_term(rng, params, funs, depth - 1)},"
                f"{_random_term(rng, params, funs, depth - 1)}>")
    if kind == "braces":
        inner = [_random_term(rng, params, funs, depth - 1)
                 for _ in range(rng.randint(0, 2))]
        return "{" + ",".join(inner) + "}"
    if kind == "app":
        name, arity = rng.choice(funs)
        args = ",".join(_random_term(rng, params, funs, depth - 1)
                        for _ in range(arity))
        return f"{name}({args})"
    if kind == "join":
        left = _random_term(rng, params, funs, depth - 1)
        right = _random_term(rng, params, funs, 0)
        return f"{left} \\sqcup {right}"
    if kind == "builder":
        binder = f"w{rng.randint(0, 9)}"
        body = _random_formula(rng, params + [binder], funs, [], depth - 1)
        return f"{{{binder} : {body}}}"
    if kind == "description":
        binder = f"u{rng.randint(0, 9)}"
        body = _random_formula(rng, params + [binder], funs, [], depth - 1)
        return f"(!{binder})({body})"
    binder = f"b{rng.randint(0, 9)}"
    body = _random_term(rng, params + [binder], funs, depth - 1)
    bound = _random_term(rng, params, funs, 0)
    return f"(\\lambda {binder} \\in {bound})({body})"


def _random_formula(rng, params, funs, rels, depth):
    choices = ["atom", "atom", "defined"]
    if rels:
        choices += ["rel", "rel"]
    if depth > 0:
        choices += ["and", "or", "not", "implies", "iff", "forall", "exists"]
    kind = rng.choice(choices)
    if kind == "atom":
        left = _random_term(rng, params, funs, max(0, depth - 1))
        right = _random_term(rng, params, funs, 0)
        op = rng.choice(["\\in", "=", "\\simeq"])
        return f"{left} {op} {right}"
    if kind == "defined":
        return f"{_random_term(rng, params, funs, max(0, depth - 1))} \\downarrow"
    if kind == "rel":
        name, arity = rng.choice(rels)
        args = ",".join(_random_term(rng, params, funs, max(0, depth - 1))
                        for _ in range(arity))
        return f"{name}[{args}]"
    if kind in ("and", "or", "implies", "iff"):
        op = {"and": "\\wedge", "or": "\\vee", "implies": "\\rightarrow",
              "iff": "\\iff"}[kind]
        left = _random_formula(rng, params, funs, rels, depth - 1)
        right = _random_formula(rng, params, funs, rels, depth - 1)
        return f"({left}) {op} ({right})"
    binder = f"q{rng.randint(0, 9)}"
    keyword = "\\forall" if kind == "forall" else "\\exists"
    if rng.random() < 0.4:
        bound = _random_term(rng, params, funs, 0)
        head = f"({keyword} {binder} \\in {bound})"
    else:
        head = f"({keyword} {binder})"
    body = _random_formula(rng, params + [binder], funs, rels, depth - 1)
    return f"{head}({body})"


def _random_corpus(rng, size):
    blocks = ["% protected-role: union\n"
              "DEFINITION Z.0: Infix function \\sqcup. "
              "x \\sqcup y \\simeq {z : z \\in x \\vee z \\in y}. "
              "Precedence 30."]
    funs = []
    rels = []
    for k in range(1, size + 1):
        if rng.random() < 0.5:
            arity = rng.randint(1, 2)
            name = f"REL{k}"
            params = ["x", "y"][:arity]
            body = _random_formula(rng, params, funs, rels, rng.randint(2, 4))
            blocks.append(f"DEFINITION Z.{k}: {arity}-ary relation {name}. "
                          f"{name}[{','.join(params)}] \\iff {body}.")
            rels.append((name, arity))
        else:
            arity = rng.randint(1, 2)
            name = f"Fun{k}"
            params = ["x", "y"][:arity]
            body = _random_term(rng, params, funs, rng.randint(2, 4))
            head = f"{name}({','.join(params)})"
            if rng.random() < 0.3:
                guard = _random_formula(rng, params, funs, rels, 2)
                blocks.append(f"DEFINITION Z.{k}: {arity}-ary function {name}. "
                              f"If {guard} then {head} \\simeq {body}. "
                              f"Otherwise {head} \\uparrow.")
            else:
                blocks.append(f"DEFINITION Z.{k}: {arity}-ary function {name}. "
                              f"{head} \\simeq {body}.")
            funs.append((name, arity))
    return "\n\n".join(blocks) + "\n"


@pytest.mark.parametrize("seed", [11, 23, 38, 47, 59, 101])
def test_random_corpora_evaluator_matches_materializer(seed):
    rng = random.Random(seed)
    source = _random_corpus(rng, 18)
    store, issues = load_corpus(source)
    assert not issues, [str(i) for i in issues]
    engines = ((MetricsEngine(store), "full"),
               (MetricsEngine(store, store.protected_symbols()), "partial"))
    compared = 0
    for sd in store:
        target = measured_formula(sd)
        for engine, mode in engines:
            cost = engine.definition_cost(sd)
            try:
                mat = expand(target, store, mode=mode, budget=BUDGET)
            except BudgetExceeded:
                assert cost.size > BUDGET, (seed, sd.label, mode)
                continue
            assert d.symbol_length(mat) == cost.size, (seed, sd.label, mode)
            assert quantifier_depth(mat) == cost.depth, (seed, sd.label, mode)
            assert quantifier_depth(mat, alternating=True) == \
                max(cost.alt_a, cost.alt_e), (seed, sd.label, mode)
            compared += 1
    assert compared >= 10


def test_engine_handles_dependency_chains_beyond_recursion_limit():
    # a linear chain far longer than the interpreter stack allows
    blocks = ["DEFINITION L.0: 1-ary relation L0. L0[x] \\iff x = x."]
    depth = 5000
    for k in range(1, depth + 1):
        blocks.append(f"DEFINITION L.{k}: 1-ary relation L{k}. "
                      f"L{k}[x] \\iff L{k - 1}[x].")
    store, issues = load_corpus("\n\n".join(blocks))
    assert not issues
    engine = MetricsEngine(store)
    top = engine.definition_cost(store.get(f"L{depth}"))
    assert top.size == 3  # the whole chain unfolds to the base atom
    materialized = expand(measured_formula(store.get(f"L{depth}")), store,
                          mode="full")
    assert d.symbol_length(materialized) == 3


@pytest.mark.parametrize("seed", [13, 29, 83])
def test_random_corpora_round_trip(seed):
    from pst.latex import latex_to_pst, render_latex, render_pst
    from pst.parser import parse_definition, symbol_info_for, tokenize
    from pst.symbols import SymbolTable

    rng = random.Random(seed)
    store, issues = load_corpus(_random_corpus(rng, 15))
    assert not issues
    fresh = SymbolTable()
    for sd in store:
        source = render_pst(sd.definition, store.table)
        again = parse_definition(tokenize(source), fresh, role=sd.role,
                                 source=source)
        assert again == sd.definition, (seed, sd.label)
        latex_src = latex_to_pst(render_latex(sd.definition, store.table))
        latex_again = parse_definition(tokenize(latex_src), fresh.copy(),
                                       role=sd.role, source=latex_src)
        assert latex_again == sd.definition, (seed, sd.label)
        fresh.register(symbol_info_for(again))


@pytest.mark.parametrize("seed", [7, 71])
def test_random_corpora_expansion_properties(seed):
    rng = random.Random(seed)
    store, issues = load_corpus(_random_corpus(rng, 12))
    assert not issues
    protected = store.protected_symbols()
    for sd in store:
        target = measured_formula(sd)
        for mode in ("full", "partial"):
            try:
                once = expand(target, store, mode=mode, budget=BUDGET)
            except BudgetExceeded:
                continue
            assert expand(once, store, mode=mode, budget=4 * BUDGET) == once
            assert d.free_vars(once) == d.free_vars(target), (seed, sd.label)
            leftover = d.used_symbols(once)
            allowed = protected if mode == "partial" else frozenset()
            assert leftover <= allowed, (seed, sd.label, mode, leftover)
