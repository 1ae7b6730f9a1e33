import json
import random

import pytest

from pst import dzfc as d
from pst.errors import (BudgetExceeded, DuplicateSymbol, ForwardReference,
                        UnknownSymbol)
from pst.metrics import measured_formula
from pst.store import (DagView, DefStore, ProtectedSet, dag_depth, dag_size,
                       expand, load_corpus)

V = d.Var


# ---------------------------------------------------------------- registering


def test_register_builds_edges(store):
    fcn = store.get("FCN")
    assert fcn.deps == (d.PAIR_SYMBOL,)


def test_register_isolated_node():
    source = "DEFINITION L.1: 1-ary relation LEAF. LEAF[x] \\iff x = x."
    st, issues = load_corpus(source)
    assert not issues
    assert st.get("LEAF").deps == ()


def test_register_multiple_edges(store):
    cartespow = store.get("Cartespow")
    assert set(cartespow.deps) == {"Cartesprod", d.PAIR_SYMBOL}


def test_duplicate_symbol_rejected(chain_store):
    with pytest.raises(DuplicateSymbol):
        chain_store_copy, issues = load_corpus(
            "DEFINITION CH.1: 1-ary relation C1. C1[x] \\iff x = x.\n\n"
            "DEFINITION CH.9: 1-ary relation C1. C1[x] \\iff x = x.")
        raise issues[0].error


def test_forward_reference_rejected():
    st = DefStore()
    issues = st.extend_from_source(
        "DEFINITION F.1: 1-ary relation USES. USES[x] \\iff LATER[x].")
    assert issues and isinstance(issues[0].error, (ForwardReference, Exception))


# ----------------------------------------------------------------- DAG views


def test_leaf_dag(chain_store):
    dag = chain_store.dag_of("C1")
    assert dag_size(dag) == 1 and dag_depth(dag) == 0


def test_chain_dag(chain_store):
    dag = chain_store.dag_of("C5")
    assert dag_size(dag) == 5
    assert dag_depth(dag) == 4


def test_diamond_dag(diamond_store):
    dag = diamond_store.dag_of("D1")
    assert dag_size(dag) == 4
    assert dag_depth(dag) == 2


def test_unknown_symbol_raises(store):
    with pytest.raises(UnknownSymbol):
        store.dag_of("Nonexistent")


def _brute_force_depth(edges, root):
    """Longest directed path in the reachable part, by full enumeration."""
    best = 0
    stack = [(root, 0)]
    while stack:
        node, length = stack.pop()
        best = max(best, length)
        for nxt in edges.get(node, ()):
            stack.append((nxt, length + 1))
    return best


def _reachable(edges, root):
    seen = set()
    stack = [root]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        stack.extend(edges.get(node, ()))
    return seen


def test_dag_stats_agree_with_path_enumeration_on_random_dags():
    rng = random.Random(20240817)
    for trial in range(60):
        n = rng.randint(1, 12)
        edges = {}
        for i in range(n):
            # nodes may only point at earlier nodes, matching store order
            edges[f"n{i}"] = tuple(f"n{j}" for j in range(i)
                                   if rng.random() < 0.35)
        root = f"n{n - 1}"
        reach = _reachable(edges, root)
        order = tuple(f"n{i}" for i in range(n) if f"n{i}" in reach)
        dag = DagView(root=root, nodes=order,
                      edges={k: v for k, v in edges.items() if k in reach})
        assert dag_size(dag) == len(reach)
        assert dag_depth(dag) == _brute_force_depth(edges, root)


# ---------------------------------------------------------------- expansion


def test_expand_mode_none_is_identity(store):
    body = store.get("FCN").axiom.body
    assert expand(body, store, mode="none") is body


def test_expand_no_defined_symbols_unchanged(store):
    f = d.Forall("x", d.Membership(V("x"), V("y")))
    assert expand(f, store, mode="full") == f


def test_expand_one_step_relation(store):
    # DISJOINT[a,b] unfolds through intersection and the empty set
    f = d.RelApp("DISJOINT", (V("a"), V("b")))
    out = expand(f, store, mode="full")
    assert d.used_symbols(out) == frozenset()
    assert d.free_vars(out) == {"a", "b"}


def test_expand_substitutes_parameters(store):
    f = d.RelApp("BR", (V("q"),))
    out = expand(f, store, mode="full")
    assert d.free_vars(out) == {"q"}
    assert d.used_symbols(out) == frozenset()


def test_full_expansion_contains_only_primitives(store):
    for symbol in ("FCN", "Dom", "DISJOINT", "TOPSP", "Basisgentop"):
        out = expand(measured_formula(store.get(symbol)), store, mode="full",
                     budget=10**6)
        assert d.used_symbols(out) == frozenset(), symbol


def test_partial_expansion_keeps_protected(store):
    protected = store.protected_symbols()
    assert protected == {"\\subseteq", "\\supseteq", "\\emptyset", "\\cup",
                         "\\cap", "\\backslash", "\\wp", d.PAIR_SYMBOL}
    out = expand(measured_formula(store.get("TOPSP")), store, mode="partial",
                 budget=10**6)
    used = d.used_symbols(out)
    assert used <= protected
    assert "\\wp" in used  # the powerset application survives partial mode


def test_expansion_idempotent(store):
    for symbol in ("FCN", "DISJOINT", "MAPSAT"):
        once = expand(measured_formula(store.get(symbol)), store, mode="full")
        twice = expand(once, store, mode="full")
        assert once == twice, symbol


def test_expansion_preserves_free_vars(store):
    for symbol in ("FCN", "Dom", "TOPSP", "COVERS"):
        m = measured_formula(store.get(symbol))
        out = expand(m, store, mode="full", budget=10**6)
        assert d.free_vars(out) == d.free_vars(m), symbol


def test_budget_exceeded_carries_count(store):
    with pytest.raises(BudgetExceeded) as err:
        expand(measured_formula(store.get("Stdrealtopbasis")), store,
               mode="full", budget=5000)
    assert err.value.count > 5000
    assert err.value.budget == 5000


def test_expand_unknown_symbol(store):
    with pytest.raises(UnknownSymbol):
        expand(d.RelApp("NOSUCH", (V("x"),)), store, mode="full")


def test_doubling_tower_against_materialized_count():
    from tests.conftest import doubling_tower
    st, issues = load_corpus(doubling_tower(6))
    assert not issues
    # W6 expands to 2^6 copies of the base atom plus the connective spine
    out = expand(d.RelApp("W6", (V("a"),)), st, mode="full")
    assert d.used_symbols(out) == frozenset()
    assert d.symbol_length(out) == 2**6 * 3 + (2**6 - 1)


# -------------------------------------------------------------- persistence


def test_store_json_round_trip(store):
    data = store.to_json()
    again = DefStore.from_json(json.loads(json.dumps(data)))
    assert again.symbols() == store.symbols()
    for sd in store:
        other = again.get(sd.symbol)
        assert other.axiom == sd.axiom
        assert other.definition == sd.definition
        assert other.deps == sd.deps
        assert other.role == sd.role
        assert other.label == sd.label
    assert again.to_json() == data


def test_store_schema_version_checked():
    with pytest.raises(Exception):
        DefStore.from_json({"schema": "bogus/9", "definitions": []})


def test_protected_set_from_roles(store):
    ps = ProtectedSet.from_store(store)
    assert "\\cup" in ps and "FCN" not in ps
