import random

from pst import dzfc as d
from pst.errors import BudgetExceeded
from pst.metrics import (MetricsEngine, corpus_report, measured_formula,
                         profile, pst_symbol_length, quantifier_depth)
from pst.parser import parse_formula_text
from pst.saturate import SAT_MAX
from pst.store import expand, load_corpus
from tests.conftest import doubling_tower

V = d.Var


# ------------------------------------------------------------ depth measure


def test_surface_depth_of_function_predicate(store):
    # defined with no quantifiers at all, despite needing them when translated
    fcn = store.get("FCN")
    body = fcn.definition.clauses[0].body
    assert quantifier_depth(body) == 0
    assert quantifier_depth(body, alternating=True) == 0


def test_core_depth_of_function_predicate(store):
    measured = measured_formula(store.get("FCN"))
    assert quantifier_depth(measured) == 3  # forall, exists, exists
    assert quantifier_depth(measured, alternating=True) == 2


def test_surface_depth_of_generated_topology(store):
    body = store.get("Basisgentop").definition.clauses[0].body
    assert quantifier_depth(body) == 3
    assert quantifier_depth(body, alternating=True) == 2


def test_multi_binder_counts_per_variable_but_one_run():
    f = parse_formula_text("(\\exists x,y)(x \\in y)")
    assert quantifier_depth(f) == 2
    assert quantifier_depth(f, alternating=True) == 1


def test_description_binders_do_not_count():
    f = parse_formula_text("{x : x \\in y} = z")
    assert quantifier_depth(f) == 0
    core = d.Equal(d.Iota("w", d.Membership(V("w"), V("y"))), V("z"))
    assert quantifier_depth(core) == 0


def test_alternation_counts_runs():
    core = d.Forall("a", d.Forall("b", d.Exists("c", d.Forall("e",
        d.Membership(V("a"), V("b"))))))
    assert quantifier_depth(core) == 4
    assert quantifier_depth(core, alternating=True) == 3


def test_depth_invariant_under_renaming():
    core = d.Forall("a", d.Exists("b", d.Membership(V("a"), V("b"))))
    renamed = d.Forall("p", d.Exists("q", d.Membership(V("p"), V("q"))))
    for alt in (False, True):
        assert quantifier_depth(core, alt) == quantifier_depth(renamed, alt)


def _random_formula(rng, depth):
    if depth == 0:
        return d.Membership(V(rng.choice("xyz")), V(rng.choice("xyz")))
    kind = rng.randrange(6)
    if kind == 0:
        return d.Forall(rng.choice("abc"), _random_formula(rng, depth - 1))
    if kind == 1:
        return d.Exists(rng.choice("abc"), _random_formula(rng, depth - 1))
    if kind == 2:
        return d.And(_random_formula(rng, depth - 1),
                     _random_formula(rng, depth - 1))
    if kind == 3:
        return d.Not(_random_formula(rng, depth - 1))
    if kind == 4:
        return d.Equal(d.Iota(rng.choice("uvw"),
                              _random_formula(rng, depth - 1)),
                       V(rng.choice("xyz")))
    return d.Iff(_random_formula(rng, depth - 1),
                 _random_formula(rng, depth - 1))


def test_alternating_never_exceeds_plain_depth_on_random_expressions():
    rng = random.Random(90125)
    for _ in range(10_000):
        f = _random_formula(rng, rng.randint(0, 6))
        assert quantifier_depth(f, alternating=True) <= quantifier_depth(f)


# --------------------------------------------------- evaluator vs materializer


def _assert_engine_matches_materialized(store, engines, budget=100_000):
    checked = 0
    for sd in store:
        m = measured_formula(sd)
        for engine, mode in engines:
            cost = engine.definition_cost(sd)
            try:
                mat = expand(m, store, mode=mode, budget=budget)
            except BudgetExceeded:
                assert cost.size > budget
                continue
            assert d.symbol_length(mat) == cost.size, (sd.label, mode)
            assert quantifier_depth(mat) == cost.depth, (sd.label, mode)
            assert quantifier_depth(mat, alternating=True) == \
                max(cost.alt_a, cost.alt_e), (sd.label, mode)
            checked += 1
    return checked


def test_engine_matches_materialized_measurements_exactly(store):
    engines = ((MetricsEngine(store), "full"),
               (MetricsEngine(store, store.protected_symbols()), "partial"))
    checked = _assert_engine_matches_materialized(store, engines)
    assert checked >= 100


def test_engine_matches_on_random_towers():
    rng = random.Random(7381)
    blocks = ["DEFINITION R.0: 2-ary relation B0. B0[x,y] \\iff x \\in y."]
    for k in range(1, 14):
        prev = rng.randint(max(0, k - 3), k - 1)
        other = rng.randint(0, k - 1)
        shape = rng.randrange(3)
        if shape == 0:
            body = f"B{prev}[x,y] \\wedge B{other}[y,x]"
        elif shape == 1:
            body = f"(\\forall u \\in x)(B{prev}[u,y])"
        else:
            body = f"(\\exists u,w)(B{prev}[u,w] \\wedge B{other}[w,x])"
        blocks.append(f"DEFINITION R.{k}: 2-ary relation B{k}. "
                      f"B{k}[x,y] \\iff {body}.")
    st, issues = load_corpus("\n\n".join(blocks))
    assert not issues
    engines = ((MetricsEngine(st), "full"),)
    checked = _assert_engine_matches_materialized(st, engines)
    assert checked >= 10


def test_saturation_is_exact_on_doubling_tower():
    st, issues = load_corpus(doubling_tower(40))
    assert not issues
    engine = MetricsEngine(st)
    sizes = [engine.definition_cost(st.get(f"W{k}")).size for k in range(41)]
    # closed form below the cap: 4 * 2^k - 1 symbols for the whole body
    for k, size in enumerate(sizes):
        expected = min(4 * 2**k - 1, SAT_MAX)
        assert size == expected, k
    assert sizes[-1] == SAT_MAX
    assert any(size == SAT_MAX for size in sizes)
    assert all(size <= SAT_MAX for size in sizes)


def test_deep_towers_evaluate_fast():
    st, _ = load_corpus(doubling_tower(120))
    engine = MetricsEngine(st)
    assert engine.definition_cost(st.get("W120")).size == SAT_MAX


# ------------------------------------------------------------------ profiles


def test_profile_of_leaf_definition():
    source = ("DEFINITION PR.1: 2-ary relation SYM2. "
              "SYM2[x,y] \\iff x \\in y \\wedge y \\in x.")
    st, issues = load_corpus(source)
    assert not issues
    prof = profile(st, "SYM2")
    assert prof.expanded_length == 7
    assert prof.depth == 0 and prof.alt_depth == 0
    assert prof.param_occurrences == (2, 2)
    assert prof.param_nesting == (0, 0)


def test_profile_length_recurrence_matches_engine(store):
    engine = MetricsEngine(store)
    prof = profile(store, "DISJOINT")
    sd = store.get("DISJOINT")
    from pst.metrics import TermCost
    arg = TermCost(5, 0, 0, 0, 0, 0, 0, 0)
    direct = engine.formula_cost(sd.axiom.body, {"x": arg})
    predicted = prof.expanded_length + prof.param_occurrences[0] * (5 - 1)
    assert direct.size == predicted


def test_profile_nesting_reports_quantifier_cover(store):
    prof = profile(store, "BR")
    # the parameter occurs under the bounded universal quantifier
    assert prof.param_nesting == (1,)


def test_profile_saturates_on_towers():
    st, _ = load_corpus(doubling_tower(40))
    prof = profile(st, "W40")
    assert prof.expanded_length == SAT_MAX
    assert prof.param_occurrences == (SAT_MAX,)


# ------------------------------------------------------------------- reports


def test_report_empty_store():
    st, _ = load_corpus("")
    report = corpus_report(st)
    assert len(report.rows) == 1  # only the built-in pairing function


def test_report_hand_computed_means():
    source = """\
DEFINITION H.1: 1-ary relation A1. A1[x] \\iff (\\forall y)(y \\in x).

DEFINITION H.2: 1-ary relation A2. A2[x] \\iff A1[x].

DEFINITION H.3: 1-ary relation A3. A3[x] \\iff (\\exists y)(A2[y] \\wedge y \\in x).
"""
    st, issues = load_corpus(source)
    assert not issues
    report = corpus_report(st)
    rows = {r["label"]: r for r in report.rows}
    assert rows["H.1"]["pst_depth"] == 1
    assert rows["H.2"]["pst_depth"] == 0
    assert rows["H.3"]["pst_depth"] == 1
    assert rows["H.1"]["dag_size"] == 1
    assert rows["H.3"]["dag_size"] == 3
    assert rows["H.3"]["dag_depth"] == 2
    agg = report.aggregates["H"]
    assert agg["pst_depth"]["max"] == 1
    # mean over the three rows of this book: (1 + 0 + 1) / 3
    assert abs(agg["pst_depth"]["mean"] - 2 / 3) < 0.005
    assert rows["H.3"]["full_depth"] == quantifier_depth(
        expand(measured_formula(st.get("A3")), st, mode="full"))


def test_report_means_match_exact_fractions(store):
    report = corpus_report(store)
    for book, agg in report.aggregates.items():
        subset = [r for r in report.rows
                  if book == "All" or r["book"] == book]
        for column in ("pst_depth", "dzfc_depth", "dag_size", "dag_depth"):
            exact = sum(r[column] for r in subset) / len(subset)
            assert abs(agg[column]["mean"] - exact) <= 0.005


def test_report_histogram_shape(store):
    report = corpus_report(store)
    hist = report.histogram
    assert set(hist) == {"pst_depth", "pst_alt_depth"}
    assert sum(hist["pst_depth"].values()) == len(report.rows)
    assert all(int(k) >= 0 for k in hist["pst_depth"])


def test_report_text_table_sections(store):
    text = corpus_report(store).to_text()
    assert "Dependency dag sizes and depths" in text
    assert "Quantifier depths" in text
    assert "pst_alt_depth" in text
    assert "Surface quantifier depth frequencies" in text


def test_report_alt_never_exceeds_depth(store):
    for row in corpus_report(store).rows:
        for state in ("pst", "dzfc", "full", "partial"):
            assert row[f"{state}_alt_depth"] <= row[f"{state}_depth"], row


def test_surface_symbol_length_convention():
    f = parse_formula_text("x \\in y")
    assert pst_symbol_length(f) == 3
    g = parse_formula_text("(\\forall x,y)(x \\in y)")
    assert pst_symbol_length(g) == 6  # quantifier + two binders + atom


def test_report_uses_fixed_column_names(store):
    report = corpus_report(store)
    expected = {"label", "symbol", "book", "dag_size", "dag_depth",
                "pst_depth", "pst_alt_depth", "dzfc_depth", "dzfc_alt_depth",
                "full_depth", "full_alt_depth", "partial_depth",
                "partial_alt_depth", "pst_len", "dzfc_len", "full_len",
                "partial_len"}
    assert set(report.rows[0]) == expected


def test_corpus_statistics_show_expected_orderings(store):
    """Qualitative shape of the shipped corpus: sugar keeps quantifier
    complexity low, translation raises it slightly, expansion raises it
    enormously, and keeping foundational symbols tames part of that."""
    agg = corpus_report(store).aggregates["All"]
    assert agg["pst_depth"]["mean"] < agg["dzfc_depth"]["mean"]
    assert agg["dzfc_depth"]["mean"] < agg["partial_depth"]["mean"]
    assert agg["partial_depth"]["mean"] < agg["full_depth"]["mean"]
    assert agg["partial_len"]["mean"] < agg["full_len"]["mean"]
    # textbook-style definitions stay within shallow alternation as written
    assert agg["pst_alt_depth"]["max"] <= 3
    assert agg["pst_depth"]["max"] <= 4


def test_report_covers_both_books(store):
    report = corpus_report(store)
    assert {"All", "FS", "MunkTop"} <= set(report.aggregates)
