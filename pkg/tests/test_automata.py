import random

import pytest
from hypothesis import given, settings, strategies as st

from confprop.automata import (Dfa, complement, dfa_from_words, equivalent, includes, minimize,
                               product, project, projected_recall, rec_E)
from confprop.automata.dfa import is_minimal_form, parse_dfa, project_dfa, serialize_dfa, union
from confprop.propositions.fixtures import load_log, load_net

from support import SYMBOLS, all_words, permuted, random_dfa

seeds = st.integers(0, 10**6)


@settings(max_examples=500)
@given(seeds)
def test_minimize_is_idempotent(seed):
    d = minimize(random_dfa(random.Random(seed)))
    assert minimize(d) == d
    assert is_minimal_form(d)


@settings(max_examples=500)
@given(seeds)
def test_minimize_is_canonical_under_renaming(seed):
    rng = random.Random(seed)
    d = random_dfa(rng)
    assert minimize(permuted(d, rng)) == minimize(d)


@given(seeds)
def test_minimize_preserves_language(seed):
    d = random_dfa(random.Random(seed), max_states=8)
    m = minimize(d)
    assert m.n <= d.n
    for w in all_words(SYMBOLS, 5):
        assert m.accepts(w) == d.accepts(w)


@settings(max_examples=300)
@given(seeds)
def test_includes_matches_exhaustive_words(seed):
    rng = random.Random(seed)
    a = random_dfa(rng, max_states=5, density=0.9)
    b = random_dfa(rng, max_states=5, density=0.9)
    # minimal DFAs with at most 5 states: a counter-example exists up to length 2 * 5
    brute = all(a.accepts(w) for w in all_words(SYMBOLS, 6) if b.accepts(w))
    if includes(a, b):
        assert brute
    elif brute:
        diff = product(b, complement(a, SYMBOLS), "intersection")
        assert not diff.is_empty() and len(diff.shortest_word()) > 6


@given(seeds)
def test_boolean_operations(seed):
    rng = random.Random(seed)
    a = random_dfa(rng, max_states=6)
    b = random_dfa(rng, max_states=6)
    inter = product(a, b, "intersection")
    uni = union(a, b)
    comp = complement(a, SYMBOLS)
    for w in all_words(SYMBOLS, 4):
        assert inter.accepts(w) == (a.accepts(w) and b.accepts(w))
        assert uni.accepts(w) == (a.accepts(w) or b.accepts(w))
        assert comp.accepts(w) != a.accepts(w)


@given(seeds)
def test_equivalent_after_renaming(seed):
    rng = random.Random(seed)
    d = random_dfa(rng)
    assert equivalent(d, permuted(d, rng))


def test_dfa_serialize_round_trip():
    d = minimize(dfa_from_words([("a", "b"), ("a", "c"), ()]))
    assert parse_dfa(serialize_dfa(d)) == d


def test_dfa_rejects_unknown_symbol():
    with pytest.raises(ValueError):
        Dfa(["a"], 2, 0, [1], {(0, "b"): 1})


def test_projection_of_single_trace():
    d = project(load_log("l9"), {"a", "b"})
    assert d.accepts(("a", "b"))
    assert sum(1 for _ in d.words(6)) == 1


def test_projection_keeps_only_chosen_symbols():
    d = project_dfa(dfa_from_words([("a", "x", "b"), ("x",)]), {"a", "b"})
    assert d.accepts(("a", "b")) and d.accepts(())
    assert not d.accepts(("x",))


def test_projected_recall_per_subset():
    m6 = load_net("m6")
    assert projected_recall(load_log("l9"), m6, ("a", "b")) == 0
    assert projected_recall(load_log("l10"), m6, ("a", "b")) == 0.5


def _rec_e_oracle(log, model, k):
    from itertools import combinations
    from confprop.procmodel.language import enumerate_language
    words = enumerate_language(model, 8)
    alphabet = sorted(log.alphabet | set(a for w in words for a in w))
    vals = []
    for sub in combinations(alphabet, min(k, len(alphabet))):
        keep = set(sub)
        mp = {tuple(a for a in w if a in keep) for w in words}
        hit = sum(n for t, n in log.items() if tuple(a for a in t if a in keep) in mp)
        vals.append(hit / log.size)
    return sum(vals) / len(vals)


@settings(max_examples=50)
@given(seeds)
def test_rec_e_matches_projected_set_arithmetic(seed):
    from support import model_and_log
    model, log = model_and_log(seed, finite=True)
    assert rec_E(log, model, 2).value == pytest.approx(_rec_e_oracle(log, model, 2), abs=1e-12)
