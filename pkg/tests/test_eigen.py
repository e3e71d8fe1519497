import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from confprop.automata import dfa_from_words, universal_dfa
from confprop.automata.dfa import empty_dfa
from confprop.eigen import ConvergenceError, ShortCircuitDfa, eig, prec_R, rec_G, spectral_radius
from confprop.eventlog import EventLog
from confprop.propositions.fixtures import load_log, load_net
from confprop.propositions.generators import sample_fitting, sample_nonfitting

from support import model_and_log, random_dfa

seeds = st.integers(0, 10**6)


@settings(max_examples=100)
@given(seeds)
def test_eig_matches_dense_eigensolver(seed):
    d = random_dfa(random.Random(seed), max_states=12)
    sc = ShortCircuitDfa.of(d)
    if sc is None:
        assert eig(d) == 0.0
        return
    a = sc.adjacency()
    dense = max(abs(np.linalg.eigvals(a)))
    assert eig(d) == pytest.approx(dense, abs=1e-6)


def test_universal_language():
    assert eig(universal_dfa("abc")) == pytest.approx(4.0, abs=1e-9)


def test_empty_language_is_zero():
    assert eig(empty_dfa("ab")) == 0.0


def test_single_word_language():
    assert eig(dfa_from_words([("a", "b")])) == pytest.approx(1.0, abs=1e-9)


def test_non_convergence_is_reported():
    # a bipartite cycle makes plain power iteration oscillate; the shift keeps it convergent
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert spectral_radius(a) == pytest.approx(1.0)
    with pytest.raises(ConvergenceError):
        spectral_radius(np.array([[1.0, 1e6], [0.0, 1.0]]), max_iter=3)


@given(seeds)
def test_rec_g_is_one_for_fitting_logs(seed):
    rng = random.Random(seed)
    model, _ = model_and_log(seed)
    log = EventLog(sample_fitting(rng, model, rng.randint(1, 4)))
    assert rec_G(log, model).value == pytest.approx(1.0, abs=1e-9)


@given(seeds)
def test_prec_r_ignores_nonfitting_traces(seed):
    rng = random.Random(seed)
    model, log = model_and_log(seed)
    extra = sample_nonfitting(rng, model, sorted(log.alphabet | model.alphabet), 2)
    if not extra:
        return
    bigger = log + EventLog(extra)
    assert prec_R(bigger, model).value == pytest.approx(prec_R(log, model).value, abs=1e-6)


def test_prec_r_parallel_choice():
    assert prec_R(load_log("l3"), load_net("m3")).format() == "0.930605"
