from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from confprop.eventlog import log_from_traces, power_log
from confprop.negev import (MAX, confusion_replay, gen_T, induce_negatives, prec_M, prec_N, prec_O,
                            rec_D)
from confprop.propositions.fixtures import load_log, load_net

from support import exact, model_and_log


def test_counters_first_log():
    cc, _ = confusion_replay(induce_negatives(load_log("l16")), load_net("m10"))
    assert (cc.tp, cc.fn, cc.fp, cc.tn) == (8, 0, 10, 12)


def test_counters_second_log():
    cc, _ = confusion_replay(induce_negatives(load_log("l17")), load_net("m10"))
    assert (cc.tp, cc.fn, cc.fp, cc.tn) == (17, 0, 23, 23)


def test_ratios_follow_counters():
    log, net = load_log("l16"), load_net("m10")
    assert prec_M(log, net).exact == Fraction(12, 22)
    assert prec_N(log, net).exact == Fraction(8, 18)
    assert prec_N(load_log("l17"), net).exact == Fraction(17, 40)


def test_negatives_exclude_observed_continuations():
    nl = induce_negatives(log_from_traces("ab", "ac"))
    negs = {b for b, _ in nl.negatives[("a", "b")][1]}
    assert "c" not in negs and "b" not in negs


def test_weighted_negatives_lie_in_unit_interval():
    nl = induce_negatives(load_log("l17"), weighted=True)
    for per_trace in nl.negatives.values():
        for events in per_trace:
            for _, w in events:
                assert 0 <= w <= 1


def test_window_must_be_positive():
    with pytest.raises(ValueError):
        induce_negatives(load_log("l16"), window=0)


@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]))
def test_measures_invariant_under_power_log(seed, k):
    model, log = model_and_log(seed)
    big = power_log(log, k)
    for fn in (rec_D, prec_M, prec_N, prec_O, gen_T):
        assert exact(fn(big, model)) == exact(fn(log, model))


def test_window_size_changes_negatives():
    log = load_log("l17")
    wide = induce_negatives(log, window=MAX)
    narrow = induce_negatives(log, window=1)
    assert wide.log == narrow.log
