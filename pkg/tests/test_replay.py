import pytest
from hypothesis import given, strategies as st

from confprop.eventlog import log_from_traces, power_log
from confprop.propositions.fixtures import load_log, load_net
from confprop.propositions.generators import trace_net
from confprop.replay import (ReplayPolicy, TokenCounts, log_token_counts, prec_I, rec_B,
                             replay_trace, token_replay)

from support import exact, model_and_log

seeds = st.integers(0, 10**6)


def test_token_counts_on_nonfitting_trace():
    c = token_replay(load_net("m6"), ("a", "b", "f", "g"))
    assert c == TokenCounts(produced=6, consumed=6, missing=1, remaining=1)


def test_replay_dump_lists_forced_events():
    text = replay_trace(load_net("m6"), ("a", "b", "f", "g")).dump()
    assert "event 3 g: fired tg [forced]" in text
    assert text.endswith("p=6 c=6 m=1 r=1\n")


@pytest.mark.parametrize("log, expected", [("l9", "0.833333"), ("l10", "0.846154")])
def test_rec_b_fixture_values(log, expected):
    assert rec_B(load_log(log), load_net("m6")).format() == expected


def test_counters_aggregate_globally():
    net = load_net("m6")
    log = load_log("l10")
    total = TokenCounts()
    for t, n in log.items():
        total = total + token_replay(net, t).scaled(n)
    assert log_token_counts(log, net) == total


def test_policies_are_total_orders():
    net = load_net("dup_choice")
    for seed in range(5):
        order = ReplayPolicy(seed).order(net)
        assert sorted(order.values()) == list(range(len(net.transitions)))
    assert ReplayPolicy(0).order(net) != ReplayPolicy(1).order(net)


def test_policy_changes_value_on_duplicates():
    log, net = load_log("l_aeb"), load_net("diverge")
    assert rec_B(log, net, ReplayPolicy(0)).format() == "0.750000"
    assert rec_B(log, net, ReplayPolicy(1)).format() == "0.500000"


@given(st.lists(st.lists(st.sampled_from("abc"), min_size=1, max_size=5).map(tuple),
                min_size=1, max_size=4))
def test_fitting_traces_replay_cleanly_without_duplicates(words):
    words = [w for w in words if len(set(w)) == len(w)]
    words = [w for i, w in enumerate(words) if not any(set(w) & set(v) for v in words[:i])]
    if not words:
        return
    net = trace_net(words)
    log = log_from_traces(*words)
    assert rec_B(log, net).value == 1.0
    for w in words:
        c = token_replay(net, w)
        assert c.missing == c.remaining == 0


@given(seeds, st.sampled_from([2, 3, 5]))
def test_token_counts_scale_with_power_log(seed, k):
    model, log = model_and_log(seed)
    assert log_token_counts(power_log(log, k), model) == log_token_counts(log, model).scaled(k)
    assert exact(rec_B(power_log(log, k), model)) == exact(rec_B(log, model))
    assert exact(prec_I(power_log(log, k), model)) == exact(prec_I(log, model))


def test_prec_i_on_parallel_choice():
    assert prec_I(load_log("l3"), load_net("m3")).format() == "0.777778"
