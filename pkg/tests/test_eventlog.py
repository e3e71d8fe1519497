import pytest
from hypothesis import given, strategies as st

from confprop.eventlog import (EventLog, log_from_traces, multiset_op, parse_log, power_log,
                               serialize_log, split_fitting)
from confprop.values import ParseError

traces = st.lists(st.sampled_from("abcd"), max_size=5).map(tuple)
logs = st.dictionaries(traces, st.integers(1, 6), max_size=6).map(EventLog)


def test_parse_aggregates_identical_lines():
    log = parse_log("# header\n2: a b\n3: a b\n1: <empty>\n")
    assert log.count(("a", "b")) == 5
    assert log.count(()) == 1
    assert log.size == 6
    assert len(log) == 2


@pytest.mark.parametrize("text", ["a b", "x: a", "0: a", "2:", "2: a-b", "-1: a"])
def test_parse_rejects_malformed_lines(text):
    with pytest.raises(ParseError):
        parse_log(text)


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as info:
        parse_log("1: a\n\n1: a $\n")
    assert "3" in str(info.value)


def test_log_from_traces_splits_strings():
    log = log_from_traces("abc", "a b", counts=[2, 1])
    assert log.count(("a", "b", "c")) == 2
    assert log.count(("a", "b")) == 1


@given(logs)
def test_serialize_round_trip(log):
    assert parse_log(serialize_log(log)) == log


@given(logs, st.integers(1, 7))
def test_power_log_scales_every_count(log, k):
    p = power_log(log, k)
    assert p.variants == log.variants
    assert all(p.count(t) == k * n for t, n in log.items())


def test_power_log_rejects_zero():
    with pytest.raises(ValueError):
        power_log(log_from_traces("a"), 0)


@given(logs, logs)
def test_multiset_algebra_matches_counters(a, b):
    keys = a.variants | b.variants
    s = multiset_op("sum", a, b)
    d = multiset_op("difference", a, b)
    i = multiset_op("intersection", a, b)
    for t in keys:
        assert s.count(t) == a.count(t) + b.count(t)
        assert d.count(t) == max(a.count(t) - b.count(t), 0)
        assert i.count(t) == min(a.count(t), b.count(t))
    assert multiset_op("subset-test", i, a)
    assert multiset_op("subset-test", a, s)


@given(logs)
def test_split_fitting_partitions(log):
    yes, no = split_fitting(log, lambda t: len(t) % 2 == 0)
    assert yes + no == log
    assert not (yes.variants & no.variants)


def test_unknown_multiset_operation():
    with pytest.raises(ValueError):
        multiset_op("xor", EventLog(), EventLog())


def test_count_overflow_rejected():
    with pytest.raises(OverflowError):
        power_log(EventLog({("a",): 2**62}), 4)
