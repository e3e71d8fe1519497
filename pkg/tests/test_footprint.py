import pytest
from hypothesis import given, strategies as st

from confprop.eventlog import EventLog, log_from_traces
from confprop.footprint import (CAUSAL, CHOICE, PARALLEL, REVERSE, directly_follows_of_log, footprint_of_log, prec_J, rec_A,
                                relation_sets)
from confprop.propositions.fixtures import load_log, load_net
from confprop.propositions.generators import prefix_tree_net

logs = st.lists(st.lists(st.sampled_from("abcd"), min_size=1, max_size=5).map(tuple),
                min_size=1, max_size=5).map(EventLog)


@pytest.mark.parametrize("log, model, expected", [
    ("l4", "m4", "0.722222"),
    ("l7", "m4", "0.833333"),
    ("l7", "m5", "0.714286"),
    ("l8", "m4", "0.833333"),
])
def test_rec_a_fixture_values(log, model, expected):
    assert rec_A(load_log(log), load_net(model)).format() == expected


def test_directly_follows_of_log():
    assert directly_follows_of_log(log_from_traces("abc", "ac")) == {("a", "b"), ("b", "c"), ("a", "c")}


def test_footprint_relations_are_exclusive():
    fp = footprint_of_log(log_from_traces("abc", "acb"))
    assert fp.rel("b", "c") == fp.rel("c", "b") == PARALLEL
    assert fp.rel("a", "b") == CAUSAL
    assert fp.rel("b", "a") == REVERSE
    assert fp.rel("a", "a") == CHOICE


@given(logs)
def test_rec_a_is_one_against_own_language(log):
    assert rec_A(log, prefix_tree_net(log.variants)).value == 1.0


def test_prec_j_depends_on_net_structure():
    log = load_log("l_blocks")
    assert prec_J(log, load_net("shared_blocks")).format() == "0.500000"
    assert prec_J(log, load_net("split_blocks")).format() == "1.000000"


def test_prec_j_vacuous_handling():
    log = log_from_traces("ab")
    net = prefix_tree_net([("a", "b")])
    assert not prec_J(log, net).defined
    assert prec_J(log, net, on_vacuous="one").value == 1.0
    with pytest.raises(ValueError):
        prec_J(log, net, on_vacuous="zero")


def test_log_sometimes_relations():
    rs = relation_sets(log_from_traces("ab", "ac"))
    assert rs.sometimes_follows == {("a", "b"), ("a", "c")}
    assert rs.sometimes_precedes == frozenset()
