import pytest
from hypothesis import given, settings, strategies as st

from confprop.eventlog import power_log
from confprop.measures import (BASELINE_IDS, MEASURES, TABLE_IDS, MeasureConfig, evaluate,
                               get_measure, measure_ids, parse_ids)

from support import exact, model_and_log

POWER_INVARIANT = ("rec_B", "rec_C", "prec_I", "prec_M", "prec_N", "prec_O", "rec_D", "gen_T")


def test_registry_covers_every_table_column():
    assert set(TABLE_IDS) | set(BASELINE_IDS) <= set(MEASURES)
    for mid in MEASURES:
        info = get_measure(mid)
        assert info.dimension in ("recall", "precision", "generalization")
        assert mid.split("_")[0][:3] == info.dimension[:3]


def test_soundness_alias():
    from confprop.propositions.fixtures import load_log, load_net
    log, net = load_log("l3"), load_net("m3")
    assert evaluate("prec_H", log, net).exact == evaluate("prec_TB", log, net).exact


def test_unknown_measure():
    with pytest.raises(KeyError):
        get_measure("rec_Z")
    with pytest.raises(KeyError):
        parse_ids(["rec_A,rec_Z"])


def test_parse_ids_accepts_lists_and_commas():
    assert parse_ids(["rec_A,rec_B", "prec_K"]) == ["rec_A", "rec_B", "prec_K"]


def test_dimension_filter():
    assert all(m.startswith("gen") for m in measure_ids("generalization"))


@settings(max_examples=100)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]))
def test_power_log_invariance(seed, k):
    model, log = model_and_log(seed)
    big = power_log(log, k)
    for mid in POWER_INVARIANT:
        assert exact(evaluate(mid, big, model)) == exact(evaluate(mid, log, model)), mid


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_values_lie_in_unit_interval(seed):
    model, log = model_and_log(seed)
    for mid in MEASURES:
        v = evaluate(mid, log, model, MeasureConfig(policy_seed=seed % 4))
        if v.defined:
            assert 0.0 <= v.value <= 1.0
        else:
            assert v.reason
