import pytest
from sklearn.base import clone

from confprop.estimators import ConformanceMeasure, GeneralizationMeasure, PrecisionMeasure, RecallMeasure
from confprop.propositions.fixtures import load_log, load_net
from confprop.values import ConfpropError, UndefinedMeasureError


def test_fit_then_score():
    est = RecallMeasure(measure="rec_B").fit(load_net("m6"))
    assert est.score(load_log("l9")) == pytest.approx(5 / 6)
    assert est.evaluate(load_log("l10")).format() == "0.846154"


def test_params_round_trip_through_clone():
    est = ConformanceMeasure(measure="prec_K", policy_seed=2, etc_variant="all")
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    twin.set_params(policy_seed=1)
    assert est.policy_seed == 2


def test_defaults_per_dimension():
    assert RecallMeasure().measure == "rec_FB"
    assert PrecisionMeasure().measure == "prec_TB"
    assert GeneralizationMeasure().measure == "gen_T"


def test_undefined_score_raises():
    est = PrecisionMeasure().fit(load_net("m1"))
    assert not est.evaluate(load_log("l12")).defined
    with pytest.raises(UndefinedMeasureError):
        est.score(load_log("l12"))


def test_unfitted_estimator():
    from sklearn.exceptions import NotFittedError
    with pytest.raises(NotFittedError):
        RecallMeasure().score(load_log("l9"))


def test_net_only_measure_rejects_automata():
    from confprop.procmodel.language import model_dfa
    with pytest.raises(ConfpropError):
        RecallMeasure(measure="rec_B").fit(model_dfa(load_net("m6")))


def test_bad_subset_size():
    with pytest.raises(ValueError):
        RecallMeasure(measure="rec_E", k=0).fit(load_net("m6"))


def test_policy_seed_reaches_measure():
    log, net = load_log("l_ag"), load_net("m7")
    a = PrecisionMeasure(measure="prec_K", policy_seed=0).fit(net).score(log)
    b = PrecisionMeasure(measure="prec_K", policy_seed=1).fit(net).score(log)
    assert a == pytest.approx(0.8) and b == pytest.approx(2 / 3)
