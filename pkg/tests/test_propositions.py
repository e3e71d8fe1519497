import json
import os
import random

import pytest
from hypothesis import given, settings, strategies as st

from confprop.automata import equivalent, includes
from confprop.eventlog import EventLog
from confprop.procmodel.language import model_dfa
from confprop.propositions import (FIXTURES, PROPOSITIONS, Instance, check, compare, fixture_names,
                                   get_proposition, grid_csv, grid_jsonl, grid_markdown,
                                   implication_conflicts, load_expected, parse_props, random_instance,
                                   replay_witness, run_suite, verify, write_witnesses)
from confprop.propositions.fixtures import Pin, load_log, load_net
from confprop.propositions.generators import random_alphabet, random_model
from confprop.propositions.mutate import extend_model, language_equal_variant

seeds = st.integers(0, 10**6)


def test_catalog_has_every_proposition():
    ids = [p.id for p in PROPOSITIONS]
    assert len(ids) == len(set(ids)) == 21
    assert parse_props("all") == ids
    assert parse_props("RecPro1..3") == ["RecPro1", "RecPro2", "RecPro3"]
    assert parse_props("DetPro,BehPro") == ["DetPro", "BehPro"]
    with pytest.raises(KeyError):
        get_proposition("RecPro99")


def test_reference_grid_shape():
    cells = load_expected()
    assert len(cells) == 164
    assert {c.table for c in cells} == {"recall", "precision", "generalization", "baseline"}


@given(seeds)
def test_language_equal_variants(seed):
    rng = random.Random(seed)
    m = random_model(rng, random_alphabet(rng))
    assert equivalent(model_dfa(m), model_dfa(language_equal_variant(m, rng)))


@given(seeds)
def test_model_extension_only_adds_behavior(seed):
    rng = random.Random(seed)
    alphabet = random_alphabet(rng)
    m = random_model(rng, alphabet)
    m2 = extend_model(m, rng, alphabet)
    assert includes(model_dfa(m2), model_dfa(m))


@settings(max_examples=40)
@given(st.sampled_from([p.id for p in PROPOSITIONS]), seeds)
def test_random_instances_meet_preconditions(prop, seed):
    inst = random_instance(prop, seed, 0)
    if inst is not None:
        assert inst.precondition()
        again = random_instance(prop, seed, 0)
        assert again.logs == inst.logs and again.models == inst.models


def test_fixtures_verify_clean():
    assert len(FIXTURES) >= 15
    assert verify() == []


def test_tampered_pin_is_reported():
    f = FIXTURES[0]
    bad = {f.name: (Pin(f.pins[0].measure, f.pins[0].log, f.pins[0].model, "0.123456"),)}
    drift = verify(names=[f.name], pins=bad)
    assert [d.fixture for d in drift] == [f.name]


def test_fixture_instances_meet_preconditions():
    from confprop.propositions.fixtures import instances_for
    for p in PROPOSITIONS:
        for inst in instances_for(p.id):
            assert inst.precondition(), (p.id, inst.source)


def test_behavior_fixture_is_a_counter_example():
    inst = Instance("BehPro", (load_log("l_blocks"),),
                    (load_net("shared_blocks"), load_net("split_blocks")))
    assert inst.precondition()
    assert check("prec_J", inst).status == "violated"
    assert check("prec_R", inst).status == "holds"


def test_determinism_check_uses_policies():
    inst = Instance("DetPro", (load_log("l_ag"),), (load_net("m7"),))
    r = check("prec_K", inst)
    assert r.status == "violated"
    assert len(r.values) == 4


def test_check_rejects_inapplicable_proposition():
    inst = Instance("GenPro1", (load_log("l_ag"),), (load_net("m7"),))
    with pytest.raises(ValueError):
        check("rec_A", inst)


@pytest.fixture(scope="module")
def small_suite():
    return run_suite(["rec_B", "prec_K", "prec_TB", "gen_T"], ["DetPro", "BehPro", "RecPro1",
                     "PrecPro1", "GenPro1", "RecPro4"], budget=30, seed=3, workers=1)


def test_suite_is_deterministic(small_suite):
    again = run_suite(["rec_B", "prec_K", "prec_TB", "gen_T"], ["DetPro", "BehPro", "RecPro1",
                      "PrecPro1", "GenPro1", "RecPro4"], budget=30, seed=3, workers=2)
    assert grid_csv(again) == grid_csv(small_suite)


def test_suite_reports(small_suite):
    md = grid_markdown(small_suite)
    assert "| DetPro |" in md
    rows = [json.loads(line) for line in grid_jsonl(small_suite).splitlines()]
    assert {"measure", "policy_seeds", "eps", "verdict"} <= set(rows[0])
    assert implication_conflicts(small_suite) == []
    diffs = compare(small_suite, load_expected())
    assert all(d.measure in ("rec_B", "prec_K", "prec_TB", "gen_T") for d in diffs)


def test_witnesses_replay(small_suite, tmp_path):
    names = write_witnesses(small_suite, str(tmp_path))
    assert names
    for name in names:
        manifest, verdict = replay_witness(os.path.join(str(tmp_path), name))
        assert verdict.status == "violated", name
        for f in manifest["files"]["automata"]:
            assert os.path.exists(os.path.join(str(tmp_path), name, f))


def test_behavior_violation_implies_extension_violation(small_suite):
    for v in small_suite.verdicts:
        if v.proposition == "BehPro" and v.status == "violated":
            implied = {"recall": "RecPro1", "precision": "PrecPro1", "generalization": "GenPro1"}
            from confprop.measures import get_measure
            target = small_suite.get(v.measure, implied[get_measure(v.measure).dimension])
            assert target is None or target.status == "violated"


def test_empty_budget_rejected():
    with pytest.raises(ValueError):
        run_suite(["rec_B"], ["DetPro"], budget=0)


def test_fitting_start_variant_is_opt_in():
    assert "RecPro3F" not in parse_props("all")
    assert parse_props("RecPro3F") == ["RecPro3F"]
    for index in range(5):
        inst = random_instance("RecPro3F", 11, index)
        if inst is None:
            continue
        from confprop.procmodel.language import fits
        (l1, _), (m,) = inst.logs, inst.models
        assert all(fits(m, t) for t in l1)
