"""Hand-made counter-examples and reference values shipped with the package.

Each fixture names its data files, pins measure values computed on them
(6 decimals, half-even) and lists the proposition instances it supplies to
the audit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Tuple

from ..eventlog import EventLog, parse_log
from ..measures import MeasureConfig, evaluate
from ..procmodel.net import LabeledNet, parse_net
from .checks import Instance


@dataclass(frozen=True)
class Pin:
    measure: str
    log: str
    model: str
    value: str
    policy_seed: int = 0


@dataclass(frozen=True)
class FixtureInstance:
    prop: str
    logs: Tuple[str, ...]
    models: Tuple[str, ...]
    k: int = 1


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    pins: Tuple[Pin, ...] = ()
    instances: Tuple[FixtureInstance, ...] = ()


@lru_cache(maxsize=None)
def load_log(name: str) -> EventLog:
    return parse_log(resources.files("confprop").joinpath(f"data/{name}.log").read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def load_net(name: str) -> LabeledNet:
    text = resources.files("confprop").joinpath(f"data/{name}.net").read_text(encoding="utf-8")
    return parse_net(text, name)


def _p(measure, log, model, value, seed=0) -> Pin:
    return Pin(measure, log, model, value, seed)


def _i(prop, logs, models, k=1) -> FixtureInstance:
    return FixtureInstance(prop, tuple(logs), tuple(models), k)


FIXTURES: Tuple[Fixture, ...] = (
    Fixture("footprint_fitting_log",
            "fitting log whose directly-follows footprint still differs from the model's",
            (_p("rec_A", "l4", "m4", "0.722222"),),
            (_i("RecPro5", ["l4"], ["m4"]),)),
    Fixture("footprint_model_extension",
            "extending the model with a skip lowers footprint recall",
            (_p("rec_A", "l7", "m4", "0.833333"), _p("rec_A", "l7", "m5", "0.714286"),
             _p("rec_A", "l13", "m4", "0.722222")),
            (_i("RecPro1", ["l7"], ["m4", "m5"]),)),
    Fixture("footprint_nonfitting_extension",
            "non-fitting traces added to the log of the extension example",
            (_p("rec_A", "l8", "m4", "0.833333"),),
            (_i("RecPro3", ["l7", "l8"], ["m4"]),)),
    Fixture("replay_nonfitting_extension",
            "adding a less deviating non-fitting trace raises replay-based recall",
            (_p("rec_B", "l9", "m6", "0.833333"), _p("rec_B", "l10", "m6", "0.846154"),
             _p("rec_D", "l9", "m6", "0.750000"), _p("rec_D", "l10", "m6", "0.777778"),
             _p("rec_E", "l9", "m6", "0.821429"), _p("rec_E", "l10", "m6", "0.875000")),
            (_i("RecPro3", ["l9", "l10"], ["m6"]),)),
    Fixture("alignment_nonfitting_extension",
            "adding a trace with fewer deviations raises alignment recall",
            (_p("rec_C", "l11", "m4", "0.250000"), _p("rec_C", "l12", "m4", "0.631579")),
            (_i("RecPro3", ["l11", "l12"], ["m4"]),)),
    Fixture("alignment_choice",
            "a trace with three optimal alignments; the chosen one changes escaping-edge precision",
            (_p("prec_K", "l_ag", "m7", "0.800000", 0), _p("prec_K", "l_ag", "m7", "0.666667", 1),
             _p("prec_K", "l_ag", "m7", "0.666667", 2), _p("prec_L", "l_ag", "m7", "1.000000")),
            (_i("DetPro", ["l_ag"], ["m7"]),)),
    Fixture("alignment_nonfitting_precision",
            "aligning an added non-fitting trace changes escaping-edge precision",
            (_p("prec_K", "l_adeg", "m7", "0.666667"), _p("prec_K", "l_adeg_ag", "m7", "0.909091"),
             _p("prec_L", "l_adeg", "m7", "0.666667"), _p("prec_L", "l_adeg_ag", "m7", "1.000000")),
            (_i("PrecPro3", ["l_adeg", "l_adeg_ag"], ["m7"]),)),
    Fixture("replay_duplicate_labels",
            "two transitions share a label; the replayed one depends on tie-breaking",
            (_p("rec_B", "l_aeb", "diverge", "0.750000", 0), _p("rec_B", "l_aeb", "diverge", "0.500000", 1),
             _p("prec_I", "l_aeb", "diverge", "0.750000", 0), _p("prec_I", "l_aeb", "diverge", "0.916667", 1),
             _p("rec_D", "l_aeb", "diverge", "0.666667", 0), _p("rec_D", "l_aeb", "diverge", "0.333333", 1),
             _p("prec_M", "l_aeb", "diverge", "0.833333", 0), _p("prec_M", "l_aeb", "diverge", "1.000000", 1),
             _p("prec_N", "l_aeb", "diverge", "0.666667", 0), _p("prec_N", "l_aeb", "diverge", "1.000000", 1),
             _p("prec_O", "l_aeb", "diverge", "0.666667", 0), _p("prec_O", "l_aeb", "diverge", "1.000000", 1)),
            (_i("DetPro", ["l_aeb"], ["diverge"]),)),
    Fixture("loop_language",
            "a model with a loop has infinitely many traces",
            (_p("prec_TB", "l_loop", "m1", "undefined(infinite language)"),
             _p("rec_G", "l_loop", "m1", "1.000000"), _p("prec_R", "l_loop", "m1", "0.909567"),
             _p("gen_S", "l_loop", "m1", "0.969710")),
            (_i("DetPro", ["l_loop"], ["m1"]),)),
    Fixture("loop_language_equal_nets",
            "two nets with the same loop language, one with duplicated transitions",
            (_p("rec_G", "l_loop", "m2", "1.000000"), _p("prec_R", "l_loop", "m2", "0.909567")),
            (_i("BehPro", ["l_loop"], ["m1", "m2"]),)),
    Fixture("shared_vs_split_blocks",
            "two nets with the same finite language; one block shares its states, "
            "the other repeats labels on separate branches",
            (_p("prec_J", "l_blocks", "shared_blocks", "0.500000"),
             _p("prec_J", "l_blocks", "split_blocks", "1.000000"),
             _p("prec_I", "l_blocks", "shared_blocks", "0.714286"),
             _p("prec_I", "l_blocks", "split_blocks", "0.736364"),
             _p("prec_K", "l_blocks", "shared_blocks", "0.800000"),
             _p("prec_K", "l_blocks", "split_blocks", "0.615385")),
            (_i("BehPro", ["l_blocks"], ["shared_blocks", "split_blocks"]),)),
    Fixture("parallel_choice",
            "a concurrent block followed by a choice, with a fitting log",
            (_p("rec_TB", "l3", "m3", "1.000000"), _p("rec_B", "l3", "m3", "1.000000"),
             _p("prec_I", "l3", "m3", "0.777778"), _p("prec_TB", "l3", "m3", "0.750000"),
             _p("prec_J", "l3", "m3", "1.000000"), _p("prec_R", "l3", "m3", "0.930605")),
            (_i("RecPro5", ["l3"], ["m3"]),)),
    Fixture("escaping_edges_fitting_extension",
            "adding a long fitting loop trace lowers escaping-edge precision",
            (_p("prec_L", "l15", "m1se", "0.857143"), _p("prec_L", "l16_etc", "m1se", "0.833333")),
            (_i("PrecPro2", ["l15", "l16_etc"], ["m1se"]),)),
    Fixture("negative_events_fitting_extension",
            "adding a fitting trace lowers negative-event precision",
            (_p("prec_M", "l16", "m10", "0.545455"), _p("prec_M", "l17", "m10", "0.500000"),
             _p("prec_N", "l16", "m10", "0.444444"), _p("prec_N", "l17", "m10", "0.425000"),
             _p("prec_O", "l16", "m10", "0.475248"), _p("prec_O", "l17", "m10", "0.477555")),
            (_i("PrecPro2", ["l16", "l17"], ["m10"]),)),
    Fixture("projection_nonfitting_extension",
            "a non-fitting trace adds projected behavior shared with the model",
            (_p("prec_P", "l18", "m11", "0.500000"), _p("prec_P", "l19", "m11", "0.833333")),
            (_i("PrecPro3", ["l18", "l19"], ["m11"]),)),
    Fixture("flower_single_activity",
            "a repeated single-activity trace on a model allowing every trace",
            (_p("gen_S", "l_a10", "flower_a", "0.977778"), _p("gen_T", "l_a10", "flower_a", "1.000000"),
             _p("gen_S", "l_a10", "single_a", "0.977778")),
            (_i("GenPro8", ["l_a10"], ["flower_a"]),)),
    Fixture("duplicate_choice",
            "a choice between two identically labeled branches",
            (_p("rec_B", "l3", "dup_choice", "0.675000"),)),
)


def fixture_names() -> List[str]:
    return [f.name for f in FIXTURES]


def get_fixture(name: str) -> Fixture:
    for f in FIXTURES:
        if f.name == name:
            return f
    raise KeyError(f"unknown fixture {name!r}")


def instances_for(prop: str) -> List[Instance]:
    out = []
    for f in FIXTURES:
        for fi in f.instances:
            if fi.prop == prop:
                out.append(Instance(prop, tuple(load_log(n) for n in fi.logs),
                                    tuple(load_net(n) for n in fi.models), f"fixture {f.name}", fi.k))
    return out


@dataclass
class Drift:
    fixture: str
    pin: Pin
    got: str


def verify(names: Optional[List[str]] = None, pins: Optional[Dict[str, Tuple[Pin, ...]]] = None) -> List[Drift]:
    """Recompute pinned values; returns the mismatches."""
    drift = []
    for f in FIXTURES:
        if names and f.name not in names:
            continue
        for pin in (pins or {}).get(f.name, f.pins):
            v = evaluate(pin.measure, load_log(pin.log), load_net(pin.model),
                         MeasureConfig(policy_seed=pin.policy_seed))
            got = v.format(6)
            if got != pin.value:
                drift.append(Drift(f.name, pin, got))
    return drift
