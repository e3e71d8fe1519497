"""Proposition instances, precondition checks and local verdicts."""
from __future__ import annotations

import json
import math
import os
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..automata.dfa import equivalent, includes, serialize_dfa, universal_dfa
from ..eventlog import EventLog, power_log, read_log, write_log
from ..measures import MeasureConfig, MeasureInfo, get_measure
from ..procmodel.language import as_language, fits, model_dfa
from ..procmodel.net import LabeledNet, read_net, write_net
from ..values import ConfpropError, MeasureValue
from . import catalog as C
from .catalog import Proposition, get_proposition
from .generators import (counts_log, flower_net, language_sample, prefix_tree_net, random_alphabet,
                         random_log, random_model, random_words, sample_fitting, sample_nonfitting,
                         trace_net)
from .mutate import extend_model, language_equal_variant

DEFAULT_POLICIES = (0, 1, 2, 3)
DUPLICATION_FACTORS = (2, 3, 5)
HOLDS, VIOLATED, REJECTED = "holds", "violated", "rejected"


@dataclass
class Instance:
    """Logs and models for one proposition check.

    Layout by proposition kind: determinism, fitting-log, equal-language,
    model-within-log and universal-model use ``logs=(l,)``, ``models=(m,)``;
    behavior and extend-model use ``logs=(l,)``, ``models=(m1, m2)``; the
    log-extension kinds and duplication use ``logs=(l1, l2)``, ``models=(m,)``.
    """

    prop: str
    logs: Tuple[EventLog, ...]
    models: Tuple[LabeledNet, ...]
    source: str = ""
    k: int = 1

    def precondition(self) -> bool:
        p = get_proposition(self.prop)
        if any(not log for log in self.logs):
            return False
        if p.kind != C.UNIVERSAL_MODEL:
            for m in self.models:
                d = model_dfa(m)
                if d.is_empty() or d.accepts(()):
                    return False
        kind = p.kind
        if kind in (C.DETERMINISM, C.FITTING_LOG, C.EQUAL_LANGUAGE, C.MODEL_WITHIN_LOG, C.UNIVERSAL_MODEL):
            (log,), (m,) = self.logs, self.models
            if kind == C.FITTING_LOG:
                return all(fits(m, t) for t in log)
            if kind == C.EQUAL_LANGUAGE:
                return equivalent(model_dfa(m), model_dfa(log))
            if kind == C.MODEL_WITHIN_LOG:
                return includes(model_dfa(log).with_alphabet(model_dfa(m).alphabet), model_dfa(m))
            if kind == C.UNIVERSAL_MODEL:
                alphabet = set(log.alphabet) | set(as_language(m).alphabet)
                return equivalent(model_dfa(m), universal_dfa(alphabet))
            return True
        if kind in (C.BEHAVIOR, C.EXTEND_MODEL):
            (log,), (m1, m2) = self.logs, self.models
            d1, d2 = model_dfa(m1), model_dfa(m2)
            if kind == C.BEHAVIOR:
                return equivalent(d1, d2)
            if not includes(d2, d1):
                return False
            if p.dimension == "precision":
                return not any(fits(m2, t) and not fits(m1, t) for t in log)
            return True
        (l1, l2), (m,) = self.logs, self.models
        if kind == C.DUPLICATE:
            if l2 != power_log(l1, self.k):
                return False
            fit = sum(n for t, n in l1.items() if fits(m, t))
            unfit = l1.size - fit
            cond = p.log_condition
            if cond == "fitting":
                return unfit == 0
            if cond == "nonfitting":
                return fit == 0
            if cond == "mostly_fitting":
                return fit >= unfit
            if cond == "mostly_nonfitting":
                return fit <= unfit
            return True
        if not (l1 <= l2) or l1 == l2:
            return False
        extra = l2 - l1
        if p.log_condition == "fitting" and not all(fits(m, t) for t in l1):
            return False
        if kind == C.ADD_FITTING:
            return all(fits(m, t) for t in extra)
        if kind == C.ADD_NONFITTING:
            return not any(fits(m, t) for t in extra)
        raise ValueError(f"unknown proposition kind {kind!r}")

    # serialization
    def write(self, directory: str) -> Dict[str, object]:
        os.makedirs(directory, exist_ok=True)
        files = {"logs": [], "models": [], "automata": []}
        for i, log in enumerate(self.logs, 1):
            name = f"l{i}.log"
            write_log(log, os.path.join(directory, name))
            files["logs"].append(name)
        for i, m in enumerate(self.models, 1):
            name = f"m{i}.net"
            write_net(m, os.path.join(directory, name))
            files["models"].append(name)
            dname = f"m{i}.dfa"
            with open(os.path.join(directory, dname), "w", encoding="utf-8") as fh:
                fh.write(serialize_dfa(model_dfa(m)))
            files["automata"].append(dname)
        return {"proposition": self.prop, "source": self.source, "k": self.k, "files": files}

    @classmethod
    def read(cls, directory: str, manifest: Dict[str, object]) -> "Instance":
        files = manifest["files"]
        logs = tuple(read_log(os.path.join(directory, f)) for f in files["logs"])
        models = tuple(read_net(os.path.join(directory, f)) for f in files["models"])
        return cls(manifest["proposition"], logs, models, manifest.get("source", ""),
                   int(manifest.get("k", 1)))


@dataclass
class LocalVerdict:
    status: str
    values: List[Tuple[str, MeasureValue]] = field(default_factory=list)
    note: str = ""

    def values_text(self) -> str:
        return "; ".join(f"{k}={v.format()}" for k, v in self.values)


def _eval(info: MeasureInfo, log: EventLog, model, config: MeasureConfig) -> MeasureValue:
    try:
        return info(log, model, config)
    except ConfpropError as exc:
        return MeasureValue.undefined(f"error: {exc}")


def _compare(relation: str, a: float, b: float, eps: float) -> bool:
    if relation == C.LE:
        return a <= b + eps
    if relation == C.GE:
        return a + eps >= b
    if relation == C.EQ:
        return abs(a - b) <= eps
    raise ValueError(relation)


def check(measure_id: str, inst: Instance, eps: Optional[float] = None,
          policies: Sequence[int] = DEFAULT_POLICIES,
          config: MeasureConfig = MeasureConfig()) -> LocalVerdict:
    """Evaluate one proposition on one instance for one measure.

    Outside the determinism check an undefined value makes the instance
    vacuous (rejected) rather than a counter-example.
    """
    info = get_measure(measure_id)
    prop = get_proposition(inst.prop)
    if not prop.applies_to(info.dimension):
        raise ValueError(f"{inst.prop} does not apply to {info.dimension} measures")
    eps = info.eps if eps is None else eps
    kind = prop.kind
    if kind == C.DETERMINISM:
        (log,), (m,) = inst.logs, inst.models
        seeds = list(policies) if info.policy_dependent else list(policies)[:1]
        values = [(f"policy{s}", _eval(info, log, m, config.with_seed(s))) for s in seeds]
        undefined = [v for _, v in values if not v.defined]
        if undefined:
            return LocalVerdict(VIOLATED, values, f"undefined: {undefined[0].reason}")
        xs = [v.value for _, v in values]
        if max(xs) - min(xs) > eps:
            return LocalVerdict(VIOLATED, values, "values differ across policies")
        return LocalVerdict(HOLDS, values)
    if kind in (C.BEHAVIOR, C.EXTEND_MODEL):
        (log,), (m1, m2) = inst.logs, inst.models
        values = [("m1", _eval(info, log, m1, config)), ("m2", _eval(info, log, m2, config))]
    elif kind in (C.ADD_FITTING, C.ADD_NONFITTING, C.DUPLICATE):
        (l1, l2), (m,) = inst.logs, inst.models
        values = [("l1", _eval(info, l1, m, config)), ("l2", _eval(info, l2, m, config))]
        if kind == C.DUPLICATE:
            values[1] = (f"l1^{inst.k}", values[1][1])
    else:
        (log,), (m,) = inst.logs, inst.models
        values = [("value", _eval(info, log, m, config))]
    if any(not v.defined for _, v in values):
        return LocalVerdict(REJECTED, values, "undefined value")
    if prop.relation == C.ONE:
        ok = abs(values[0][1].value - 1.0) <= eps
    else:
        ok = _compare(prop.relation, values[0][1].value, values[1][1].value, eps)
    return LocalVerdict(HOLDS if ok else VIOLATED, values)


# ---------------------------------------------------------------------------
# random instances

def instance_rng(seed: int, prop: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{prop}:{index}")


def _no_empty(m) -> bool:
    d = model_dfa(m)
    return not d.is_empty() and not d.accepts(())


def _build(prop: Proposition, rng: random.Random) -> Optional[Instance]:
    alphabet = random_alphabet(rng)
    kind = prop.kind
    finite = kind in (C.EQUAL_LANGUAGE, C.MODEL_WITHIN_LOG)
    m = random_model(rng, alphabet, finite=finite)
    if rng.random() < 0.35:
        m = language_equal_variant(m, rng, steps=rng.randint(1, 2))
    if kind == C.DETERMINISM:
        return Instance(prop.id, (random_log(rng, m, alphabet),), (m,))
    if kind == C.BEHAVIOR:
        if rng.random() < 0.3:
            words = random_words(rng, alphabet, rng.randint(2, 4))
            m, m2 = prefix_tree_net(words), trace_net(words)
        else:
            m2 = language_equal_variant(m, rng, steps=rng.randint(1, 3))
        return Instance(prop.id, (random_log(rng, m, alphabet),), (m, m2))
    if kind == C.EXTEND_MODEL:
        if rng.random() < 0.15:
            m2 = language_equal_variant(m, rng, steps=rng.randint(1, 2))
        else:
            m2 = extend_model(m, rng, alphabet, extra=rng.randint(1, 2))
        if not _no_empty(m2):
            return None
        log = random_log(rng, m, alphabet)
        if prop.dimension == "precision":
            log = EventLog({t: n for t, n in log.items() if not (fits(m2, t) and not fits(m, t))})
            if not log:
                return None
        return Instance(prop.id, (log,), (m, m2))
    if kind in (C.ADD_FITTING, C.ADD_NONFITTING):
        l1 = random_log(rng, m, alphabet, fit_ratio=1.0 if prop.log_condition == "fitting" else 0.5)
        if kind == C.ADD_FITTING:
            extra = sample_fitting(rng, m, rng.randint(1, 2))
        else:
            extra = sample_nonfitting(rng, m, alphabet, rng.randint(1, 2))
        if not extra:
            return None
        return Instance(prop.id, (l1, l1 + counts_log(rng, extra)), (m,))
    if kind == C.DUPLICATE:
        cond = prop.log_condition
        ratio = {"fitting": 1.0, "nonfitting": 0.0, "mostly_fitting": 0.75,
                 "mostly_nonfitting": 0.25}.get(cond, 0.5)
        l1 = random_log(rng, m, alphabet, fit_ratio=ratio)
        k = rng.choice(DUPLICATION_FACTORS)
        return Instance(prop.id, (l1, power_log(l1, k)), (m,), k=k)
    if kind == C.FITTING_LOG:
        return Instance(prop.id, (random_log(rng, m, alphabet, fit_ratio=1.0),), (m,))
    if kind == C.EQUAL_LANGUAGE:
        return Instance(prop.id, (counts_log(rng, language_sample(m)),), (m,))
    if kind == C.MODEL_WITHIN_LOG:
        extra = sample_nonfitting(rng, m, alphabet, rng.randint(1, 3))
        return Instance(prop.id, (counts_log(rng, list(language_sample(m)) + extra),), (m,))
    if kind == C.UNIVERSAL_MODEL:
        log = random_log(rng, m, alphabet)
        symbols = set(log.alphabet) | set(alphabet[: rng.randint(1, len(alphabet))])
        return Instance(prop.id, (log,), (flower_net(symbols),))
    raise ValueError(kind)


def random_instance(prop_id: str, seed: int, index: int, attempts: int = 20) -> Optional[Instance]:
    """Deterministic random instance satisfying the proposition's precondition."""
    prop = get_proposition(prop_id)
    rng = instance_rng(seed, prop_id, index)
    for _ in range(attempts):
        try:
            inst = _build(prop, rng)
        except ConfpropError:
            continue
        if inst is not None and inst.precondition():
            inst.source = f"random seed={seed} index={index}"
            return inst
    return None
