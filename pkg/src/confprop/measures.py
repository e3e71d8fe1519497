"""Registry of conformance measures under a uniform calling convention.

Every entry is called as ``fn(log, model, config)`` and returns a
:class:`MeasureValue`. ``config`` is a :class:`MeasureConfig`; each measure
reads only the fields it uses.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, List, Optional, Union

from . import align, eigen, footprint, negev, replay
from .automata import projected
from .eventlog import EventLog
from .procmodel import baseline
from .replay import ReplayPolicy
from .values import MeasureValue

RECALL, PRECISION, GENERALIZATION = "recall", "precision", "generalization"


@dataclass(frozen=True)
class MeasureConfig:
    policy_seed: int = 0
    k: int = 2
    window: Union[int, str] = negev.MAX
    etc_variant: str = "one"
    alphabet: Optional[tuple] = None

    @property
    def policy(self) -> ReplayPolicy:
        return ReplayPolicy(self.policy_seed)

    def with_seed(self, seed: int) -> "MeasureConfig":
        return replace(self, policy_seed=seed)


DEFAULT_CONFIG = MeasureConfig()

MeasureFn = Callable[[EventLog, object, MeasureConfig], MeasureValue]


@dataclass(frozen=True)
class MeasureInfo:
    id: str
    dimension: str
    fn: MeasureFn = field(repr=False)
    needs_net: bool = False
    policy_dependent: bool = False
    eps: float = 1e-9
    description: str = ""

    def __call__(self, log: EventLog, model, config: MeasureConfig = DEFAULT_CONFIG) -> MeasureValue:
        return self.fn(log, model, config)


def _entries() -> List[MeasureInfo]:
    return [
        MeasureInfo("rec_TB", RECALL, lambda l, m, c: baseline.rec_TB(l, m),
                    description="fraction of trace variants that fit"),
        MeasureInfo("rec_FB", RECALL, lambda l, m, c: baseline.rec_FB(l, m),
                    description="fraction of cases that fit"),
        MeasureInfo("prec_TB", PRECISION, lambda l, m, c: baseline.prec_TB(l, m),
                    description="fraction of model traces observed"),
        MeasureInfo("prec_H", PRECISION, lambda l, m, c: baseline.prec_TB(l, m),
                    description="soundness: observed model traces over all model traces"),
        MeasureInfo("rec_A", RECALL, lambda l, m, c: footprint.rec_A(l, m, c.alphabet),
                    description="causal footprint agreement"),
        MeasureInfo("rec_B", RECALL, lambda l, m, c: replay.rec_B(l, m, c.policy),
                    needs_net=True, policy_dependent=True, description="token replay fitness"),
        MeasureInfo("rec_C", RECALL, lambda l, m, c: align.rec_C(l, m),
                    needs_net=True, description="alignment fitness"),
        MeasureInfo("rec_D", RECALL, lambda l, m, c: negev.rec_D(l, m, c.policy),
                    needs_net=True, policy_dependent=True, description="behavioral recall"),
        MeasureInfo("rec_E", RECALL, lambda l, m, c: projected.rec_E(l, m, c.k, c.alphabet),
                    description="projected recall over k-subsets"),
        MeasureInfo("rec_G", RECALL, lambda l, m, c: eigen.rec_G(l, m), eps=1e-6,
                    description="eigenvalue recall"),
        MeasureInfo("prec_I", PRECISION, lambda l, m, c: replay.prec_I(l, m, c.policy),
                    needs_net=True, policy_dependent=True,
                    description="simple behavioral appropriateness"),
        MeasureInfo("prec_J", PRECISION, lambda l, m, c: footprint.prec_J(l, m),
                    description="advanced behavioral appropriateness"),
        MeasureInfo("prec_K", PRECISION,
                    lambda l, m, c: align.prec_K(l, m, c.policy, c.etc_variant),
                    needs_net=True, policy_dependent=True,
                    description="escaping-edge precision on one alignment per trace"),
        MeasureInfo("prec_L", PRECISION, lambda l, m, c: align.prec_L(l, m, c.policy),
                    needs_net=True, description="escaping-edge precision on all optimal alignments"),
        MeasureInfo("prec_M", PRECISION, lambda l, m, c: negev.prec_M(l, m, c.window, c.policy),
                    needs_net=True, policy_dependent=True, description="behavioral specificity"),
        MeasureInfo("prec_N", PRECISION, lambda l, m, c: negev.prec_N(l, m, c.window, c.policy),
                    needs_net=True, policy_dependent=True, description="behavioral precision"),
        MeasureInfo("prec_O", PRECISION, lambda l, m, c: negev.prec_O(l, m, c.window, c.policy),
                    needs_net=True, policy_dependent=True,
                    description="weighted negative-event precision"),
        MeasureInfo("prec_P", PRECISION, lambda l, m, c: projected.prec_P(l, m, c.k, c.alphabet),
                    description="projected precision over k-subsets"),
        MeasureInfo("prec_R", PRECISION, lambda l, m, c: eigen.prec_R(l, m), eps=1e-6,
                    description="eigenvalue precision"),
        MeasureInfo("gen_S", GENERALIZATION, lambda l, m, c: align.gen_S(l, m, c.policy),
                    description="alignment-state generalization"),
        MeasureInfo("gen_T", GENERALIZATION, lambda l, m, c: negev.gen_T(l, m, c.window, c.policy),
                    needs_net=True, policy_dependent=True,
                    description="weighted negative-event generalization"),
    ]


MEASURES: Dict[str, MeasureInfo] = {m.id: m for m in _entries()}

BASELINE_IDS = ("rec_TB", "rec_FB", "prec_TB")
TABLE_IDS = ("rec_A", "rec_B", "rec_C", "rec_D", "rec_E", "rec_G",
             "prec_H", "prec_I", "prec_J", "prec_K", "prec_L", "prec_M", "prec_N", "prec_O",
             "prec_P", "prec_R", "gen_S", "gen_T")


def get_measure(measure_id: str) -> MeasureInfo:
    try:
        return MEASURES[measure_id]
    except KeyError:
        raise KeyError(f"unknown measure {measure_id!r}; known: {', '.join(MEASURES)}") from None


def measure_ids(dimension: Optional[str] = None) -> List[str]:
    return [m for m, info in MEASURES.items() if dimension is None or info.dimension == dimension]


def evaluate(measure_id: str, log: EventLog, model, config: MeasureConfig = DEFAULT_CONFIG) -> MeasureValue:
    return get_measure(measure_id)(log, model, config)


def parse_ids(spec: Iterable[str]) -> List[str]:
    ids = []
    for part in spec:
        for tok in str(part).split(","):
            tok = tok.strip()
            if tok:
                get_measure(tok)
                ids.append(tok)
    return ids
