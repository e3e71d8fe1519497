"""Estimator-style wrappers: ``fit`` binds a model, ``score`` evaluates a log."""
from __future__ import annotations

from typing import Union

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .eventlog import EventLog
from .measures import MeasureConfig, get_measure, negev
from .validation import check_log, check_model, check_positive_int
from .values import MeasureValue, UndefinedMeasureError


class ConformanceMeasure(BaseEstimator):
    """A registered conformance measure with its configuration.

    Parameters
    ----------
    measure : str
        Registered measure id such as ``"rec_B"`` or ``"prec_L"``.
    policy_seed : int
        Tie-breaking policy for replay and alignment choices.
    k : int
        Subset size for projected measures.
    window : int or "MAX"
        Context window for negative-event measures.
    etc_variant : str
        Alignment selection for escaping-edge precision: one, rep or all.
    """

    def __init__(self, measure: str = "rec_TB", policy_seed: int = 0, k: int = 2,
                 window: Union[int, str] = negev.MAX, etc_variant: str = "one"):
        self.measure = measure
        self.policy_seed = policy_seed
        self.k = k
        self.window = window
        self.etc_variant = etc_variant

    def _config(self) -> MeasureConfig:
        check_positive_int("k", self.k)
        return MeasureConfig(policy_seed=self.policy_seed, k=self.k, window=self.window,
                             etc_variant=self.etc_variant)

    def fit(self, model, y=None) -> "ConformanceMeasure":
        self.info_ = get_measure(self.measure)
        self.model_ = check_model(model, self.info_)
        self.config_ = self._config()
        return self

    def evaluate(self, log: EventLog) -> MeasureValue:
        check_is_fitted(self, "model_")
        return self.info_(check_log(log), self.model_, self.config_)

    def score(self, log: EventLog, y=None) -> float:
        """Measure value as a float; raises UndefinedMeasureError when undefined."""
        v = self.evaluate(log)
        if not v.defined:
            raise UndefinedMeasureError(v.reason or "undefined")
        return v.value


class RecallMeasure(ConformanceMeasure):
    """Recall measure estimator; defaults to case-level fitness."""

    def __init__(self, measure: str = "rec_FB", policy_seed: int = 0, k: int = 2,
                 window: Union[int, str] = negev.MAX, etc_variant: str = "one"):
        super().__init__(measure, policy_seed, k, window, etc_variant)


class PrecisionMeasure(ConformanceMeasure):
    """Precision measure estimator; defaults to trace-based precision."""

    def __init__(self, measure: str = "prec_TB", policy_seed: int = 0, k: int = 2,
                 window: Union[int, str] = negev.MAX, etc_variant: str = "one"):
        super().__init__(measure, policy_seed, k, window, etc_variant)


class GeneralizationMeasure(ConformanceMeasure):
    """Generalization measure estimator; defaults to negative-event generalization."""

    def __init__(self, measure: str = "gen_T", policy_seed: int = 0, k: int = 2,
                 window: Union[int, str] = negev.MAX, etc_variant: str = "one"):
        super().__init__(measure, policy_seed, k, window, etc_variant)
