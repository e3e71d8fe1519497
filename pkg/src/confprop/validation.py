"""Input checks shared by the estimator classes and the command line."""
from __future__ import annotations

from .eventlog import EventLog
from .procmodel.language import ModelLanguage, as_language
from .procmodel.net import LabeledNet
from .automata.dfa import Dfa
from .measures import MeasureInfo
from .values import ConfpropError


def check_log(log) -> EventLog:
    if not isinstance(log, EventLog):
        raise TypeError(f"expected an EventLog, got {type(log).__name__}")
    return log


def check_model(model, info: MeasureInfo):
    """Validate that ``model`` can be evaluated by ``info``; returns it unchanged."""
    if info.needs_net:
        if isinstance(model, LabeledNet) or isinstance(getattr(model, "net", None), LabeledNet):
            return model
        raise ConfpropError(f"{info.id} needs a Petri net model")
    if isinstance(model, (LabeledNet, ModelLanguage, Dfa)):
        return model
    return as_language(model)


def check_positive_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return value
