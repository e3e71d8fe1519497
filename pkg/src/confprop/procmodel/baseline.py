"""Trace-based and frequency-based baseline measures."""
from __future__ import annotations

from fractions import Fraction

from ..eventlog import EventLog
from ..values import MeasureValue
from .language import as_language


def rec_TB(log: EventLog, model) -> MeasureValue:
    if not log:
        return MeasureValue.undefined("empty log")
    lang = as_language(model)
    hit = sum(1 for t in log.variants if lang.fits(t))
    return MeasureValue.of(Fraction(hit, len(log)))


def rec_FB(log: EventLog, model) -> MeasureValue:
    if not log:
        return MeasureValue.undefined("empty log")
    lang = as_language(model)
    hit = sum(n for t, n in log.items() if lang.fits(t))
    return MeasureValue.of(Fraction(hit, log.size))


def prec_TB(log: EventLog, model) -> MeasureValue:
    """Soundness: fraction of model traces observed in the log."""
    if not log:
        return MeasureValue.undefined("empty log")
    lang = as_language(model)
    if lang.is_infinite():
        return MeasureValue.undefined("infinite language")
    model_traces = lang.traces()
    if not model_traces:
        return MeasureValue.undefined("empty model language")
    hit = sum(1 for t in log.variants if t in model_traces)
    return MeasureValue.of(Fraction(hit, len(model_traces)))


prec_H = prec_TB
