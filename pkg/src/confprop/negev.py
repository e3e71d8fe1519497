"""Artificial negative events, confusion replay and the measures built on them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

from .eventlog import EventLog, Trace
from .replay import DEFAULT_POLICY, ReplayPolicy, _require_net, replay_trace
from .values import MeasureValue

START = "⊳"  # start-of-trace marker used in contexts
MAX = "MAX"
Window = Union[int, str, None]


@dataclass(frozen=True)
class NegativeAnnotatedLog:
    """Log plus, for every variant and position, the negative activities and weights."""

    log: EventLog
    negatives: Dict[Trace, Tuple[Tuple[Tuple[str, Fraction], ...], ...]]
    window: int
    weighted: bool

    def n_negatives(self) -> int:
        return sum(n * sum(len(pos) for pos in self.negatives[t]) for t, n in self.log.items())

    def dump(self) -> str:
        """One line per event: ``pos i: event a; neg: b(0.5) c(1.0)``."""
        lines = []
        for t in self.log:
            lines.append(f"trace: {' '.join(t) or '<empty>'}")
            for i, a in enumerate(t):
                negs = " ".join(f"{b}({float(w):.4g})" for b, w in self.negatives[t][i])
                lines.append(f"pos {i}: event {a}; neg: {negs}")
        return "\n".join(lines) + "\n"


def _resolve_window(log: EventLog, window: Window) -> int:
    longest = max((len(t) for t in log.variants), default=1)
    if window is None or window == MAX:
        return max(1, longest)
    w = int(window)
    if w < 1:
        raise ValueError("window must be >= 1 or MAX")
    return w


def _followers(log: EventLog, max_len: int) -> Dict[Tuple[str, ...], Set[str]]:
    """Map every context (suffix of a padded prefix, up to ``max_len``) to its next activities."""
    follow: Dict[Tuple[str, ...], Set[str]] = {}
    for t in log.variants:
        padded = (START,) + t
        for i in range(len(t)):
            prefix = padded[:i + 1]
            for length in range(1, min(max_len, len(prefix)) + 1):
                follow.setdefault(prefix[-length:], set()).add(t[i])
    return follow


def induce_negatives(log: EventLog, window: Window = MAX, weighted: bool = False,
                     alphabet: Iterable[str] = ()) -> NegativeAnnotatedLog:
    """Negative events from contiguous prefix contexts.

    At position ``i`` the context is the last ``min(window, i + 1)`` symbols of
    the start-padded prefix. An activity is negative when it never follows that
    context anywhere in the log. With ``weighted``, the weight is
    ``(Lw - L + 1) / Lw`` where ``Lw`` is the context length and ``L`` the
    shortest context length at which the activity already never follows.
    """
    k = _resolve_window(log, window)
    symbols = sorted(set(log.alphabet) | set(alphabet))
    follow = _followers(log, k)
    out: Dict[Trace, Tuple[Tuple[Tuple[str, Fraction], ...], ...]] = {}
    for t in log:
        padded = (START,) + t
        per_pos = []
        for i in range(len(t)):
            prefix = padded[:i + 1]
            lw = min(k, len(prefix))
            nexts = follow.get(prefix[-lw:], set())
            negs = []
            for a in symbols:
                if a in nexts:
                    continue
                if weighted:
                    shortest = next(length for length in range(1, lw + 1)
                                    if a not in follow.get(prefix[-length:], set()))
                    w = Fraction(lw - shortest + 1, lw)
                else:
                    w = Fraction(1)
                negs.append((a, w))
            per_pos.append(tuple(negs))
        out[t] = tuple(per_pos)
    return NegativeAnnotatedLog(log, out, k, weighted)


@dataclass
class ConfusionCounts:
    tp: Fraction = Fraction(0)
    fn: Fraction = Fraction(0)
    fp: Fraction = Fraction(0)
    tn: Fraction = Fraction(0)


@dataclass
class GeneralizationCounts:
    ag: Fraction = Fraction(0)
    dg: Fraction = Fraction(0)


def confusion_replay(nl: NegativeAnnotatedLog, model, policy: ReplayPolicy = DEFAULT_POLICY
                     ) -> Tuple[ConfusionCounts, GeneralizationCounts]:
    net = _require_net(model)
    cc = ConfusionCounts()
    gc = GeneralizationCounts()
    for t, n in nl.log.items():
        res = replay_trace(net, t, policy)
        for i, step in enumerate(res.steps):
            if step.ok:
                cc.tp += n
            else:
                cc.fn += n
            for b, w in nl.negatives[t][i]:
                if b in step.enabled_labels:
                    cc.fp += n * w
                    gc.ag += n * (1 - w)
                else:
                    cc.tn += n * w
                    gc.dg += n * (1 - w)
    return cc, gc


def rec_D(log: EventLog, model, policy: ReplayPolicy = DEFAULT_POLICY) -> MeasureValue:
    if not log:
        return MeasureValue.undefined("empty log")
    cc, _ = confusion_replay(induce_negatives(log, MAX), model, policy)
    if cc.tp + cc.fn == 0:
        return MeasureValue.undefined("log has no events")
    return MeasureValue.of(cc.tp / (cc.tp + cc.fn))


def prec_M(log: EventLog, model, window: Window = MAX, policy: ReplayPolicy = DEFAULT_POLICY) -> MeasureValue:
    if not log:
        return MeasureValue.undefined("empty log")
    cc, _ = confusion_replay(induce_negatives(log, window), model, policy)
    if cc.tn + cc.fp == 0:
        return MeasureValue.undefined("no negative events induced")
    return MeasureValue.of(cc.tn / (cc.tn + cc.fp))


def prec_N(log: EventLog, model, window: Window = MAX, policy: ReplayPolicy = DEFAULT_POLICY) -> MeasureValue:
    if not log:
        return MeasureValue.undefined("empty log")
    cc, _ = confusion_replay(induce_negatives(log, window), model, policy)
    if cc.tp + cc.fp == 0:
        return MeasureValue.undefined("no positive or false-positive events")
    return MeasureValue.of(cc.tp / (cc.tp + cc.fp))


def prec_O(log: EventLog, model, window: Window = MAX, policy: ReplayPolicy = DEFAULT_POLICY) -> MeasureValue:
    if not log:
        return MeasureValue.undefined("empty log")
    cc, _ = confusion_replay(induce_negatives(log, window, weighted=True), model, policy)
    if cc.tp + cc.fp == 0:
        return MeasureValue.undefined("no positive or false-positive events")
    return MeasureValue.of(cc.tp / (cc.tp + cc.fp))


def gen_T(log: EventLog, model, window: Window = MAX, policy: ReplayPolicy = DEFAULT_POLICY) -> MeasureValue:
    if not log:
        return MeasureValue.undefined("empty log")
    _, gc = confusion_replay(induce_negatives(log, window, weighted=True), model, policy)
    if gc.ag + gc.dg == 0:
        return MeasureValue.of(1)
    return MeasureValue.of(gc.ag / (gc.ag + gc.dg))
