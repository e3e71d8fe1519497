"""Projected recall and precision over all activity subsets of a fixed size."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from ..eventlog import EventLog
from ..values import MeasureValue
from .dfa import Dfa, dfa_from_words, minimize, project_dfa


def dfa_of_log(log: EventLog, alphabet: Iterable[str] = ()) -> Dfa:
    """Minimal DFA accepting exactly the trace variants of ``log``."""
    return dfa_from_words(log.variants, set(alphabet) | set(log.alphabet))


def dfa_of_model(model) -> Dfa:
    from ..procmodel.language import model_dfa
    return model_dfa(model)


def project(x, keep: Iterable[str]) -> Dfa:
    """Minimal DFA of the language of ``x`` with symbols outside ``keep`` erased."""
    keep = set(keep)
    if not keep:
        raise ValueError("projection alphabet must be non-empty")
    if isinstance(x, EventLog):
        words = {tuple(a for a in t if a in keep) for t in x.variants}
        return dfa_from_words(words, keep)
    return project_dfa(dfa_of_model(x), keep)


def _subsets(alphabet: Sequence[str], k: int) -> List[Tuple[str, ...]]:
    k = max(1, min(k, len(alphabet)))
    return list(combinations(sorted(alphabet), k))


def _alphabet(log: EventLog, model, alphabet) -> List[str]:
    if alphabet is not None:
        return sorted(set(alphabet))
    return sorted(set(log.alphabet) | set(dfa_of_model(model).alphabet))


def projected_recall(log: EventLog, model, subset: Sequence[str]) -> Fraction:
    """Frequency of projected log traces accepted by the projected model."""
    mdfa = project(model, subset)
    keep = set(subset)
    hit = sum(n for t, n in log.items() if mdfa.accepts(tuple(a for a in t if a in keep)))
    return Fraction(hit, log.size)


def rec_E(log: EventLog, model, k: int = 2, alphabet: Optional[Iterable[str]] = None) -> MeasureValue:
    if k < 1:
        raise ValueError("subset size must be >= 1")
    if not log:
        return MeasureValue.undefined("empty log")
    symbols = _alphabet(log, model, alphabet)
    if not symbols:
        return MeasureValue.undefined("empty alphabet")
    values = [projected_recall(log, model, s) for s in _subsets(symbols, k)]
    return MeasureValue.of(sum(values, Fraction(0)) / len(values))


def _paired_product(m: Dfa, lg: Dfa) -> Tuple[List[Tuple[int, int]], Dict[int, List[int]]]:
    """Trimmed intersection of ``m`` and ``lg`` keeping the paired model state of each node."""
    start = (m.initial, lg.initial)
    index = {start: 0}
    order = [start]
    succ: Dict[int, List[int]] = {}
    i = 0
    while i < len(order):
        p, q = order[i]
        succ[i] = []
        for a, p2 in m.out(p):
            q2 = lg.delta.get((q, a))
            if q2 is None:
                continue
            tgt = (p2, q2)
            j = index.get(tgt)
            if j is None:
                j = index[tgt] = len(order)
                order.append(tgt)
            succ[i].append(j)
        i += 1
    live: Set[int] = {k for k, (p, q) in enumerate(order) if p in m.accepting and q in lg.accepting}
    changed = True
    while changed:
        changed = False
        for k, nxt in succ.items():
            if k not in live and any(j in live for j in nxt):
                live.add(k)
                changed = True
    keep = [k for k in range(len(order)) if k in live]
    trimmed = {k: [j for j in succ[k] if j in live] for k in keep}
    return [order[k] for k in keep], {pos: trimmed[k] for pos, k in enumerate(keep)}


def projected_precision(log: EventLog, model, subset: Sequence[str]) -> Optional[Fraction]:
    """Edge ratio of the log/model conjunction over the paired model states.

    Returns ``None`` when the projected model language is empty.
    """
    mdfa = project(model, subset)
    if mdfa.is_empty():
        return None
    ldfa = project(log, subset)
    nodes, succ = _paired_product(mdfa, ldfa)
    if not nodes:
        return Fraction(0)
    used = sum(len(v) for v in succ.values())
    allowed = sum(len(mdfa.out(p)) for p, _ in nodes)
    if allowed == 0:
        return Fraction(1)
    return min(Fraction(1), Fraction(used, allowed))


def prec_P(log: EventLog, model, k: int = 2, alphabet: Optional[Iterable[str]] = None) -> MeasureValue:
    if k < 1:
        raise ValueError("subset size must be >= 1")
    if not log:
        return MeasureValue.undefined("empty log")
    symbols = _alphabet(log, model, alphabet)
    if not symbols:
        return MeasureValue.undefined("empty alphabet")
    values = [v for v in (projected_precision(log, model, s) for s in _subsets(symbols, k))
              if v is not None]
    if not values:
        return MeasureValue.of(1)
    return MeasureValue.of(sum(values, Fraction(0)) / len(values))
