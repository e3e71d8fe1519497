"""Eigenvalue-based language measures: rec_G and prec_R.

A language is made irreducible by adding an edge on a fresh symbol from every
accepting state back to the initial state of its trimmed minimal automaton.
The measure of a language is the spectral radius of the transition-count
matrix of the minimal automaton of that short-circuited language.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .automata.dfa import Dfa, dfa_from_words, minimize, product
from .eventlog import EventLog
from .procmodel.language import as_language
from .values import ConfpropError, MeasureValue

TOLERANCE = 1e-10
MAX_ITERATIONS = 10000
CLAMP_SLACK = 1e-9


class ConvergenceError(ConfpropError):
    pass


def _fresh_symbol(alphabet) -> str:
    sym = "#"
    while sym in alphabet:
        sym += "#"
    return sym


@dataclass(frozen=True)
class ShortCircuitDfa:
    """Minimal automaton of a language closed with a fresh back-edge symbol."""

    dfa: Dfa
    symbol: str

    @classmethod
    def of(cls, lang: Dfa) -> Optional["ShortCircuitDfa"]:
        d = minimize(lang)
        if d.is_empty():
            return None
        sym = _fresh_symbol(d.alphabet)
        delta = dict(d.delta)
        for q in d.accepting:
            delta[(q, sym)] = d.initial
        closed = Dfa(d.alphabet + (sym,), d.n, d.initial, d.accepting, delta)
        return cls(minimize(closed), sym)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.dfa.n, self.dfa.n))
        for (q, _), r in self.dfa.delta.items():
            a[q, r] += 1.0
        return a


def spectral_radius(a: np.ndarray, tol: float = TOLERANCE, max_iter: int = MAX_ITERATIONS) -> float:
    """Perron root of an irreducible non-negative matrix by power iteration.

    Iterating on ``a + I`` makes the matrix primitive, so the iteration
    converges even when ``a`` is periodic. The Collatz-Wielandt bounds give
    the stopping rule.
    """
    n = a.shape[0]
    b = a + np.eye(n)
    x = np.ones(n)
    lo = hi = 0.0
    for _ in range(max_iter):
        y = b @ x
        ratios = y / x
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo <= tol * max(1.0, hi):
            return (lo + hi) / 2 - 1.0
        x = y / np.abs(y).max()
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations "
                           f"(bounds {lo!r} .. {hi!r})")


def eig(lang: Dfa) -> float:
    sc = ShortCircuitDfa.of(lang)
    if sc is None:
        return 0.0
    return spectral_radius(sc.adjacency())


def _log_dfa(log: EventLog) -> Dfa:
    return dfa_from_words(log.variants, log.alphabet)


def _ratio(num: float, den: float) -> MeasureValue:
    r = num / den
    if r > 1 + CLAMP_SLACK:
        raise ConfpropError(f"eigenvalue ratio {r} exceeds 1")
    return MeasureValue.of(min(1.0, max(0.0, r)))


def rec_G(log: EventLog, model) -> MeasureValue:
    if not log:
        return MeasureValue.undefined("empty log")
    ld = _log_dfa(log)
    md = as_language(model).dfa()
    return _ratio(eig(product(ld, md)), eig(ld))


def prec_R(log: EventLog, model) -> MeasureValue:
    md = as_language(model).dfa()
    if md.is_empty():
        return MeasureValue.undefined("empty model language")
    ld = _log_dfa(log)
    return _ratio(eig(product(md, ld)), eig(md))
