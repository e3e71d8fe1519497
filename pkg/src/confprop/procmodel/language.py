"""Model languages: explicit trace sets, net-derived languages and automata."""
from __future__ import annotations

from typing import FrozenSet, Iterable, Optional, Set

from ..automata.dfa import (Dfa, Nfa, complement, determinize, dfa_from_words, minimize,
                            universal_dfa)
from ..eventlog import EventLog, Trace
from .net import LabeledNet
from .statespace import state_space


class ModelLanguage:
    """A trace language τ(m). Subclasses supply :meth:`dfa`."""

    def dfa(self) -> Dfa:
        raise NotImplementedError

    @property
    def alphabet(self) -> FrozenSet[str]:
        return frozenset(self.dfa().alphabet)

    def fits(self, trace: Iterable[str]) -> bool:
        return self.dfa().accepts(tuple(trace))

    def is_infinite(self) -> bool:
        return self.dfa().has_cycle()

    def is_empty(self) -> bool:
        return self.dfa().is_empty()

    def enumerate(self, max_len: int) -> Set[Trace]:
        return set(self.dfa().words(max_len))

    def traces(self) -> Set[Trace]:
        """All traces of a finite language."""
        d = self.dfa()
        if d.has_cycle():
            raise ValueError("language is infinite")
        return set(d.words(d.n))

    @property
    def net(self) -> Optional[LabeledNet]:
        return None


class FiniteSet(ModelLanguage):
    def __init__(self, traces: Iterable[Iterable[str]], alphabet: Iterable[str] = ()):
        self.trace_set: FrozenSet[Trace] = frozenset(tuple(t) for t in traces)
        self._alphabet = frozenset(alphabet) | {a for t in self.trace_set for a in t}
        self._dfa: Optional[Dfa] = None

    def dfa(self) -> Dfa:
        if self._dfa is None:
            self._dfa = dfa_from_words(self.trace_set, self._alphabet)
        return self._dfa

    def fits(self, trace) -> bool:
        return tuple(trace) in self.trace_set

    def is_infinite(self) -> bool:
        return False

    def traces(self) -> Set[Trace]:
        return set(self.trace_set)

    def enumerate(self, max_len: int) -> Set[Trace]:
        return {t for t in self.trace_set if len(t) <= max_len}

    def __repr__(self) -> str:
        return f"FiniteSet({len(self.trace_set)} traces)"


class NetDerived(ModelLanguage):
    def __init__(self, net: LabeledNet, cap: Optional[int] = None):
        self._net = net
        self.cap = cap

    @property
    def net(self) -> LabeledNet:
        return self._net

    def dfa(self) -> Dfa:
        if self.cap is not None:
            return _net_dfa(self._net, self.cap)
        return self._net.cached("dfa", lambda: _net_dfa(self._net, None))

    def __repr__(self) -> str:
        return f"NetDerived({self._net!r})"


class Automaton(ModelLanguage):
    def __init__(self, dfa: Dfa):
        self._dfa = minimize(dfa)

    def dfa(self) -> Dfa:
        return self._dfa

    def __repr__(self) -> str:
        return f"Automaton({self._dfa!r})"


def _net_dfa(net: LabeledNet, cap: Optional[int]) -> Dfa:
    ss = state_space(net, cap)
    edges = [(i, net.transitions[t], j) for i, t, j in ss.edges()]
    nfa = Nfa(len(ss), [0], ss.final_nodes, edges)
    return minimize(determinize(nfa, net.alphabet))


def as_language(model) -> ModelLanguage:
    """Coerce a net, automaton, trace collection or log to a :class:`ModelLanguage`."""
    if isinstance(model, ModelLanguage):
        return model
    if isinstance(model, LabeledNet):
        return NetDerived(model)
    if isinstance(model, Dfa):
        return Automaton(model)
    if isinstance(model, EventLog):
        return FiniteSet(model.variants)
    if isinstance(model, (set, frozenset, list, tuple)):
        return FiniteSet(model)
    raise TypeError(f"cannot interpret {type(model).__name__} as a model language")


def model_dfa(model) -> Dfa:
    return as_language(model).dfa()


def fits(lang, trace) -> bool:
    return as_language(lang).fits(trace)


def enumerate_language(lang, max_len: int) -> Set[Trace]:
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    return as_language(lang).enumerate(max_len)


def reference_model(kind: str, log: EventLog, alphabet: Iterable[str] = ()) -> ModelLanguage:
    """Overfitting (``ofit``), underfitting (``ufit``) or non-fitting (``nfit``) model of a log."""
    symbols = set(alphabet) | set(log.alphabet)
    if kind == "ofit":
        return FiniteSet(log.variants, symbols)
    if kind == "ufit":
        return Automaton(universal_dfa(symbols))
    if kind == "nfit":
        if not symbols:
            raise ValueError("nfit requires a non-empty alphabet")
        return Automaton(complement(dfa_from_words(log.variants, symbols), symbols))
    raise ValueError(f"unknown reference model kind {kind!r}")
