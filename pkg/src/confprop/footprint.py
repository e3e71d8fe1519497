"""Causal footprints, follows/precedes relation sets, rec_A and prec_J."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .eventlog import EventLog
from .procmodel.language import ModelLanguage, NetDerived, as_language
from .procmodel.net import LabeledNet
from .procmodel.statespace import state_space
from .values import MeasureValue, ResourceError, UnboundedNetError

CHOICE, CAUSAL, REVERSE, PARALLEL = "#", "->", "<-", "||"
Pair = Tuple[str, str]


@dataclass(frozen=True)
class FootprintMatrix:
    alphabet: Tuple[str, ...]
    follows: FrozenSet[Pair]  # directly-follows pairs

    def rel(self, a: str, b: str) -> str:
        ab = (a, b) in self.follows
        ba = (b, a) in self.follows
        if ab and ba:
            return PARALLEL
        if ab:
            return CAUSAL
        if ba:
            return REVERSE
        return CHOICE

    def over(self, alphabet: Iterable[str]) -> "FootprintMatrix":
        return FootprintMatrix(tuple(sorted(set(alphabet))), self.follows)

    def table(self) -> str:
        """Square text table with a header row and column."""
        width = max([len(a) for a in self.alphabet] + [2])
        head = " " * width + " " + " ".join(a.rjust(width) for a in self.alphabet)
        rows = [head]
        for a in self.alphabet:
            cells = " ".join(self.rel(a, b).rjust(width) for b in self.alphabet)
            rows.append(a.rjust(width) + " " + cells)
        return "\n".join(rows) + "\n"


def directly_follows_of_log(log: EventLog) -> Set[Pair]:
    return {(t[i], t[i + 1]) for t in log.variants for i in range(len(t) - 1)}


def directly_follows_of_model(model) -> Set[Pair]:
    """Exact directly-follows pairs of a regular language.

    Every state of the trimmed minimal automaton lies on an accepting path, so
    a pair (x, y) occurs in some word iff some state has an incoming x-edge and
    an outgoing y-edge.
    """
    d = as_language(model).dfa()
    incoming: Dict[int, Set[str]] = {}
    for (_, a), r in d.delta.items():
        incoming.setdefault(r, set()).add(a)
    pairs = set()
    for q, ins in incoming.items():
        for y, _ in d.out(q):
            for x in ins:
                pairs.add((x, y))
    return pairs


def footprint_of_log(log: EventLog, alphabet: Iterable[str] = ()) -> FootprintMatrix:
    return FootprintMatrix(tuple(sorted(set(alphabet) | set(log.alphabet))),
                           frozenset(directly_follows_of_log(log)))


def footprint_of_model(model, bound: Optional[int] = None,
                       alphabet: Iterable[str] = ()) -> FootprintMatrix:
    """Footprint of the model language.

    ``bound`` is accepted for interface compatibility; the relation is read
    from the language automaton, which covers loops without unrolling.
    """
    lang = as_language(model)
    return FootprintMatrix(tuple(sorted(set(alphabet) | set(lang.alphabet))),
                           frozenset(directly_follows_of_model(lang)))


def mismatches(a: FootprintMatrix, b: FootprintMatrix, alphabet: Sequence[str]) -> int:
    return sum(1 for x in alphabet for y in alphabet if a.rel(x, y) != b.rel(x, y))


def rec_A(log: EventLog, model, alphabet: Optional[Iterable[str]] = None) -> MeasureValue:
    lang = as_language(model)
    symbols = sorted(set(log.alphabet) | set(lang.alphabet) if alphabet is None else set(alphabet))
    if not symbols:
        return MeasureValue.undefined("empty alphabet")
    fl = footprint_of_log(log, symbols)
    fm = footprint_of_model(lang, alphabet=symbols)
    return MeasureValue.of(1 - Fraction(mismatches(fl, fm, symbols), len(symbols) ** 2))


# ---------------------------------------------------------------------------
# follows / precedes relation sets

@dataclass(frozen=True)
class RelationSets:
    sometimes_follows: FrozenSet[Pair]
    sometimes_precedes: FrozenSet[Pair]


def _log_relations(log: EventLog) -> RelationSets:
    seen_f: Dict[Pair, Set[bool]] = {}
    seen_p: Dict[Pair, Set[bool]] = {}
    symbols = sorted(log.alphabet)
    for t in log.variants:
        for i, a in enumerate(t):
            after = set(t[i + 1:])
            before = set(t[:i])
            for b in symbols:
                seen_f.setdefault((a, b), set()).add(b in after)
                seen_p.setdefault((a, b), set()).add(b in before)
    return RelationSets(frozenset(p for p, v in seen_f.items() if len(v) == 2),
                        frozenset(p for p, v in seen_p.items() if len(v) == 2))


class _Graph:
    """Labelled graph with a start node and accepting nodes.

    Edge actors are transition ids for nets and symbols for automata; each
    actor carries an activity label (``None`` for silent actors).
    """

    def __init__(self, n: int, start: int, finals: Set[int],
                 edges: List[Tuple[int, str, int]], label: Dict[str, Optional[str]]):
        self.n, self.start, self.finals = n, start, finals
        self.edges = edges
        self.label = label
        self.symbols = sorted({a for a in label.values() if a is not None})

    def _closure(self, seeds: Iterable[int], forward: bool, avoid: Optional[str] = None) -> Set[int]:
        adj: Dict[int, List[int]] = {}
        for u, actor, v in self.edges:
            if avoid is not None and self.label[actor] == avoid:
                continue
            if forward:
                adj.setdefault(u, []).append(v)
            else:
                adj.setdefault(v, []).append(u)
        seen = set(seeds)
        stack = list(seen)
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def relations(self) -> RelationSets:
        coreach = self._closure(self.finals, forward=False)
        reach = self._closure([self.start], forward=True)
        contexts = [(u, actor, v) for u, actor, v in self.edges
                    if u in reach and v in coreach and self.label[actor] is not None]
        follows: Set[Pair] = set()
        precedes: Set[Pair] = set()
        for b in self.symbols:
            b_src = {u for u, actor, v in self.edges if self.label[actor] == b and v in coreach}
            b_dst = {v for u, actor, v in self.edges if self.label[actor] == b and u in reach}
            # nodes with a completing run that contains / avoids b
            with_b = self._closure(b_src, forward=False)
            no_b = self._closure(self.finals, forward=False, avoid=b)
            # nodes reachable by a run that contains / avoids b
            from_b = self._closure(b_dst, forward=True)
            pre_no_b = self._closure([self.start], forward=True, avoid=b)
            flags_f: Dict[str, Set[bool]] = {}
            flags_p: Dict[str, Set[bool]] = {}
            for u, actor, v in contexts:
                ff = flags_f.setdefault(actor, set())
                if v in with_b:
                    ff.add(True)
                if v in no_b:
                    ff.add(False)
                fp = flags_p.setdefault(actor, set())
                if u in from_b:
                    fp.add(True)
                if u in pre_no_b:
                    fp.add(False)
            for actor, fl in flags_f.items():
                if len(fl) == 2:
                    follows.add((self.label[actor], b))
            for actor, fl in flags_p.items():
                if len(fl) == 2:
                    precedes.add((self.label[actor], b))
        return RelationSets(frozenset(follows), frozenset(precedes))


def _net_graph(net: LabeledNet) -> _Graph:
    ss = state_space(net)
    return _Graph(len(ss), 0, set(ss.final_nodes), list(ss.edges()), dict(net.transitions))


def _dfa_graph(lang: ModelLanguage) -> _Graph:
    d = lang.dfa()
    edges = [(q, a, r) for (q, a), r in d.delta.items()]
    return _Graph(d.n, d.initial, set(d.accepting), edges, {a: a for a in d.alphabet})


def relation_sets(x, bound: Optional[int] = None) -> RelationSets:
    """Sometimes-follows and sometimes-precedes pairs of a log or model.

    ``(a, b)`` is sometimes-follows when, over the occurrences of ``a``, ``b``
    occurs later in some but not all completions. Precedes reads backwards.
    Net models are evaluated per transition, so two transitions sharing a
    label are judged separately before their pairs are merged by label.
    """
    if isinstance(x, EventLog):
        return _log_relations(x)
    lang = as_language(x)
    if isinstance(lang, NetDerived):
        return _net_graph(lang.net).relations()
    return _dfa_graph(lang).relations()


def _ratio(observed: FrozenSet[Pair], modelled: FrozenSet[Pair]) -> Optional[Fraction]:
    if not modelled:
        return None
    return Fraction(len(observed & modelled), len(modelled))


def prec_J(log: EventLog, model, on_vacuous: str = "undefined") -> MeasureValue:
    """Advanced behavioral appropriateness.

    ``on_vacuous`` selects the treatment of a model without sometimes
    relations in one direction: ``"undefined"`` (no value) or ``"one"``
    (that half contributes 1).
    """
    if on_vacuous not in ("undefined", "one"):
        raise ValueError("on_vacuous must be 'undefined' or 'one'")
    try:
        rm = relation_sets(model)
    except (UnboundedNetError, ResourceError) as exc:
        return MeasureValue.undefined(f"model state space not explorable: {exc}")
    rl = relation_sets(log)
    parts = [_ratio(rl.sometimes_follows, rm.sometimes_follows),
             _ratio(rl.sometimes_precedes, rm.sometimes_precedes)]
    if any(p is None for p in parts):
        if on_vacuous == "undefined":
            return MeasureValue.undefined("model has no sometimes relations")
        parts = [Fraction(1) if p is None else p for p in parts]
    return MeasureValue.of((parts[0] + parts[1]) / 2)
