"""Optimal alignments and the measures derived from them: rec_C, prec_K, prec_L and gen_S.

Cost function: log move 1, visible model move 1, silent model move and
synchronous move 0.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .automata.dfa import Dfa
from .eventlog import EventLog, Trace
from .procmodel.language import as_language
from .procmodel.net import LabeledNet, Marking
from .procmodel.statespace import state_cap
from .replay import DEFAULT_POLICY, SILENT_DEPTH, ReplayPolicy, _replayer, _require_net
from .values import ConfpropError, MeasureValue, ResourceError

PROJECTION_CAP = 1000
REP_SIZE = 10

SYNC, LOG, MODEL = "sync", "log", "model"


@dataclass(frozen=True)
class Move:
    kind: str                    # sync, log or model
    label: Optional[str]         # None for silent model moves
    transition: Optional[str] = None

    @property
    def cost(self) -> int:
        if self.kind == SYNC:
            return 0
        if self.kind == MODEL and self.label is None:
            return 0
        return 1

    def __str__(self) -> str:
        return f"{self.kind} {'~' if self.label is None else self.label}"


@dataclass(frozen=True)
class Alignment:
    moves: Tuple[Move, ...]

    @property
    def cost(self) -> int:
        return sum(m.cost for m in self.moves)

    def log_projection(self) -> Trace:
        return tuple(m.label for m in self.moves if m.kind in (SYNC, LOG))

    def model_projection(self) -> Trace:
        return tuple(m.label for m in self.moves if m.kind in (SYNC, MODEL) and m.label is not None)

    def transitions(self) -> Tuple[str, ...]:
        return tuple(m.transition for m in self.moves if m.kind in (SYNC, MODEL) and m.transition)

    def dump(self) -> str:
        return "\n".join(str(m) for m in self.moves) + "\n"


Node = Tuple[object, int]


class _Search:
    """Optimal-cost search over (system state, trace position) and its tight subgraph."""

    def __init__(self, trace: Trace, start, is_final, moves, h_unknown: Set[str], cap: int):
        self.trace = trace
        n = len(trace)
        # remaining events that can only be log moves: admissible, consistent lower bound
        suffix = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            suffix[i] = suffix[i + 1] + (1 if trace[i] in h_unknown else 0)
        self.start: Node = (start, 0)
        dist: Dict[Node, int] = {self.start: 0}
        done: Set[Node] = set()
        heap = [(suffix[0], 0, 0, self.start)]
        counter = 1
        best: Optional[int] = None
        goals: Set[Node] = set()
        while heap:
            f, g, _, node = heapq.heappop(heap)
            if best is not None and f > best:
                break
            if node in done or g > dist.get(node, g):
                continue
            done.add(node)
            st, pos = node
            if pos == n and is_final(st):
                goals.add(node)
                if best is None:
                    best = g
            for mv, st2, pos2 in self._expand(st, pos, moves):
                nxt = (st2, pos2)
                g2 = g + mv.cost
                if g2 < dist.get(nxt, g2 + 1):
                    if len(dist) >= cap:
                        raise ResourceError(f"alignment search exceeded {cap} states")
                    dist[nxt] = g2
                    heapq.heappush(heap, (g2 + suffix[pos2], g2, counter, nxt))
                    counter += 1
        if best is None:
            raise ConfpropError("model has no run to its final state")
        self.cost = best
        self.goals = goals
        self.dist = {k: v for k, v in dist.items() if k in done}
        self._moves = moves
        self._tight: Optional[Dict[Node, List[Tuple[Move, Node]]]] = None

    def _expand(self, st, pos, moves):
        trace = self.trace
        for mv_trans, label, st2 in moves(st):
            if label is None:
                yield Move(MODEL, None, mv_trans), st2, pos
            else:
                yield Move(MODEL, label, mv_trans), st2, pos
                if pos < len(trace) and trace[pos] == label:
                    yield Move(SYNC, label, mv_trans), st2, pos + 1
        if pos < len(trace):
            yield Move(LOG, trace[pos]), st, pos + 1

    def tight(self) -> Dict[Node, List[Tuple[Move, Node]]]:
        """Edges on optimal paths, restricted to nodes that reach an optimal goal."""
        if self._tight is None:
            succ: Dict[Node, List[Tuple[Move, Node]]] = {}
            rev: Dict[Node, List[Node]] = {}
            for node, g in self.dist.items():
                st, pos = node
                for mv, st2, pos2 in self._expand(st, pos, self._moves):
                    nxt = (st2, pos2)
                    if self.dist.get(nxt) == g + mv.cost:
                        succ.setdefault(node, []).append((mv, nxt))
                        rev.setdefault(nxt, []).append(node)
            live = {gl for gl in self.goals if self.dist[gl] == self.cost}
            stack = list(live)
            while stack:
                v = stack.pop()
                for u in rev.get(v, ()):
                    if u not in live:
                        live.add(u)
                        stack.append(u)
            self._tight = {u: [(mv, v) for mv, v in edges if v in live]
                           for u, edges in succ.items() if u in live}
            self._live = live
        return self._tight

    def is_goal(self, node: Node) -> bool:
        return node in self.goals and self.dist[node] == self.cost

    # projections onto model symbols (transition ids or labels)
    def _closure(self, nodes, key) -> FrozenSet[Node]:
        tight = self.tight()
        seen = set(nodes)
        stack = list(seen)
        while stack:
            u = stack.pop()
            for mv, v in tight.get(u, ()):
                if key(mv) is None and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return frozenset(seen)

    def projections(self, key, order) -> Iterator[Tuple[str, ...]]:
        """Distinct optimal model projections, depth-first with symbols in ``order``.

        ``key`` maps a move to its projected symbol or None (log and silent
        moves). Ending the projection is tried before extending it.
        """
        tight = self.tight()
        start = self._closure([self.start], key)
        stack: List[Tuple[FrozenSet[Node], Tuple[str, ...]]] = [(start, ())]
        while stack:
            subset, word = stack.pop()
            children: Dict[str, Set[Node]] = {}
            for u in subset:
                for mv, v in tight.get(u, ()):
                    sym = key(mv)
                    if sym is not None:
                        children.setdefault(sym, set()).add(v)
            for sym in sorted(children, key=order, reverse=True):
                stack.append((self._closure(children[sym], key), word + (sym,)))
            if any(self.is_goal(u) for u in subset):
                yield word

    def witness(self, key, word: Tuple[str, ...]) -> Tuple[Move, ...]:
        """One optimal move sequence whose projection is ``word``."""
        tight = self.tight()
        start = (self.start, 0)
        prev: Dict[Tuple[Node, int], Optional[Tuple[Tuple[Node, int], Move]]] = {start: None}
        queue = [start]
        i = 0
        while i < len(queue):
            cur = queue[i]
            i += 1
            u, k = cur
            if k == len(word) and self.is_goal(u):
                moves = []
                while prev[cur] is not None:
                    cur, mv = prev[cur][0], prev[cur][1]
                    moves.append(mv)
                return tuple(reversed(moves))
            for mv, v in tight.get(u, ()):
                sym = key(mv)
                if sym is None:
                    nxt = (v, k)
                elif k < len(word) and sym == word[k]:
                    nxt = (v, k + 1)
                else:
                    continue
                if nxt not in prev:
                    prev[nxt] = (cur, mv)
                    queue.append(nxt)
        raise ConfpropError("projection has no witness alignment")


def _visible_key(mv: Move) -> Optional[str]:
    if mv.kind == LOG or mv.label is None:
        return None
    return mv.transition


def _label_key(mv: Move) -> Optional[str]:
    if mv.kind == LOG or mv.label is None:
        return None
    return mv.label


def _net_search(net: LabeledNet, trace: Trace) -> _Search:
    cache = net.cached("align_search", dict)
    got = cache.get(trace)
    if got is None:
        def moves(mk):
            for t in net.enabled(mk):
                yield t, net.label(t), net.fire(mk, t)
        unknown = set(trace) - set(net.alphabet)
        got = cache[trace] = _Search(trace, net.initial, lambda mk: mk == net.final, moves,
                                     unknown, state_cap())
    return got


def _dfa_search(d: Dfa, trace: Trace) -> _Search:
    def moves(q):
        for a, r in d.out(q):
            yield a, a, r
    return _Search(trace, d.initial, lambda q: q in d.accepting, moves,
                   set(trace) - set(d.alphabet), state_cap())


def _order(net: LabeledNet, policy: ReplayPolicy):
    rank = policy.order(net)
    return rank.__getitem__


def optimal_alignment(net: LabeledNet, trace: Sequence[str], mode: str = "one",
                      policy: ReplayPolicy = DEFAULT_POLICY):
    """One optimal alignment (``one``) or one per distinct optimal model run (``all``)."""
    trace = tuple(trace)
    search = _net_search(net, trace)
    order = _order(net, policy)
    if mode == "one":
        word = next(search.projections(_visible_key, order))
        return Alignment(search.witness(_visible_key, word))
    if mode == "all":
        return [Alignment(search.witness(_visible_key, w)) for w in _all_projections(search, net)]
    raise ValueError("mode must be 'one' or 'all'")


def alignment_cost(net: LabeledNet, trace: Sequence[str]) -> int:
    return _net_search(net, tuple(trace)).cost


def _all_projections(search: _Search, net: LabeledNet) -> List[Tuple[str, ...]]:
    out = []
    for w in search.projections(_visible_key, _order(net, DEFAULT_POLICY)):
        out.append(w)
        if len(out) > PROJECTION_CAP:
            raise ResourceError(f"more than {PROJECTION_CAP} optimal alignments")
    return out


def _trace_projections(net: LabeledNet, search: _Search, limit: int) -> List[Tuple[str, ...]]:
    """One run per distinct optimal model trace: the smallest transition sequence."""
    seen: Dict[Tuple[str, ...], Tuple[str, ...]] = {}
    visited = 0
    for w in search.projections(_visible_key, _order(net, DEFAULT_POLICY)):
        visited += 1
        if visited > PROJECTION_CAP * 10:
            raise ResourceError(f"more than {PROJECTION_CAP * 10} optimal alignment runs")
        labels = tuple(net.label(t) for t in w)
        if labels not in seen:
            seen[labels] = w
            if len(seen) > limit:
                break
    return list(seen.values())


def _projections(net: LabeledNet, trace: Trace, variant: str, policy: ReplayPolicy):
    search = _net_search(net, trace)
    if variant == "one":
        return [next(search.projections(_visible_key, _order(net, policy)))]
    if variant == "rep":
        return _trace_projections(net, search, REP_SIZE)[:REP_SIZE]
    if variant == "all":
        runs = _trace_projections(net, search, PROJECTION_CAP)
        if len(runs) > PROJECTION_CAP:
            raise ResourceError(f"more than {PROJECTION_CAP} optimal aligned traces")
        return runs
    raise ValueError("variant must be 'one', 'rep' or 'all'")


def aligned_runs(log: EventLog, net: LabeledNet, variant: str = "one",
                 policy: ReplayPolicy = DEFAULT_POLICY) -> List[Tuple[Fraction, Tuple[str, ...]]]:
    """Weighted visible-transition sequences of the aligned log.

    ``one`` keeps the optimal run ranked first by ``policy``. ``all`` keeps
    every distinct optimal model trace and ``rep`` the first ten of them in
    canonical order; each model trace is represented by its smallest run, so
    both are independent of the policy.
    """
    runs = []
    for t, n in log.items():
        words = _projections(net, t, variant, policy)
        share = Fraction(n, len(words))
        runs.extend((share, w) for w in words)
    return runs


def align_log(log: EventLog, net: LabeledNet, variant: str = "one",
              policy: ReplayPolicy = DEFAULT_POLICY) -> Dict[Trace, Fraction]:
    """Model projections of the optimal alignments, silent moves dropped.

    Weights are case counts; under ``all`` and ``rep`` a case is split evenly
    over its projections.
    """
    out: Dict[Trace, Fraction] = {}
    for w, run in aligned_runs(log, net, variant, policy):
        labels = tuple(net.label(t) for t in run)
        out[labels] = out.get(labels, Fraction(0)) + w
    return out


def rec_C(log: EventLog, model) -> MeasureValue:
    if not log:
        return MeasureValue.undefined("empty log")
    net = _require_net(model)
    fcost = sum(n * alignment_cost(net, t) for t, n in log.items())
    move_l = sum(n * len(t) for t, n in log.items())
    move_m = alignment_cost(net, ())
    den = move_l + log.size * move_m
    if den == 0:
        return MeasureValue.of(1)
    return MeasureValue.of(1 - Fraction(fcost, den))


# ---------------------------------------------------------------------------
# escaping-edge precision

@dataclass
class AlignmentAutomaton:
    """Prefix automaton of the aligned log with weights and used/allowed transitions."""

    weight: Dict[Tuple[str, ...], Fraction]
    used: Dict[Tuple[str, ...], FrozenSet[str]]
    allowed: Dict[Tuple[str, ...], FrozenSet[str]]

    def precision(self) -> Optional[Fraction]:
        num = sum(self.weight[s] * len(self.used[s]) for s in self.weight)
        den = sum(self.weight[s] * len(self.allowed[s]) for s in self.weight)
        return None if den == 0 else Fraction(num) / den


def alignment_automaton(net: LabeledNet, runs: Sequence[Tuple[Fraction, Tuple[str, ...]]]
                        ) -> AlignmentAutomaton:
    rp = _replayer(net, DEFAULT_POLICY)
    weight: Dict[Tuple[str, ...], Fraction] = {}
    used: Dict[Tuple[str, ...], Set[str]] = {}
    for w, run in runs:
        for i in range(len(run) + 1):
            s = run[:i]
            weight[s] = weight.get(s, Fraction(0)) + w
            used.setdefault(s, set())
            if i < len(run):
                used[s].add(run[i])
    markings: Dict[Tuple[str, ...], FrozenSet[Marking]] = {(): frozenset([net.initial])}
    allowed: Dict[Tuple[str, ...], FrozenSet[str]] = {}
    for s in sorted(weight, key=len):
        mks = markings[s]
        closure = set()
        for mk in mks:
            closure.update(rp.silent_reach(mk))
        allowed[s] = frozenset(t for t in rp.visible for mk in closure if net.is_enabled(mk, t))
        for t in used[s]:
            markings[s + (t,)] = frozenset(net.fire(mk, t) for mk in closure if net.is_enabled(mk, t))
    return AlignmentAutomaton(weight, {s: frozenset(v) for s, v in used.items()}, allowed)


def etc_precision(log: EventLog, model, variant: str = "one",
                  policy: ReplayPolicy = DEFAULT_POLICY) -> MeasureValue:
    if not log:
        return MeasureValue.undefined("empty log")
    net = _require_net(model)
    value = alignment_automaton(net, aligned_runs(log, net, variant, policy)).precision()
    if value is None:
        return MeasureValue.undefined("no allowed behavior in visited states")
    return MeasureValue.of(value)


def prec_K(log: EventLog, model, policy: ReplayPolicy = DEFAULT_POLICY, variant: str = "one") -> MeasureValue:
    return etc_precision(log, model, variant, policy)


def prec_L(log: EventLog, model, policy: ReplayPolicy = DEFAULT_POLICY) -> MeasureValue:
    return etc_precision(log, model, "all", policy)


# ---------------------------------------------------------------------------
# alignment generalization

def canonical_alignment(d: Dfa, trace: Sequence[str]) -> Trace:
    """Shortest, then lexicographically smallest, model trace among optimal alignments."""
    search = _dfa_search(d, tuple(trace))
    tight = search.tight()
    memo: Dict[FrozenSet[Node], Optional[int]] = {}

    def children(subset):
        out: Dict[str, Set[Node]] = {}
        for u in subset:
            for mv, v in tight.get(u, ()):
                sym = _label_key(mv)
                if sym is not None:
                    out.setdefault(sym, set()).add(v)
        return {a: search._closure(vs, _label_key) for a, vs in out.items()}

    def remaining(subset) -> Optional[int]:
        if subset in memo:
            return memo[subset]
        memo[subset] = None
        if any(search.is_goal(u) for u in subset):
            best = 0
        else:
            lens = [r for r in (remaining(c) for c in children(subset).values()) if r is not None]
            best = 1 + min(lens) if lens else None
        memo[subset] = best
        return best

    subset = search._closure([search.start], _label_key)
    word: List[str] = []
    while remaining(subset) != 0:
        target = remaining(subset) - 1
        kids = children(subset)
        a = min(x for x, c in kids.items() if remaining(c) == target)
        word.append(a)
        subset = kids[a]
    return tuple(word)


def _pnew(w: int, n: int) -> Fraction:
    if n < 2:
        return Fraction(1)
    return min(Fraction(1), Fraction(w * (w + 1), n * (n - 1)))


def gen_S(log: EventLog, model, policy: ReplayPolicy = DEFAULT_POLICY, state: str = "language") -> MeasureValue:
    """Alignment generalization.

    ``state="language"`` identifies a state with the minimal model automaton
    state reached by the aligned prefix. ``state="marking"`` uses the set of
    net markings reached instead (requires a net and uses the ``one``
    alignment chosen by ``policy``).
    """
    if not log:
        return MeasureValue.undefined("empty log")
    visits: Dict[object, int] = {}
    seen: Dict[object, Set[str]] = {}
    events: List[Tuple[int, object]] = []
    if state == "language":
        d = as_language(model).dfa()
        for t, n in log.items():
            q = d.initial
            for a in canonical_alignment(d, t):
                visits[q] = visits.get(q, 0) + n
                seen.setdefault(q, set()).add(a)
                events.append((n, q))
                q = d.delta[(q, a)]
    elif state == "marking":
        net = _require_net(model)
        rp = _replayer(net, policy)
        for t, n in log.items():
            run = _projections(net, t, "one", policy)[0]
            mks = frozenset([net.initial])
            for tid in run:
                closure = set()
                for mk in mks:
                    closure.update(rp.silent_reach(mk))
                key = frozenset(closure)
                visits[key] = visits.get(key, 0) + n
                seen.setdefault(key, set()).add(net.label(tid))
                events.append((n, key))
                mks = frozenset(net.fire(mk, tid) for mk in closure if net.is_enabled(mk, tid))
    else:
        raise ValueError("state must be 'language' or 'marking'")
    total = sum(n for n, _ in events)
    if total == 0:
        return MeasureValue.undefined("aligned log has no events")
    loss = sum(n * _pnew(len(seen[s]), visits[s]) for n, s in events)
    return MeasureValue.of(1 - Fraction(loss) / total)
