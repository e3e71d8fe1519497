"""Token-based replay with an explicit tie-breaking policy, rec_B and prec_I."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .eventlog import EventLog, Trace
from .procmodel.net import LabeledNet, Marking
from .values import ConfpropError, MeasureValue

SILENT_DEPTH = 8
FIT_SEARCH_CAP = 200_000


class ReplayPolicy:
    """Total order over transition ids used for every tie-break.

    Seed 0 orders transitions by id, seed 1 by reversed id, and any other
    seed applies a seeded shuffle.
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed)

    def order(self, net: LabeledNet) -> Dict[str, int]:
        ids = sorted(net.transitions)
        if self.seed == 1:
            ids.reverse()
        elif self.seed:
            random.Random(self.seed).shuffle(ids)
        return {t: i for i, t in enumerate(ids)}

    def __eq__(self, other) -> bool:
        return isinstance(other, ReplayPolicy) and other.seed == self.seed

    def __hash__(self) -> int:
        return hash(("ReplayPolicy", self.seed))

    def __repr__(self) -> str:
        return f"ReplayPolicy(seed={self.seed})"


DEFAULT_POLICY = ReplayPolicy(0)


@dataclass
class TokenCounts:
    produced: int = 0
    consumed: int = 0
    missing: int = 0
    remaining: int = 0

    def __add__(self, other: "TokenCounts") -> "TokenCounts":
        return TokenCounts(self.produced + other.produced, self.consumed + other.consumed,
                           self.missing + other.missing, self.remaining + other.remaining)

    def scaled(self, k: int) -> "TokenCounts":
        return TokenCounts(self.produced * k, self.consumed * k, self.missing * k, self.remaining * k)


@dataclass
class EventStep:
    """Replay record of one event."""

    activity: str
    marking: Marking                  # marking before the event (before silent moves)
    enabled_visible: FrozenSet[str]   # visible transitions enabled in the silent closure
    enabled_labels: FrozenSet[str]    # their labels
    fired: Tuple[str, ...]            # silent path plus the chosen transition
    ok: bool                          # replayed without forcing and label known


@dataclass
class ReplayResult:
    trace: Trace
    counts: TokenCounts
    steps: List[EventStep] = field(default_factory=list)
    end_fired: Tuple[str, ...] = ()
    fitting_run: bool = False

    def dump(self) -> str:
        """Line-oriented diagnostic text."""
        lines = [f"trace: {' '.join(self.trace) or '<empty>'}"]
        for i, s in enumerate(self.steps):
            status = "ok" if s.ok else "forced"
            lines.append(f"event {i} {s.activity}: fired {' '.join(s.fired) or '-'} [{status}]")
        if self.end_fired:
            lines.append(f"end: fired {' '.join(self.end_fired)}")
        c = self.counts
        lines.append(f"p={c.produced} c={c.consumed} m={c.missing} r={c.remaining}")
        return "\n".join(lines) + "\n"


class _Replayer:
    def __init__(self, net: LabeledNet, policy: ReplayPolicy):
        self.net = net
        self.rank = policy.order(net)
        self.by_rank = sorted(net.transitions, key=self.rank.__getitem__)
        self.silent = [t for t in self.by_rank if net.is_silent(t)]
        self.visible = [t for t in self.by_rank if not net.is_silent(t)]
        self._closure: Dict[Marking, Dict[Marking, Tuple[str, ...]]] = {}

    # silent exploration
    def silent_reach(self, mk: Marking) -> Dict[Marking, Tuple[str, ...]]:
        """Markings reachable by at most SILENT_DEPTH silent firings, with shortest paths."""
        got = self._closure.get(mk)
        if got is not None:
            return got
        paths = {mk: ()}
        frontier = [mk]
        for _ in range(SILENT_DEPTH):
            nxt = []
            for m in frontier:
                for t in self.silent:
                    if self.net.is_enabled(m, t):
                        m2 = self.net.fire(m, t)
                        if m2 not in paths:
                            paths[m2] = paths[m] + (t,)
                            nxt.append(m2)
            if not nxt:
                break
            frontier = nxt
        self._closure[mk] = paths
        return paths

    def enabled_visible(self, mk: Marking) -> FrozenSet[str]:
        out = set()
        for m in self.silent_reach(mk):
            out.update(t for t in self.visible if self.net.is_enabled(m, t))
        return frozenset(out)

    # fitting replay
    def accepting_run(self, trace: Trace) -> Optional[List[Tuple[str, int]]]:
        """Policy-ordered breadth-first search for a run that replays ``trace`` exactly.

        Returns the firing sequence as (transition, index of the event it
        consumes or -1 for silent) pairs, or None.
        """
        net = self.net
        start = (net.initial, 0)
        goal = (net.final, len(trace))
        prev: Dict[Tuple[Marking, int], Optional[Tuple[Tuple[Marking, int], str]]] = {start: None}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            if node == goal:
                run = []
                while prev[node] is not None:
                    parent, t = prev[node]
                    run.append((t, parent[1] if not net.is_silent(t) else -1))
                    node = parent
                return list(reversed(run))
            mk, pos = node
            for t in self.by_rank:
                if not net.is_enabled(mk, t):
                    continue
                lab = net.label(t)
                if lab is None:
                    nxt = (net.fire(mk, t), pos)
                elif pos < len(trace) and lab == trace[pos]:
                    nxt = (net.fire(mk, t), pos + 1)
                else:
                    continue
                if nxt not in prev:
                    if len(prev) >= FIT_SEARCH_CAP:
                        return None
                    prev[nxt] = (node, t)
                    queue.append(nxt)
        return None

    def replay_fitting(self, trace: Trace, run: List[Tuple[str, int]]) -> ReplayResult:
        net = self.net
        mk = net.initial
        counts = TokenCounts(produced=sum(net.initial))
        steps: List[EventStep] = []
        pending: List[str] = []
        event_marking = mk
        for t, idx in run:
            if idx >= 0:
                ev = self.enabled_visible(event_marking)
                steps.append(EventStep(trace[idx], event_marking, ev,
                                       frozenset(net.label(x) for x in ev),
                                       tuple(pending) + (t,), True))
                pending = []
            else:
                pending.append(t)
            counts.consumed += len(net.pre[t])
            counts.produced += len(net.post[t])
            mk = net.fire(mk, t)
            if idx >= 0:
                event_marking = mk
        counts.consumed += sum(net.final)
        return ReplayResult(trace, counts, steps, tuple(pending), True)

    # heuristic replay
    def _lookahead_key(self, mk: Marking, t: str, nxt: Optional[str]):
        if nxt is None:
            return (0, self.rank[t])
        after = self.net.fire(mk, t)
        ok = any(self.net.label(x) == nxt for x in self.enabled_visible(after))
        return (0 if ok else 1, self.rank[t])

    def replay_heuristic(self, trace: Trace) -> ReplayResult:
        net = self.net
        mk = list(net.initial)
        counts = TokenCounts(produced=sum(net.initial))
        steps: List[EventStep] = []
        labels = net.alphabet
        for i, a in enumerate(trace):
            before = tuple(mk)
            ev = self.enabled_visible(before)
            ev_labels = frozenset(net.label(x) for x in ev)
            nxt = trace[i + 1] if i + 1 < len(trace) else None
            if a not in labels:
                counts.missing += 1
                counts.consumed += 1
                counts.produced += 1
                counts.remaining += 1
                steps.append(EventStep(a, before, ev, ev_labels, (), False))
                continue
            cands = [t for t in self.visible if net.label(t) == a]
            direct = [t for t in cands if net.is_enabled(before, t)]
            fired: Tuple[str, ...]
            ok = True
            if direct:
                t = min(direct, key=lambda x: self._lookahead_key(before, x, nxt))
                fired = (t,)
                cur = before
            else:
                best = None
                for m2, path in self.silent_reach(before).items():
                    if not path:
                        continue
                    en = [t for t in cands if net.is_enabled(m2, t)]
                    if not en:
                        continue
                    t = min(en, key=lambda x: self._lookahead_key(m2, x, nxt))
                    key = (len(path), [self.rank[x] for x in path], self.rank[t])
                    if best is None or key < best[0]:
                        best = (key, path, t, m2)
                if best is not None:
                    _, path, t, cur = best
                    for s in path:
                        counts.consumed += len(net.pre[s])
                        counts.produced += len(net.post[s])
                    fired = tuple(path) + (t,)
                else:
                    def missing_of(x):
                        return sum(1 for p in net.pre[x] if mk[p] == 0)
                    t = min(cands, key=lambda x: (missing_of(x), self.rank[x]))
                    miss = missing_of(t)
                    counts.missing += miss
                    cur = tuple(v + 1 if (j in net.pre[t] and v == 0) else v
                                for j, v in enumerate(mk))
                    fired = (t,)
                    ok = False
            counts.consumed += len(net.pre[t])
            counts.produced += len(net.post[t])
            mk = list(net.fire(cur, t))
            steps.append(EventStep(a, before, ev, ev_labels, fired, ok))
        end_path: Tuple[str, ...] = ()
        cur = tuple(mk)
        if cur != net.final:
            path = self.silent_reach(cur).get(net.final)
            if path:
                for s in path:
                    counts.consumed += len(net.pre[s])
                    counts.produced += len(net.post[s])
                cur = net.final
                end_path = path
        mk = list(cur)
        for j, need in enumerate(net.final):
            for _ in range(need):
                counts.consumed += 1
                if mk[j] > 0:
                    mk[j] -= 1
                else:
                    counts.missing += 1
        counts.remaining += sum(mk)
        return ReplayResult(trace, counts, steps, end_path, False)

    def replay(self, trace: Trace) -> ReplayResult:
        run = self.accepting_run(trace)
        if run is not None:
            return self.replay_fitting(trace, run)
        return self.replay_heuristic(trace)


_REPLAYERS: Dict[Tuple[str, int], _Replayer] = {}


def _replayer(net: LabeledNet, policy: ReplayPolicy) -> _Replayer:
    cache = net.cached("replayers", dict)
    got = cache.get(policy.seed)
    if got is None:
        got = cache[policy.seed] = _Replayer(net, policy)
    return got


def replay_trace(net: LabeledNet, trace: Sequence[str], policy: ReplayPolicy = DEFAULT_POLICY) -> ReplayResult:
    trace = tuple(trace)
    cache = net.cached("replay_results", dict)
    key = (policy.seed, trace)
    got = cache.get(key)
    if got is None:
        got = cache[key] = _replayer(net, policy).replay(trace)
    return got


def token_replay(net: LabeledNet, trace: Sequence[str], policy: ReplayPolicy = DEFAULT_POLICY) -> TokenCounts:
    c = replay_trace(net, trace, policy).counts
    return TokenCounts(c.produced, c.consumed, c.missing, c.remaining)


def log_token_counts(log: EventLog, net: LabeledNet, policy: ReplayPolicy = DEFAULT_POLICY) -> TokenCounts:
    total = TokenCounts()
    for t, n in log.items():
        total = total + token_replay(net, t, policy).scaled(n)
    return total


def _require_net(model) -> LabeledNet:
    if isinstance(model, LabeledNet):
        return model
    net = getattr(model, "net", None)
    if isinstance(net, LabeledNet):
        return net
    raise ConfpropError("this measure needs a Petri net realization of the model")


def rec_B(log: EventLog, model, policy: ReplayPolicy = DEFAULT_POLICY) -> MeasureValue:
    if not log:
        return MeasureValue.undefined("empty log")
    c = log_token_counts(log, _require_net(model), policy)
    value = Fraction(1, 2) * (1 - Fraction(c.missing, c.consumed)) + \
        Fraction(1, 2) * (1 - Fraction(c.remaining, c.produced))
    return MeasureValue.of(value)


@dataclass
class EnabledStats:
    per_trace: Dict[Trace, Fraction]
    frequency: Dict[Trace, int]
    n_visible: int


def enabled_stats(log: EventLog, net: LabeledNet, policy: ReplayPolicy = DEFAULT_POLICY) -> EnabledStats:
    rp = _replayer(net, policy)
    means: Dict[Trace, Fraction] = {}
    for t in log:
        res = replay_trace(net, t, policy)
        if res.steps:
            means[t] = Fraction(sum(len(s.enabled_visible) for s in res.steps), len(res.steps))
        else:
            means[t] = Fraction(len(rp.enabled_visible(net.initial)))
    return EnabledStats(means, dict(log.items()), len(net.visible_transitions))


def prec_I(log: EventLog, model, policy: ReplayPolicy = DEFAULT_POLICY) -> MeasureValue:
    if not log:
        return MeasureValue.undefined("empty log")
    net = _require_net(model)
    stats = enabled_stats(log, net, policy)
    tv = stats.n_visible
    if tv < 2:
        return MeasureValue.undefined("fewer than two visible transitions")
    num = sum(n * (tv - stats.per_trace[t]) for t, n in stats.frequency.items())
    den = (tv - 1) * log.size
    return MeasureValue.of(min(Fraction(1), max(Fraction(0), Fraction(num) / den)))
