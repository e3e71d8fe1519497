"""Random small objects and brute-force reference computations for the tests."""
from __future__ import annotations

import itertools
import random
from collections import deque
from typing import Dict, List, Optional, Sequence, Set, Tuple

from confprop.automata import Dfa
from confprop.eventlog import EventLog
from confprop.procmodel import LabeledNet
from confprop.propositions.generators import random_log, random_model

SYMBOLS = ("a", "b", "c")


def random_dfa(rng: random.Random, max_states: int = 12, symbols: Sequence[str] = SYMBOLS,
               density: Optional[float] = None) -> Dfa:
    n = rng.randint(1, max_states)
    density = rng.uniform(0.3, 1.0) if density is None else density
    delta = {(q, a): rng.randrange(n) for q in range(n) for a in symbols if rng.random() < density}
    accepting = {q for q in range(n) if rng.random() < 0.35}
    return Dfa(symbols, n, 0, accepting, delta)


def permuted(d: Dfa, rng: random.Random) -> Dfa:
    """The same automaton with its states renamed at random."""
    perm = list(range(d.n))
    rng.shuffle(perm)
    return Dfa(d.alphabet, d.n, perm[d.initial], {perm[q] for q in d.accepting},
               {(perm[q], a): perm[r] for (q, a), r in d.delta.items()})


def all_words(symbols: Sequence[str], max_len: int):
    for n in range(max_len + 1):
        yield from itertools.product(symbols, repeat=n)


# ---------------------------------------------------------------------------
# nets

def reachable_markings(net: LabeledNet, cap: int = 400, bound: int = 3):
    """Markings reachable by firing transitions; None when over cap or bound."""
    seen = {net.initial}
    queue = deque([net.initial])
    while queue:
        mk = queue.popleft()
        for t in net.transitions:
            if all(mk[p] >= 1 for p in net.pre[t]):
                nxt = list(mk)
                for p in net.pre[t]:
                    nxt[p] -= 1
                for p in net.post[t]:
                    nxt[p] += 1
                nxt = tuple(nxt)
                if max(nxt) > bound:
                    return None
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > cap:
                        return None
                    queue.append(nxt)
    return seen


def random_small_net(rng: random.Random, max_transitions: int = 8,
                     symbols: Sequence[str] = SYMBOLS) -> Optional[LabeledNet]:
    """Arbitrary small bounded net whose final marking is a reachable one; None if unbounded."""
    places = [f"p{i}" for i in range(rng.randint(2, 5))]
    transitions: Dict[str, Optional[str]] = {}
    arcs: List[Tuple[str, str]] = []
    for i in range(rng.randint(1, max_transitions)):
        t = f"t{i}"
        transitions[t] = None if rng.random() < 0.2 else rng.choice(symbols)
        for p in rng.sample(places, rng.randint(1, min(2, len(places)))):
            arcs.append((p, t))
        for p in rng.sample(places, rng.randint(1, min(2, len(places)))):
            arcs.append((t, p))
    net = LabeledNet(places, transitions, arcs, [places[0]], [places[0]], "random")
    reach = reachable_markings(net)
    if reach is None:
        return None
    final = rng.choice(sorted(reach))
    tokens = [p for p, k in zip(net.places, final) for _ in range(k)]
    net = LabeledNet(places, transitions, arcs, [places[0]], tokens, "random")
    return net


def alignment_cost_oracle(net: LabeledNet, trace: Sequence[str]) -> int:
    """Cheapest alignment by value iteration over (marking, position)."""
    markings = sorted(reachable_markings(net))
    n = len(trace)
    inf = float("inf")
    cost = {(m, i): inf for m in markings for i in range(n + 1)}
    cost[(net.initial, 0)] = 0
    changed = True
    while changed:
        changed = False
        for (m, i), c in list(cost.items()):
            if c == inf:
                continue
            steps = []
            if i < n:
                steps.append(((m, i + 1), 1))
            for t, label in net.transitions.items():
                if not all(m[p] >= 1 for p in net.pre[t]):
                    continue
                nxt = list(m)
                for p in net.pre[t]:
                    nxt[p] -= 1
                for p in net.post[t]:
                    nxt[p] += 1
                nxt = tuple(nxt)
                steps.append(((nxt, i), 0 if label is None else 1))
                if label is not None and i < n and trace[i] == label:
                    steps.append(((nxt, i + 1), 0))
            for key, w in steps:
                if c + w < cost[key]:
                    cost[key] = c + w
                    changed = True
    return cost[(net.final, n)]


def net_words(net: LabeledNet, max_len: int) -> Set[Tuple[str, ...]]:
    """Visible words of complete runs up to ``max_len`` by direct firing."""
    out = set()
    seen = set()
    stack = [(net.initial, ())]
    while stack:
        mk, w = stack.pop()
        if (mk, w) in seen:
            continue
        seen.add((mk, w))
        if mk == net.final:
            out.add(w)
        for t, label in net.transitions.items():
            if not all(mk[p] >= 1 for p in net.pre[t]):
                continue
            if label is not None and len(w) == max_len:
                continue
            nxt = list(mk)
            for p in net.pre[t]:
                nxt[p] -= 1
            for p in net.post[t]:
                nxt[p] += 1
            stack.append((tuple(nxt), w if label is None else w + (label,)))
    return out


# ---------------------------------------------------------------------------
# log and model pairs

def model_and_log(seed: int, finite: bool = False, fit_ratio: float = 0.5) -> Tuple[LabeledNet, EventLog]:
    rng = random.Random(seed)
    alphabet = tuple("abcde"[: rng.randint(3, 5)])
    model = random_model(rng, alphabet, finite=finite)
    return model, random_log(rng, model, alphabet, fit_ratio=fit_ratio)


def exact(v):
    """Exact comparison key of a measure value."""
    if not v.defined:
        return ("undefined",)
    return ("exact", v.exact) if v.exact is not None else ("float", v.value)
