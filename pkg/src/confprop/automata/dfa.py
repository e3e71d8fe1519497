"""Deterministic finite automata over activity labels.

Transition functions are stored partially; a missing entry means the word is
rejected. :func:`minimize` returns the canonical minimal automaton: trimmed,
Hopcroft-reduced, and renumbered breadth-first from the initial state with
symbols visited in sorted order, so two automata accept the same language
over the same alphabet iff their canonical forms are equal.
"""
from __future__ import annotations

from collections import deque
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from ..values import ParseError

Word = Tuple[str, ...]


class Dfa:
    __slots__ = ("alphabet", "n", "initial", "accepting", "delta", "_out", "_key")

    def __init__(self, alphabet: Iterable[str], n: int, initial: int,
                 accepting: Iterable[int], delta: Dict[Tuple[int, str], int]):
        self.alphabet: Tuple[str, ...] = tuple(sorted(set(alphabet)))
        self.n = int(n)
        self.initial = int(initial)
        self.accepting = frozenset(accepting)
        self.delta = dict(delta)
        self._out = None
        self._key = None
        if not 0 <= self.initial < max(self.n, 1):
            raise ValueError("initial state out of range")
        syms = set(self.alphabet)
        for (q, a), r in self.delta.items():
            if a not in syms:
                raise ValueError(f"symbol {a!r} not in alphabet")
            if not (0 <= q < self.n and 0 <= r < self.n):
                raise ValueError("edge references unknown state")

    # queries
    def step(self, q: Optional[int], a: str) -> Optional[int]:
        if q is None:
            return None
        return self.delta.get((q, a))

    def run(self, word: Sequence[str]) -> Optional[int]:
        q: Optional[int] = self.initial
        for a in word:
            q = self.delta.get((q, a))
            if q is None:
                return None
        return q

    def accepts(self, word: Sequence[str]) -> bool:
        q = self.run(word)
        return q is not None and q in self.accepting

    def out(self, q: int) -> List[Tuple[str, int]]:
        if self._out is None:
            out: List[List[Tuple[str, int]]] = [[] for _ in range(self.n)]
            for (p, a), r in sorted(self.delta.items()):
                out[p].append((a, r))
            self._out = out
        return self._out[q]

    @property
    def n_edges(self) -> int:
        return len(self.delta)

    def is_empty(self) -> bool:
        seen = {self.initial}
        stack = [self.initial]
        while stack:
            q = stack.pop()
            if q in self.accepting:
                return False
            for _, r in self.out(q):
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return True

    def words(self, max_len: int) -> Iterator[Word]:
        """Accepted words of length <= max_len, shortest first then lexicographic."""
        layer: List[Tuple[Word, int]] = [((), self.initial)]
        for length in range(max_len + 1):
            for w, q in layer:
                if q in self.accepting:
                    yield w
            if length == max_len:
                break
            layer = [(w + (a,), r) for w, q in layer for a, r in self.out(q)]
            if not layer:
                break

    def shortest_word(self) -> Optional[Word]:
        prev = {self.initial: None}
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            if q in self.accepting:
                word: List[str] = []
                while prev[q] is not None:
                    q, a = prev[q]
                    word.append(a)
                return tuple(reversed(word))
            for a, r in self.out(q):
                if r not in prev:
                    prev[r] = (q, a)
                    queue.append(r)
        return None

    def has_cycle(self) -> bool:
        """True iff some state lies on a cycle (language infinite when trimmed)."""
        colour = [0] * self.n
        for s in range(self.n):
            if colour[s]:
                continue
            stack = [(s, iter(self.out(s)))]
            colour[s] = 1
            while stack:
                q, it = stack[-1]
                for _, r in it:
                    if colour[r] == 1:
                        return True
                    if colour[r] == 0:
                        colour[r] = 1
                        stack.append((r, iter(self.out(r))))
                        break
                else:
                    colour[q] = 2
                    stack.pop()
        return False

    def with_alphabet(self, alphabet: Iterable[str]) -> "Dfa":
        return Dfa(set(alphabet) | set(self.alphabet), self.n, self.initial, self.accepting, self.delta)

    # identity
    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.alphabet, self.n, self.initial, tuple(sorted(self.accepting)),
                         tuple(sorted(self.delta.items())))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Dfa) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Dfa(states={self.n}, edges={len(self.delta)}, accepting={sorted(self.accepting)})"


# ---------------------------------------------------------------------------
# construction helpers

def empty_dfa(alphabet: Iterable[str] = ()) -> Dfa:
    return Dfa(alphabet, 1, 0, (), {})


def universal_dfa(alphabet: Iterable[str]) -> Dfa:
    alphabet = sorted(set(alphabet))
    return Dfa(alphabet, 1, 0, (0,), {(0, a): 0 for a in alphabet})


def dfa_from_words(words: Iterable[Sequence[str]], alphabet: Iterable[str] = ()) -> Dfa:
    """Minimal DFA accepting exactly the given finite set of words."""
    delta: Dict[Tuple[int, str], int] = {}
    accepting: Set[int] = set()
    symbols = set(alphabet)
    n = 1
    for w in words:
        q = 0
        for a in w:
            symbols.add(a)
            r = delta.get((q, a))
            if r is None:
                r = n
                n += 1
                delta[(q, a)] = r
            q = r
        accepting.add(q)
    return minimize(Dfa(symbols, n, 0, accepting, delta))


class Nfa:
    """Epsilon-NFA used internally for determinisation (``None`` labels are epsilon)."""

    __slots__ = ("n", "initial", "accepting", "edges")

    def __init__(self, n: int, initial: Iterable[int], accepting: Iterable[int],
                 edges: Iterable[Tuple[int, Optional[str], int]]):
        self.n = n
        self.initial = frozenset(initial)
        self.accepting = frozenset(accepting)
        adj: List[List[Tuple[Optional[str], int]]] = [[] for _ in range(n)]
        for p, a, q in edges:
            adj[p].append((a, q))
        self.edges = adj


def determinize(nfa: Nfa, alphabet: Iterable[str]) -> Dfa:
    """Subset construction with epsilon closures; result is not minimised."""
    eps_cache: Dict[int, frozenset] = {}

    def closure_of(q: int) -> frozenset:
        got = eps_cache.get(q)
        if got is None:
            seen = {q}
            stack = [q]
            while stack:
                p = stack.pop()
                for a, r in nfa.edges[p]:
                    if a is None and r not in seen:
                        seen.add(r)
                        stack.append(r)
            got = eps_cache[q] = frozenset(seen)
        return got

    def closure(states: Iterable[int]) -> frozenset:
        out: Set[int] = set()
        for q in states:
            out |= closure_of(q)
        return frozenset(out)

    start = closure(nfa.initial)
    index = {start: 0}
    order = [start]
    delta: Dict[Tuple[int, str], int] = {}
    i = 0
    while i < len(order):
        cur = order[i]
        moves: Dict[str, Set[int]] = {}
        for q in cur:
            for a, r in nfa.edges[q]:
                if a is not None:
                    moves.setdefault(a, set()).add(r)
        for a in sorted(moves):
            tgt = closure(moves[a])
            j = index.get(tgt)
            if j is None:
                j = index[tgt] = len(order)
                order.append(tgt)
            delta[(i, a)] = j
        i += 1
    accepting = [k for k, s in enumerate(order) if s & nfa.accepting]
    symbols = set(alphabet) | {a for (_, a) in delta}
    return Dfa(symbols, len(order), 0, accepting, delta)


# ---------------------------------------------------------------------------
# minimisation

def _trim(d: Dfa) -> Tuple[List[int], Dict[Tuple[int, str], int]]:
    reach = {d.initial}
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        for _, r in d.out(q):
            if r not in reach:
                reach.add(r)
                queue.append(r)
    rev: Dict[int, List[int]] = {}
    for (q, _), r in d.delta.items():
        rev.setdefault(r, []).append(q)
    live = {q for q in d.accepting if q in reach}
    stack = list(live)
    while stack:
        r = stack.pop()
        for q in rev.get(r, ()):
            if q in reach and q not in live:
                live.add(q)
                stack.append(q)
    keep = sorted(live)
    delta = {(q, a): r for (q, a), r in d.delta.items() if q in live and r in live}
    return keep, delta


def _hopcroft(states: List[int], alphabet: Sequence[str], delta: Dict[Tuple[int, str], int],
              accepting: Set[int]) -> List[frozenset]:
    """Coarsest partition of ``states`` plus an implicit dead state ``-1``."""
    dead = -1
    universe = states + [dead]
    inv: Dict[str, Dict[int, List[int]]] = {a: {} for a in alphabet}
    for q in universe:
        for a in alphabet:
            r = delta.get((q, a), dead) if q != dead else dead
            inv[a].setdefault(r, []).append(q)
    acc = frozenset(q for q in states if q in accepting)
    rest = frozenset(universe) - acc
    partition = [blk for blk in (acc, rest) if blk]
    work = list(partition)
    while work:
        splitter = work.pop()
        for a in alphabet:
            pre: Set[int] = set()
            for r in splitter:
                pre.update(inv[a].get(r, ()))
            if not pre:
                continue
            refined = []
            for blk in partition:
                inside = blk & pre
                if inside and len(inside) < len(blk):
                    outside = blk - inside
                    refined.extend((inside, outside))
                    if blk in work:
                        work.remove(blk)
                        work.extend((inside, outside))
                    else:
                        work.append(inside if len(inside) <= len(outside) else outside)
                else:
                    refined.append(blk)
            partition = refined
    return partition


def minimize(d: Dfa) -> Dfa:
    keep, delta = _trim(d)
    if d.initial not in keep:
        return empty_dfa(d.alphabet)
    blocks = _hopcroft(keep, d.alphabet, delta, set(d.accepting))
    cls = {}
    for b, blk in enumerate(blocks):
        for q in blk:
            cls[q] = b
    # canonical BFS numbering over classes, skipping the dead class
    dead_cls = cls[-1]
    rep = {}
    for q in keep:
        rep.setdefault(cls[q], q)
    number = {cls[d.initial]: 0}
    order = [cls[d.initial]]
    new_delta: Dict[Tuple[int, str], int] = {}
    i = 0
    while i < len(order):
        c = order[i]
        q = rep[c]
        for a in d.alphabet:
            r = delta.get((q, a))
            if r is None or cls[r] == dead_cls:
                continue
            rc = cls[r]
            if rc not in number:
                number[rc] = len(order)
                order.append(rc)
            new_delta[(i, a)] = number[rc]
        i += 1
    accepting = [number[cls[q]] for q in keep if q in d.accepting]
    return Dfa(d.alphabet, len(order), 0, accepting, new_delta)


def is_minimal_form(d: Dfa) -> bool:
    return minimize(d) == d


# ---------------------------------------------------------------------------
# boolean operations

def _product(a: Dfa, b: Dfa, accept) -> Dfa:
    alphabet = sorted(set(a.alphabet) | set(b.alphabet))
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    delta: Dict[Tuple[int, str], int] = {}
    i = 0
    while i < len(order):
        p, q = order[i]
        for s in alphabet:
            np_ = a.delta.get((p, s)) if p is not None else None
            nq = b.delta.get((q, s)) if q is not None else None
            if np_ is None and nq is None:
                continue
            tgt = (np_, nq)
            j = index.get(tgt)
            if j is None:
                j = index[tgt] = len(order)
                order.append(tgt)
            delta[(i, s)] = j
        i += 1
    acc = [k for k, (p, q) in enumerate(order)
           if accept(p is not None and p in a.accepting, q is not None and q in b.accepting)]
    return minimize(Dfa(alphabet, len(order), 0, acc, delta))


def product(a: Dfa, b: Dfa, mode: str = "intersection") -> Dfa:
    if mode == "intersection":
        return _product(a, b, lambda x, y: x and y)
    if mode == "difference":
        return _product(a, b, lambda x, y: x and not y)
    if mode == "union":
        return _product(a, b, lambda x, y: x or y)
    raise ValueError(f"unknown product mode {mode!r}")


def union(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, "union")


def includes(a: Dfa, b: Dfa) -> bool:
    """True iff L(b) is a subset of L(a)."""
    start = (b.initial, a.initial)
    seen = {start}
    stack = [start]
    while stack:
        q, p = stack.pop()
        if q in b.accepting and (p is None or p not in a.accepting):
            return False
        for s, q2 in b.out(q):
            p2 = a.delta.get((p, s)) if p is not None else None
            nxt = (q2, p2)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return True


def equivalent(a: Dfa, b: Dfa) -> bool:
    return includes(a, b) and includes(b, a)


def complement(d: Dfa, alphabet: Iterable[str] = ()) -> Dfa:
    symbols = sorted(set(d.alphabet) | set(alphabet))
    dead = d.n
    delta = {}
    for q in range(d.n + 1):
        for a in symbols:
            r = d.delta.get((q, a)) if q != dead else None
            delta[(q, a)] = dead if r is None else r
    acc = [q for q in range(d.n + 1) if q not in d.accepting]
    return minimize(Dfa(symbols, d.n + 1, d.initial, acc, delta))


def project_dfa(d: Dfa, keep: Iterable[str]) -> Dfa:
    """Erase every symbol outside ``keep`` and re-determinise."""
    keep = set(keep)
    edges = [(q, a if a in keep else None, r) for (q, a), r in d.delta.items()]
    nfa = Nfa(d.n, [d.initial], d.accepting, edges)
    return minimize(determinize(nfa, sorted(keep)))


# ---------------------------------------------------------------------------
# text format

def serialize_dfa(d: Dfa) -> str:
    lines = [
        "alphabet: " + " ".join(d.alphabet),
        "states: " + " ".join(str(q) for q in range(d.n)),
        f"initial: {d.initial}",
        "accepting: " + " ".join(str(q) for q in sorted(d.accepting)),
        "edges:",
    ]
    lines.extend(f"{q} {a} {r}" for (q, a), r in sorted(d.delta.items()))
    return "\n".join(lines) + "\n"


def parse_dfa(source: str) -> Dfa:
    fields: Dict[str, List[str]] = {}
    edges: List[Tuple[int, str, int]] = []
    section = None
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, rest = line.partition(":")
        if sep and head.strip() in ("alphabet", "states", "initial", "accepting", "edges"):
            section = head.strip()
            fields[section] = rest.split()
            continue
        if section == "edges":
            parts = line.split()
            if len(parts) != 3:
                raise ParseError("edge lines are 's a t'", lineno)
            try:
                edges.append((int(parts[0]), parts[1], int(parts[2])))
            except ValueError:
                raise ParseError("state ids must be integers", lineno) from None
        elif section is not None:
            fields[section].extend(line.split())
        else:
            raise ParseError("content before first section", lineno)
    for name in ("alphabet", "states", "initial", "accepting"):
        if name not in fields:
            raise ParseError(f"missing section {name!r}")
    try:
        states = sorted(int(s) for s in fields["states"])
        initial = int(fields["initial"][0])
        accepting = [int(s) for s in fields["accepting"]]
    except (ValueError, IndexError):
        raise ParseError("malformed state list") from None
    if states != list(range(len(states))):
        raise ParseError("states must be numbered 0..n-1")
    delta = {}
    for q, a, r in edges:
        if (q, a) in delta and delta[(q, a)] != r:
            raise ParseError(f"nondeterministic edge from {q} on {a!r}")
        delta[(q, a)] = r
    try:
        return Dfa(fields["alphabet"], len(states), initial, accepting, delta)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
