"""Labeled Petri nets with initial and final markings.

Net file format::

    places: i p1 o
    transitions:
      t1 a
      t2 ~          # silent
    arcs:
      i -> t1
      t1 -> p1
    initial: i
    final: o

Markings are tuples of token counts indexed by the net's sorted place list.
"""
from __future__ import annotations

import re
import threading
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..values import ParseError

SILENT = None
Marking = Tuple[int, ...]
_IDENT = re.compile(r"[A-Za-z0-9_]+\Z")


class LabeledNet:
    """Immutable labeled Petri net; arcs have multiplicity one."""

    def __init__(self, places: Iterable[str], transitions: Mapping[str, Optional[str]],
                 arcs: Iterable[Tuple[str, str]], initial: Iterable[str], final: Iterable[str],
                 name: str = ""):
        self.places: Tuple[str, ...] = tuple(sorted(set(places)))
        self.transitions: Dict[str, Optional[str]] = dict(sorted(transitions.items()))
        self.name = name
        overlap = set(self.places) & set(self.transitions)
        if overlap:
            raise ValueError(f"ids used for both places and transitions: {sorted(overlap)}")
        self.place_index = {p: i for i, p in enumerate(self.places)}
        pre: Dict[str, set] = {t: set() for t in self.transitions}
        post: Dict[str, set] = {t: set() for t in self.transitions}
        arc_set = set()
        for src, dst in arcs:
            if src in self.place_index and dst in self.transitions:
                pre[dst].add(self.place_index[src])
            elif src in self.transitions and dst in self.place_index:
                post[src].add(self.place_index[dst])
            else:
                raise ValueError(f"arc {src} -> {dst} must connect a declared place and transition")
            arc_set.add((src, dst))
        self.arcs: FrozenSet[Tuple[str, str]] = frozenset(arc_set)
        self.pre: Dict[str, Tuple[int, ...]] = {t: tuple(sorted(v)) for t, v in pre.items()}
        self.post: Dict[str, Tuple[int, ...]] = {t: tuple(sorted(v)) for t, v in post.items()}
        self.initial: Marking = self.marking(initial)
        self.final: Marking = self.marking(final)
        self._lock = threading.RLock()
        self._cache: dict = {}
        self._key = None

    # markings
    def marking(self, places: Iterable[str]) -> Marking:
        counts = [0] * len(self.places)
        for p in places:
            if p not in self.place_index:
                raise ValueError(f"unknown place {p!r} in marking")
            counts[self.place_index[p]] += 1
        return tuple(counts)

    def marking_places(self, mk: Marking) -> List[str]:
        return [p for p, n in zip(self.places, mk) for _ in range(n)]

    # semantics
    def is_enabled(self, mk: Marking, t: str) -> bool:
        return all(mk[i] > 0 for i in self.pre[t])

    def enabled(self, mk: Marking) -> List[str]:
        return [t for t, ins in self.pre.items() if all(mk[i] > 0 for i in ins)]

    def fire(self, mk: Marking, t: str) -> Marking:
        m = list(mk)
        for i in self.pre[t]:
            m[i] -= 1
        for i in self.post[t]:
            m[i] += 1
        return tuple(m)

    def label(self, t: str) -> Optional[str]:
        return self.transitions[t]

    def is_silent(self, t: str) -> bool:
        return self.transitions[t] is None

    @property
    def visible_transitions(self) -> List[str]:
        return [t for t, a in self.transitions.items() if a is not None]

    @property
    def silent_transitions(self) -> List[str]:
        return [t for t, a in self.transitions.items() if a is None]

    @property
    def alphabet(self) -> FrozenSet[str]:
        return frozenset(a for a in self.transitions.values() if a is not None)

    def transitions_with_label(self, a: str) -> List[str]:
        return [t for t, lab in self.transitions.items() if lab == a]

    # identity and caching
    def key(self) -> str:
        if self._key is None:
            self._key = serialize_net(self)
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, LabeledNet) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __getstate__(self):
        return {"places": self.places, "transitions": self.transitions, "arcs": sorted(self.arcs),
                "initial": self.marking_places(self.initial), "final": self.marking_places(self.final),
                "name": self.name}

    def __setstate__(self, state):
        self.__init__(state["places"], state["transitions"], state["arcs"], state["initial"],
                      state["final"], state.get("name", ""))

    def cached(self, name: str, build):
        """Build-once cache for derived structures (state space, DFA)."""
        got = self._cache.get(name)
        if got is None:
            with self._lock:
                got = self._cache.get(name)
                if got is None:
                    got = self._cache[name] = build()
        return got

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<LabeledNet{tag}: {len(self.places)} places, {len(self.transitions)} transitions>"

    # structural rewriting helpers
    def replace(self, places=None, transitions=None, arcs=None, initial=None, final=None,
                name=None) -> "LabeledNet":
        return LabeledNet(
            self.places if places is None else places,
            self.transitions if transitions is None else transitions,
            self.arcs if arcs is None else arcs,
            self.marking_places(self.initial) if initial is None else initial,
            self.marking_places(self.final) if final is None else final,
            self.name if name is None else name,
        )

    def preset_places(self, t: str) -> List[str]:
        return [self.places[i] for i in self.pre[t]]

    def postset_places(self, t: str) -> List[str]:
        return [self.places[i] for i in self.post[t]]


def net_from_spec(places: Sequence[str], transitions: Mapping[str, Optional[str]],
                  arcs: Sequence[str], initial: Sequence[str], final: Sequence[str],
                  name: str = "") -> LabeledNet:
    """Build a net from compact ``"p -> t"`` arc strings."""
    pairs = []
    for arc in arcs:
        src, _, dst = arc.partition("->")
        pairs.append((src.strip(), dst.strip()))
    return LabeledNet(places, transitions, pairs, initial, final, name)


_SECTIONS = ("places", "transitions", "arcs", "initial", "final")


def parse_net(source: str, name: str = "") -> LabeledNet:
    content: Dict[str, List[Tuple[int, str]]] = {}
    section = None
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if sep and head.strip() in _SECTIONS:
            section = head.strip()
            if section in content:
                raise ParseError(f"duplicate section {section!r}", lineno)
            content[section] = []
            if rest.strip():
                content[section].append((lineno, rest.strip()))
            continue
        if section is None:
            raise ParseError("content before first section", lineno)
        content[section].append((lineno, line))
    for sec in ("initial", "final"):
        if sec not in content:
            raise ParseError(f"missing {sec}: section")

    places: List[str] = []
    for lineno, line in content.get("places", []):
        for tok in line.split():
            if not _IDENT.match(tok):
                raise ParseError(f"illegal place id {tok!r}", lineno)
            places.append(tok)
    transitions: Dict[str, Optional[str]] = {}
    for lineno, line in content.get("transitions", []):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("transition lines are 'id label' or 'id ~'", lineno)
        tid, lab = parts
        if not _IDENT.match(tid) or (lab != "~" and not _IDENT.match(lab)):
            raise ParseError(f"illegal transition {line!r}", lineno)
        if tid in transitions:
            raise ParseError(f"duplicate transition id {tid!r}", lineno)
        transitions[tid] = None if lab == "~" else lab
    place_set = set(places)
    arcs = []
    for lineno, line in content.get("arcs", []):
        src, sep, dst = line.partition("->")
        src, dst = src.strip(), dst.strip()
        if not sep or not src or not dst:
            raise ParseError("arc lines are 'p -> t' or 't -> p'", lineno)
        ok = (src in place_set and dst in transitions) or (src in transitions and dst in place_set)
        if not ok:
            raise ParseError(f"arc {src} -> {dst} references an unknown id", lineno)
        arcs.append((src, dst))
    marks = {}
    for sec in ("initial", "final"):
        toks = [tok for _, line in content[sec] for tok in line.split()]
        for tok in toks:
            if tok not in place_set:
                raise ParseError(f"unknown place {tok!r} in {sec}: section", content[sec][0][0])
        marks[sec] = toks
    try:
        return LabeledNet(places, transitions, arcs, marks["initial"], marks["final"], name)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_net(net: LabeledNet) -> str:
    lines = ["places: " + " ".join(net.places), "transitions:"]
    for t, lab in net.transitions.items():
        lines.append(f"  {t} {'~' if lab is None else lab}")
    lines.append("arcs:")
    for src, dst in sorted(net.arcs):
        lines.append(f"  {src} -> {dst}")
    lines.append("initial: " + " ".join(net.marking_places(net.initial)))
    lines.append("final: " + " ".join(net.marking_places(net.final)))
    return "\n".join(lines) + "\n"


def read_net(path, name: str = "") -> LabeledNet:
    with open(path, encoding="utf-8") as fh:
        return parse_net(fh.read(), name=name)


def write_net(net: LabeledNet, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_net(net))


def enabled(net: LabeledNet, mk: Marking) -> set:
    """Set of transition ids enabled at ``mk``."""
    return set(net.enabled(mk))
