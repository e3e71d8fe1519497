"""Instance mutations establishing proposition preconditions."""
from __future__ import annotations

import random
from typing import Optional, Sequence

from ..automata.dfa import equivalent, includes
from ..eventlog import EventLog, power_log
from ..procmodel.language import model_dfa
from ..procmodel.net import LabeledNet
from ..procmodel.statespace import is_bounded
from ..values import ConfpropError
from .generators import counts_log, sample_fitting, sample_nonfitting

VARIANT_KINDS = ("implicit_place", "silent_chain", "duplicate_branch")


def _fresh(prefix: str, used) -> str:
    i = 0
    while f"{prefix}{i}" in used:
        i += 1
    return f"{prefix}{i}"


def add_implicit_place(net: LabeledNet, place: str) -> LabeledNet:
    """Copy ``place`` with all its arcs and tokens; the copy never restricts firing."""
    used = set(net.places) | set(net.transitions)
    new = _fresh("q", used)
    arcs = set(net.arcs)
    for src, dst in net.arcs:
        if src == place:
            arcs.add((new, dst))
        if dst == place:
            arcs.add((src, new))
    initial = net.marking_places(net.initial) + [new] * net.initial[net.place_index[place]]
    final = net.marking_places(net.final) + [new] * net.final[net.place_index[place]]
    return net.replace(places=net.places + (new,), arcs=arcs, initial=initial, final=final)


def insert_silent_chain(net: LabeledNet, t: str) -> LabeledNet:
    """Split ``t`` into a silent step consuming its inputs followed by ``t`` itself."""
    used = set(net.places) | set(net.transitions)
    mid = _fresh("q", used)
    silent = _fresh("u", used | {mid})
    arcs = {(s, d) for s, d in net.arcs if d != t}
    arcs |= {(p, silent) for p in net.preset_places(t)}
    arcs |= {(silent, mid), (mid, t)}
    transitions = dict(net.transitions)
    transitions[silent] = None
    return net.replace(places=net.places + (mid,), transitions=transitions, arcs=arcs)


def duplicate_branch(net: LabeledNet, t: str) -> LabeledNet:
    """Add a copy of ``t`` with the same label, preset and postset."""
    used = set(net.places) | set(net.transitions)
    copy = _fresh("d", used)
    transitions = dict(net.transitions)
    transitions[copy] = net.transitions[t]
    arcs = set(net.arcs)
    arcs |= {(p, copy) for p in net.preset_places(t)}
    arcs |= {(copy, p) for p in net.postset_places(t)}
    return net.replace(transitions=transitions, arcs=arcs)


def language_equal_variant(net: LabeledNet, rng: random.Random, kind: Optional[str] = None,
                           steps: int = 1) -> LabeledNet:
    """Structural rewrite that keeps the language; re-verified by automaton equality."""
    out = net
    for _ in range(steps):
        k = kind or rng.choice(VARIANT_KINDS)
        if k == "implicit_place":
            out = add_implicit_place(out, rng.choice(out.places))
        elif k == "silent_chain":
            vis = out.visible_transitions
            if not vis:
                continue
            out = insert_silent_chain(out, rng.choice(vis))
        elif k == "duplicate_branch":
            out = duplicate_branch(out, rng.choice(sorted(out.transitions)))
        else:
            raise ValueError(f"unknown variant kind {k!r}")
    if not equivalent(model_dfa(net), model_dfa(out)):
        raise ConfpropError("rewrite changed the language")
    return out


def extend_model(net: LabeledNet, rng: random.Random, alphabet: Sequence[str], extra: int = 1,
                 attempts: int = 20) -> LabeledNet:
    """Add transitions with one input and one output place; the language can only grow.

    Endpoints are redrawn when a new transition would make the net unbounded,
    for instance by moving a token from a concurrent branch back before its split.
    """
    out = net
    symbols = sorted(set(alphabet) | set(net.alphabet))
    for _ in range(extra):
        used = set(out.places) | set(out.transitions)
        t = _fresh("x", used)
        for _ in range(attempts):
            src, dst = rng.choice(out.places), rng.choice(out.places)
            if rng.random() < 0.3:
                src = out.marking_places(out.initial)[0]
                dst = out.marking_places(out.final)[0]
            transitions = dict(out.transitions)
            transitions[t] = None if rng.random() < 0.1 else rng.choice(symbols)
            cand = out.replace(transitions=transitions, arcs=set(out.arcs) | {(src, t), (t, dst)})
            if is_bounded(cand):
                out = cand
                break
        else:
            raise ConfpropError("no bounded extension found")
    if not includes(model_dfa(out), model_dfa(net)):
        raise ConfpropError("extension lost behavior")
    return out


def add_fitting(log: EventLog, model, rng: random.Random, n: int = 1) -> EventLog:
    return log + counts_log(rng, sample_fitting(rng, model, n))


def add_nonfitting(log: EventLog, model, rng: random.Random, alphabet: Sequence[str], n: int = 1) -> EventLog:
    extra = sample_nonfitting(rng, model, alphabet, n)
    if not extra:
        raise ConfpropError("no non-fitting trace found within the length bound")
    return log + counts_log(rng, extra)


def duplicate_log(log: EventLog, k: int) -> EventLog:
    return power_log(log, k)
