"""Random models and logs for the proposition audit.

Models are block-structured nets built from random process trees, or
prefix-tree nets of small random finite languages. Activity labels are drawn
with replacement, so duplicate labels (and hence replay choices) occur
naturally.
"""
from __future__ import annotations

import random
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from ..eventlog import EventLog, Trace
from ..procmodel.language import enumerate_language, fits
from ..procmodel.net import LabeledNet

MAX_TRACE_LEN = 8
MAX_ALPHABET = 6
LETTERS = "abcdef"

Tree = tuple


class _Builder:
    def __init__(self):
        self.places: List[str] = []
        self.transitions = {}
        self.arcs: List[Tuple[str, str]] = []

    def place(self) -> str:
        p = f"p{len(self.places)}"
        self.places.append(p)
        return p

    def transition(self, label: Optional[str], pre: Iterable[str], post: Iterable[str]) -> str:
        t = f"{'t' if label is not None else 's'}{len(self.transitions)}"
        self.transitions[t] = label
        self.arcs.extend((p, t) for p in pre)
        self.arcs.extend((t, p) for p in post)
        return t

    def net(self, initial: str, final: str, name: str) -> LabeledNet:
        return LabeledNet(self.places, self.transitions, self.arcs, [initial], [final], name)


def random_tree(rng: random.Random, alphabet: Sequence[str], leaves: int = 6, depth: int = 3) -> Tree:
    """Random process tree with at most ``leaves`` leaves."""
    budget = [leaves]

    def node(d: int) -> Tree:
        if d == 0 or budget[0] <= 1 or rng.random() < 0.3:
            budget[0] -= 1
            label = None if rng.random() < 0.08 else rng.choice(alphabet)
            return ("leaf", label)
        op = rng.choice(("seq", "seq", "xor", "xor", "and", "loop"))
        if op == "loop":
            return ("loop", node(d - 1), node(d - 1))
        n = 2 if rng.random() < 0.7 or budget[0] < 3 else 3
        return (op, tuple(node(d - 1) for _ in range(n)))

    return node(depth)


def tree_to_net(tree: Tree, name: str = "tree") -> LabeledNet:
    b = _Builder()

    def build(t: Tree, src: str, dst: str) -> None:
        kind = t[0]
        if kind == "leaf":
            b.transition(t[1], [src], [dst])
        elif kind == "seq":
            cur = src
            for i, child in enumerate(t[1]):
                nxt = dst if i == len(t[1]) - 1 else b.place()
                build(child, cur, nxt)
                cur = nxt
        elif kind == "xor":
            for child in t[1]:
                build(child, src, dst)
        elif kind == "and":
            starts = [b.place() for _ in t[1]]
            ends = [b.place() for _ in t[1]]
            b.transition(None, [src], starts)
            b.transition(None, ends, [dst])
            for child, s, e in zip(t[1], starts, ends):
                build(child, s, e)
        elif kind == "loop":
            s, e = b.place(), b.place()
            b.transition(None, [src], [s])
            build(t[1], s, e)
            build(t[2], e, s)
            b.transition(None, [e], [dst])
        else:
            raise ValueError(f"unknown tree node {kind!r}")

    i = b.place()
    o = b.place()
    build(tree, i, o)
    return b.net(i, o, name)


def prefix_tree_net(traces: Iterable[Sequence[str]], name: str = "prefix") -> LabeledNet:
    """Net whose language is exactly ``traces``: one place per prefix, silent exits."""
    words = sorted({tuple(t) for t in traces})
    children = {}
    ends = set(words)
    for w in words:
        for i in range(len(w)):
            children.setdefault(w[:i], set()).add(w[: i + 1])
    b = _Builder()
    final = "o"
    place_of = {}

    def place_for(prefix) -> str:
        if prefix not in place_of:
            if prefix in ends and not children.get(prefix):
                place_of[prefix] = final
            else:
                place_of[prefix] = b.place()
        return place_of[prefix]

    root = place_for(())
    for prefix in sorted(children, key=lambda p: (len(p), p)):
        src = place_for(prefix)
        for child in sorted(children[prefix]):
            b.transition(child[-1], [src], [place_for(child)])
    for prefix in sorted(ends):
        src = place_for(prefix)
        if src != final:
            b.transition(None, [src], [final])
    if final not in b.places:
        b.places.append(final)
    return b.net(root, final, name)


def trace_net(traces: Iterable[Sequence[str]], name: str = "traces") -> LabeledNet:
    """Net with one sequential branch per trace; labels repeat across branches."""
    words = sorted({tuple(t) for t in traces})
    b = _Builder()
    i = b.place()
    o = b.place()
    for w in words:
        if not w:
            b.transition(None, [i], [o])
            continue
        cur = i
        for k, a in enumerate(w):
            nxt = o if k == len(w) - 1 else b.place()
            b.transition(a, [cur], [nxt])
            cur = nxt
    return b.net(i, o, name)


def flower_net(alphabet: Iterable[str], name: str = "flower") -> LabeledNet:
    """Single place with a self-loop per activity: every trace over the alphabet fits."""
    b = _Builder()
    p = b.place()
    for a in sorted(set(alphabet)):
        b.transition(a, [p], [p])
    return b.net(p, p, name)


def random_alphabet(rng: random.Random) -> Tuple[str, ...]:
    return tuple(LETTERS[: rng.randint(3, MAX_ALPHABET)])


def random_words(rng: random.Random, alphabet: Sequence[str], n: int, max_len: int = 5) -> Set[Trace]:
    return {tuple(rng.choice(alphabet) for _ in range(rng.randint(1, max_len))) for _ in range(n)}


def language_sample(model, max_len: int = MAX_TRACE_LEN) -> List[Trace]:
    """Sorted model traces up to ``max_len``, cached on nets."""
    def build():
        return sorted(enumerate_language(model, max_len), key=lambda t: (len(t), t))
    if isinstance(model, LabeledNet):
        return model.cached(f"language_sample_{max_len}", build)
    return build()


def random_model(rng: random.Random, alphabet: Optional[Sequence[str]] = None,
                 finite: bool = False) -> LabeledNet:
    """A bounded net whose language is non-empty and excludes the empty trace."""
    alphabet = tuple(alphabet or random_alphabet(rng))
    for _ in range(100):
        r = rng.random()
        if r < 0.55:
            net = tree_to_net(random_tree(rng, alphabet, leaves=rng.randint(2, 6)), "tree")
        elif r < 0.85:
            net = prefix_tree_net(random_words(rng, alphabet, rng.randint(1, 4)), "prefix")
        else:
            net = trace_net(random_words(rng, alphabet, rng.randint(1, 4)), "traces")
        sample = language_sample(net)
        if not sample or sample[0] == ():
            continue
        if finite and (_infinite(net) or len(sample) > 12):
            continue
        return net
    raise RuntimeError("could not generate a model")


def _infinite(net: LabeledNet) -> bool:
    from ..procmodel.language import as_language
    return as_language(net).is_infinite()


def sample_fitting(rng: random.Random, model, n: int) -> List[Trace]:
    sample = language_sample(model)
    if not sample:
        return []
    return [rng.choice(sample) for _ in range(n)]


def sample_nonfitting(rng: random.Random, model, alphabet: Sequence[str], n: int,
                      tries: int = 50) -> List[Trace]:
    """Traces outside the model language: edits of model traces or random words."""
    sample = language_sample(model)
    symbols = tuple(sorted(set(alphabet))) or ("a",)
    out: List[Trace] = []
    for _ in range(n):
        for _ in range(tries):
            base = list(rng.choice(sample)) if sample and rng.random() < 0.7 else []
            cand = _edit(rng, base, symbols) if base else list(
                rng.choice(symbols) for _ in range(rng.randint(1, 5)))
            t = tuple(cand)
            if t and len(t) <= MAX_TRACE_LEN and not fits(model, t):
                out.append(t)
                break
    return out


def _edit(rng: random.Random, word: List[str], symbols: Sequence[str]) -> List[str]:
    w = list(word)
    op = rng.choice(("insert", "delete", "swap", "replace"))
    if op == "insert" or len(w) < 2 and op == "swap":
        w.insert(rng.randint(0, len(w)), rng.choice(symbols))
    elif op == "delete":
        del w[rng.randrange(len(w))]
    elif op == "swap":
        i = rng.randrange(len(w) - 1)
        w[i], w[i + 1] = w[i + 1], w[i]
    else:
        w[rng.randrange(len(w))] = rng.choice(symbols)
    return w


def counts_log(rng: random.Random, traces: Iterable[Trace], max_count: int = 3) -> EventLog:
    counts = {}
    for t in traces:
        counts[t] = counts.get(t, 0) + rng.randint(1, max_count)
    return EventLog(counts)


def random_log(rng: random.Random, model, alphabet: Sequence[str], fit_ratio: float = 0.5,
               variants: Optional[int] = None) -> EventLog:
    n = variants or rng.randint(1, 4)
    traces: List[Trace] = []
    for _ in range(n):
        if rng.random() < fit_ratio:
            traces.extend(sample_fitting(rng, model, 1))
        else:
            traces.extend(sample_nonfitting(rng, model, alphabet, 1))
    if not traces:
        traces = sample_fitting(rng, model, 1) or [tuple(alphabet[:1])]
    return counts_log(rng, traces)
