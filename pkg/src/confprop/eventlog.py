"""Event logs as multisets of traces, and the plain-text log format.

A log file holds one trace variant per line::

    # comment
    5: a b c
    3: b a d
    1: <empty>

Lines with identical activity sequences are aggregated.
"""
from __future__ import annotations

import re
from collections import Counter
from typing import Callable, Iterable, Iterator, Mapping, Tuple, Union

from .values import ParseError

Trace = Tuple[str, ...]

EMPTY_TOKEN = "<empty>"
MAX_COUNT = 2**63 - 1
_ACTIVITY = re.compile(r"[A-Za-z0-9_]+\Z")


def is_activity(token: str) -> bool:
    return bool(_ACTIVITY.match(token))


def _checked(count: int) -> int:
    if count > MAX_COUNT:
        raise OverflowError(f"trace count {count} exceeds 64-bit range")
    return count


class EventLog(Mapping):
    """Immutable multiset of traces.

    ``len(log)`` is the number of distinct traces; ``log.size`` is the number
    of cases. Missing traces have count 0 via :meth:`count`.
    """

    __slots__ = ("_counts", "_hash")

    def __init__(self, entries: Union[Mapping, Iterable, None] = None):
        counts: dict = {}
        if entries is None:
            pass
        elif isinstance(entries, Mapping):
            for trace, n in entries.items():
                if n < 0:
                    raise ValueError(f"negative count for {trace!r}")
                if n:
                    key = tuple(trace)
                    counts[key] = _checked(counts.get(key, 0) + int(n))
        else:
            for trace in entries:
                key = tuple(trace)
                counts[key] = counts.get(key, 0) + 1
        self._counts = counts
        self._hash = None

    # Mapping protocol
    def __getitem__(self, trace) -> int:
        return self._counts[tuple(trace)]

    def __iter__(self) -> Iterator[Trace]:
        return iter(sorted(self._counts))

    def __len__(self) -> int:
        return len(self._counts)

    def __contains__(self, trace) -> bool:
        return tuple(trace) in self._counts

    def count(self, trace) -> int:
        return self._counts.get(tuple(trace), 0)

    @property
    def size(self) -> int:
        return sum(self._counts.values())

    @property
    def variants(self) -> frozenset:
        return frozenset(self._counts)

    @property
    def alphabet(self) -> frozenset:
        return frozenset(a for t in self._counts for a in t)

    @property
    def n_events(self) -> int:
        return sum(len(t) * n for t, n in self._counts.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, EventLog):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(
            f"<{','.join(t)}>" + (f"^{n}" if n != 1 else "") for t, n in self.items()
        )
        return f"EventLog([{body}])"

    # multiset algebra
    def __add__(self, other: "EventLog") -> "EventLog":
        out = dict(self._counts)
        for t, n in other._counts.items():
            out[t] = _checked(out.get(t, 0) + n)
        return EventLog(out)

    def __sub__(self, other: "EventLog") -> "EventLog":
        return EventLog({t: max(n - other.count(t), 0) for t, n in self._counts.items()})

    def __and__(self, other: "EventLog") -> "EventLog":
        return EventLog({t: min(n, other.count(t)) for t, n in self._counts.items()})

    def __le__(self, other: "EventLog") -> bool:
        return all(n <= other.count(t) for t, n in self._counts.items())

    def power(self, k: int) -> "EventLog":
        return power_log(self, k)

    def filter(self, keep: Callable[[Trace], bool]) -> "EventLog":
        return EventLog({t: n for t, n in self._counts.items() if keep(t)})


def multiset_op(kind: str, a: EventLog, b: EventLog):
    """Apply ``sum``, ``difference``, ``intersection`` or ``subset-test``."""
    if kind == "sum":
        return a + b
    if kind == "difference":
        return a - b
    if kind == "intersection":
        return a & b
    if kind in ("subset-test", "subset"):
        return a <= b
    raise ValueError(f"unknown multiset operation {kind!r}")


def power_log(log: EventLog, k: int) -> EventLog:
    if k < 1:
        raise ValueError("power_log requires k >= 1")
    return EventLog({t: _checked(n * k) for t, n in log.items()})


def split_fitting(log: EventLog, fits: Callable[[Trace], bool]):
    """Partition a log into (fitting, non-fitting) parts."""
    yes, no = {}, {}
    for t, n in log.items():
        (yes if fits(t) else no)[t] = n
    return EventLog(yes), EventLog(no)


def log_from_traces(*traces, counts=None) -> EventLog:
    """Convenience constructor: ``log_from_traces("abc", "bad")``.

    Strings are split into single-character activities unless they contain
    whitespace.
    """
    out: Counter = Counter()
    for i, t in enumerate(traces):
        if isinstance(t, str):
            t = tuple(t.split()) if " " in t else tuple(t)
        out[tuple(t)] += 1 if counts is None else counts[i]
    return EventLog(out)


def parse_log(source: str) -> EventLog:
    counts: dict = {}
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise ParseError("expected '<count>: <activities>'", lineno)
        head = head.strip()
        if not head.isdigit():
            raise ParseError(f"malformed count {head!r}", lineno)
        n = int(head)
        if n <= 0:
            raise ParseError("count must be positive", lineno)
        tokens = body.split()
        if not tokens:
            raise ParseError(f"no activities; use {EMPTY_TOKEN} for the empty trace", lineno)
        if tokens == [EMPTY_TOKEN]:
            trace: Trace = ()
        else:
            for tok in tokens:
                if not is_activity(tok):
                    raise ParseError(f"illegal activity token {tok!r}", lineno)
            trace = tuple(tokens)
        try:
            counts[trace] = _checked(counts.get(trace, 0) + n)
        except OverflowError as exc:
            raise ParseError(str(exc), lineno) from None
    return EventLog(counts)


def serialize_log(log: EventLog) -> str:
    lines = []
    for trace in log:  # sorted
        body = " ".join(trace) if trace else EMPTY_TOKEN
        lines.append(f"{log[trace]}: {body}")
    return "\n".join(lines) + ("\n" if lines else "")


def read_log(path) -> EventLog:
    with open(path, encoding="utf-8") as fh:
        return parse_log(fh.read())


def write_log(log: EventLog, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_log(log))
