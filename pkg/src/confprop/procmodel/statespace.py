"""Reachability graphs of labeled nets, with a state cap and unboundedness check."""
from __future__ import annotations

import os
from collections import deque
from typing import Dict, List, Optional, Set, Tuple

from ..values import ResourceError, UnboundedNetError
from .net import LabeledNet, Marking

DEFAULT_STATE_CAP = 100_000


def state_cap() -> int:
    raw = os.environ.get("CONFPROP_STATE_CAP")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_STATE_CAP


class StateSpace:
    """Explicit reachability graph; node 0 is the initial marking."""

    def __init__(self, net: LabeledNet, markings: List[Marking],
                 out: List[List[Tuple[str, int]]]):
        self.net = net
        self.markings = markings
        self.index: Dict[Marking, int] = {m: i for i, m in enumerate(markings)}
        self.out = out
        self.final_nodes: Set[int] = {i for i, m in enumerate(markings) if m == net.final}
        self._coreach: Optional[Set[int]] = None

    def __len__(self) -> int:
        return len(self.markings)

    def edges(self):
        for i, succ in enumerate(self.out):
            for t, j in succ:
                yield i, t, j

    def coreachable(self) -> Set[int]:
        """Nodes from which the final marking is reachable."""
        if self._coreach is None:
            rev: List[List[int]] = [[] for _ in self.markings]
            for i, _, j in self.edges():
                rev[j].append(i)
            seen = set(self.final_nodes)
            stack = list(seen)
            while stack:
                j = stack.pop()
                for i in rev[j]:
                    if i not in seen:
                        seen.add(i)
                        stack.append(i)
            self._coreach = seen
        return self._coreach


def _covers_strictly(big: Marking, small: Marking) -> bool:
    return big != small and all(x >= y for x, y in zip(big, small))


def build_state_space(net: LabeledNet, cap: Optional[int] = None) -> StateSpace:
    cap = state_cap() if cap is None else cap
    markings = [net.initial]
    parent = [-1]
    index = {net.initial: 0}
    out: List[List[Tuple[str, int]]] = [[]]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        mk = markings[i]
        for t in net.enabled(mk):
            nxt = net.fire(mk, t)
            j = index.get(nxt)
            if j is None:
                anc = i
                while anc >= 0:
                    if _covers_strictly(nxt, markings[anc]):
                        raise UnboundedNetError(
                            f"net {net.name or ''} is unbounded: marking {net.marking_places(nxt)} "
                            f"strictly covers an earlier marking on its firing path")
                    anc = parent[anc]
                if len(markings) >= cap:
                    raise ResourceError(f"state cap of {cap} markings exceeded")
                j = index[nxt] = len(markings)
                markings.append(nxt)
                parent.append(i)
                out.append([])
                queue.append(j)
            out[i].append((t, j))
    return StateSpace(net, markings, out)


def state_space(net: LabeledNet, cap: Optional[int] = None) -> StateSpace:
    """Cached reachability graph of ``net``."""
    if cap is not None:
        return build_state_space(net, cap)
    return net.cached("statespace", lambda: build_state_space(net))


def is_bounded(net: LabeledNet) -> bool:
    try:
        state_space(net)
    except UnboundedNetError:
        return False
    return True
