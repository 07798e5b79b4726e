"""Minimum vertex cuts between node groups, for gatekeeper analysis: the
smallest set of intermediate ASes whose removal disconnects a country's
origins from its foreign neighbors."""

from collections import deque
from dataclasses import dataclass

from .model import AsGraph


class _FlowNet:
    """Max-flow via shortest augmenting paths (iterative, integer caps).

    Every source-to-sink path crosses a unit-capacity vertex split, so each
    augmentation pushes exactly one unit and the run count is bounded by
    the cut size.
    """

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]  # edge ids per node
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, cap: int):
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            parent_edge = [-1] * self.n
            parent_edge[s] = -2
            queue = deque([s])
            while queue and parent_edge[t] == -1:
                u = queue.popleft()
                for eid in self.head[u]:
                    v = self.to[eid]
                    if self.cap[eid] > 0 and parent_edge[v] == -1:
                        parent_edge[v] = eid
                        queue.append(v)
            if parent_edge[t] == -1:
                return flow
            bottleneck = None
            v = t
            while v != s:
                eid = parent_edge[v]
                bottleneck = self.cap[eid] if bottleneck is None else min(bottleneck, self.cap[eid])
                v = self.to[eid ^ 1]
            v = t
            while v != s:
                eid = parent_edge[v]
                self.cap[eid] -= bottleneck
                self.cap[eid ^ 1] += bottleneck
                v = self.to[eid ^ 1]
            flow += bottleneck


@dataclass(frozen=True)
class VertexCut:
    nodes: frozenset[int]
    impossible: bool = False

    def __iter__(self):
        return iter(sorted(self.nodes))


def _cut_size(g: AsGraph, sources: set[int], sinks: set[int], removed: set[int]) -> int:
    alive = [a for a in g.nodes if a not in removed]
    idx = {a: i for i, a in enumerate(alive)}
    n = len(alive)
    # vertex split: node i enters at port i, leaves at port n+i
    net = _FlowNet(2 * n + 2)
    s, t = 2 * n, 2 * n + 1
    big = n + 2
    for a in alive:
        i = idx[a]
        net.add_edge(i, n + i, big if (a in sources or a in sinks) else 1)
    for a, b in g.edges:
        if a in removed or b in removed:
            continue
        ia, ib = idx[a], idx[b]
        net.add_edge(n + ia, ib, big)
        net.add_edge(n + ib, ia, big)
    for a in sources:
        if a in idx:
            net.add_edge(s, idx[a], big)
    for a in sinks:
        if a in idx:
            net.add_edge(n + idx[a], t, big)
    return net.max_flow(s, t)


def _reachable(g: AsGraph, start: set[int]) -> set[int]:
    seen = set(a for a in start if a in g.nodes)
    stack = list(seen)
    while stack:
        for nxt in g.neighbors(stack.pop()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def min_vertex_cut(g: AsGraph, sources: set[int], sinks: set[int]) -> VertexCut:
    """Minimum-cardinality set of intermediate nodes separating all sources
    from all sinks.

    Among equal-sized cuts the lexicographically smallest ASN set wins,
    found by greedy refinement: commit the smallest candidate lying on some
    minimum cut, then solve the residual problem.  A direct source-sink
    edge makes every cut impossible (flagged).
    """
    if sources & sinks:
        raise ValueError("sources and sinks overlap")
    for a, b in g.edges:
        if (a in sources and b in sinks) or (b in sources and a in sinks):
            return VertexCut(frozenset(), impossible=True)

    k = _cut_size(g, sources, sinks, set())
    if k == 0:
        return VertexCut(frozenset())
    # only nodes on some source-sink path can appear in a minimum cut
    on_path = _reachable(g, sources) & _reachable(g, sinks)
    candidates = sorted(a for a in on_path if a not in sources and a not in sinks)
    chosen: set[int] = set()
    for asn in candidates:
        if k == 0:
            break
        trial = chosen | {asn}
        if _cut_size(g, sources, sinks, trial) == k - 1:
            chosen = trial
            k -= 1
    return VertexCut(frozenset(chosen))
