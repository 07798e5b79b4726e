"""Relationship-aware path logic: economic validity of AS paths and
customer cones."""

from collections import defaultdict
from collections.abc import Iterable

from ..records import P2C, P2P, S2S, AsPath, RelRecord
from .model import AsGraph

VALID = "valid"
INVALID = "invalid"
UNKNOWN = "unknown"


class RelIndex:
    """Pair lookup plus provider/customer/sibling adjacency over RelRecords."""

    def __init__(self, records: Iterable[RelRecord]):
        self._pair: dict[tuple[int, int], str] = {}
        self.customers: dict[int, set[int]] = defaultdict(set)
        self.siblings: dict[int, set[int]] = defaultdict(set)
        for rec in records:
            if rec.rel == P2C:
                self._pair[(rec.a, rec.b)] = P2C
                self.customers[rec.a].add(rec.b)
            elif rec.rel == P2P:
                self._pair[(rec.a, rec.b)] = P2P
            else:
                self._pair[(rec.a, rec.b)] = S2S
                self.siblings[rec.a].add(rec.b)
                self.siblings[rec.b].add(rec.a)

    @classmethod
    def ensure(cls, obj) -> "RelIndex":
        return obj if isinstance(obj, RelIndex) else cls(obj)

    def hop(self, u: int, v: int) -> str | None:
        """Classify the hop u->v: 'p2c' going down to a customer, 'c2p'
        going up to a provider, 'p2p', 's2s', or None when unknown."""
        rel = self._pair.get((u, v))
        if rel is not None:
            return rel
        rel = self._pair.get((v, u))
        if rel is None:
            return None
        return "c2p" if rel == P2C else rel

    def are_siblings(self, u: int, v: int) -> bool:
        return v in self.siblings.get(u, ())


def valley_free(path: AsPath, rels: RelIndex | Iterable[RelRecord]) -> str:
    """Check a path against the up*(peer)?down* pattern.

    Sibling hops are transparent.  Returns 'invalid' as soon as a violation
    is provable from the known hops alone, 'unknown' if any hop lacks a
    relationship and nothing is provably wrong, else 'valid'.
    """
    idx = RelIndex.ensure(rels)
    seen_peer = False
    seen_down = False
    has_unknown = False
    for u, v in zip(path.hops, path.hops[1:]):
        hop = idx.hop(u, v)
        if hop is None:
            has_unknown = True
        elif hop == S2S:
            continue
        elif hop == "c2p":
            if seen_peer or seen_down:
                return INVALID
        elif hop == P2P:
            if seen_peer or seen_down:
                return INVALID
            seen_peer = True
        else:  # p2c, downhill
            seen_down = True
    return UNKNOWN if has_unknown else VALID


def customer_cone(
    g: AsGraph, rels: RelIndex | Iterable[RelRecord], asn: int
) -> set[int]:
    """ASes reachable from `asn` by walking provider-to-customer links
    downward; sibling links merge the cones of both siblings."""
    if asn not in g.nodes:
        raise KeyError(f"AS{asn} not in graph")
    idx = RelIndex.ensure(rels)
    cone = {asn}
    stack = [asn]
    while stack:
        cur = stack.pop()
        for nxt in idx.customers.get(cur, set()) | idx.siblings.get(cur, set()):
            if nxt not in cone:
                cone.add(nxt)
                stack.append(nxt)
    return cone
