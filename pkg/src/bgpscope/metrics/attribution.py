"""Most-specific address attribution: the weight of a prefix is the number
of its addresses not covered by any strictly more-specific announced
prefix.  Weights are therefore disjoint and sum to the country's
deduplicated span per family."""

from collections.abc import Iterable

from ..records import Prefix


def owned_weights(prefixes: Iterable[Prefix], family: str) -> dict[Prefix, int]:
    """Addresses each prefix owns after carving out more-specific blocks."""
    fam = sorted((p for p in prefixes if p.family == family), key=lambda p: (p.base, p.length))
    weights: dict[Prefix, int] = {}
    for i, p in enumerate(fam):
        owned = p.span
        covered_end = p.first - 1
        for q in fam[i + 1 :]:
            if q.first > p.last:
                break
            if q.length <= p.length:  # same block or a covering one; not more specific
                continue
            # q nested in p (CIDR blocks are laminar); count newly shadowed span
            start = max(q.first, covered_end + 1)
            if q.last >= start:
                owned -= q.last - start + 1
                covered_end = max(covered_end, q.last)
        weights[p] = owned
    return weights
