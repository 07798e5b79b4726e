"""Route-diversity complexity score and egress-bottleneck ranking.

The complexity score summarizes how many distinct domestic route segments
carry each announced prefix: a country whose every prefix is reached over
a single internal route scores 0; richer internal diversity raises the
score.  Per prefix p, R_p counts the distinct maximal all-domestic path
suffixes observed across the tables, and the score is the address-weighted
mean of log2(R_p).
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from math import log2

from ..graph.cuts import VertexCut, min_vertex_cut
from ..graph.model import AsGraph
from ..records import V4, RibEntry
from .attribution import owned_weights
from .country import CountryView, foreign_neighbors

log = logging.getLogger(__name__)


def _domestic_suffix(hops: tuple[int, ...], domestic: set[int]) -> tuple[int, ...]:
    i = len(hops)
    while i > 0 and hops[i - 1] in domestic:
        i -= 1
    return hops[i:]


def complexity_score(
    view: CountryView, entries: Iterable[RibEntry], family: str = V4
) -> float:
    """Address-weighted route diversity, in bits.

    Prefixes with no observed path are excluded from both the sum and the
    weight normalization (logged); weights use most-specific attribution.
    """
    segments: dict = {}
    for entry in entries:
        prefix = entry.prefix
        if prefix.family != family or prefix not in view.prefix_origins:
            continue
        suffix = _domestic_suffix(entry.path.hops, view.domestic)
        if suffix:
            segments.setdefault(prefix, set()).add(suffix)

    weights = owned_weights(view.prefix_origins, family)
    missing = [p for p in weights if p not in segments]
    if missing:
        log.warning(
            "%s: %d prefixes had no observed path and were excluded",
            view.country,
            len(missing),
        )
    norm = sum(weights[p] for p in segments)
    if norm <= 0:
        return 0.0
    return sum(weights[p] / norm * log2(len(segs)) for p, segs in segments.items())


@dataclass(frozen=True)
class EgressShare:
    asn: int
    share: float
    crossings_weight: int


@dataclass(frozen=True)
class EgressReport:
    shares: tuple[EgressShare, ...]
    cut: VertexCut


def egress_bottlenecks(
    view: CountryView,
    entries: Iterable[RibEntry],
    g: AsGraph,
    family: str = V4,
) -> EgressReport:
    """Rank frontier ASes by the address-weighted share of observed
    (prefix, table) border crossings they carry, and compute the minimum
    vertex cut between the country's origins and its foreign neighbors.

    The crossing AS of a path is the first hop of its maximal domestic
    suffix: the last domestic AS outbound traffic would traverse.
    """
    if not view.frontier:
        raise ValueError(f"{view.country} has no frontier ASes")
    weights = owned_weights(view.prefix_origins, family)
    crossings: set[tuple] = set()
    for entry in entries:
        prefix = entry.prefix
        if prefix.family != family or prefix not in view.prefix_origins:
            continue
        hops = entry.path.hops
        suffix = _domestic_suffix(hops, view.domestic)
        if suffix and len(suffix) < len(hops):  # path actually leaves the country
            crossings.add((prefix, entry.table, suffix[0]))

    totals: dict[int, int] = {}
    for prefix, _table, asn in crossings:
        totals[asn] = totals.get(asn, 0) + weights.get(prefix, 0)
    grand = sum(totals.values())
    shares = tuple(
        EgressShare(asn, weight / grand if grand else 0.0, weight)
        for asn, weight in sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))
    )

    origins = {asn for origins in view.prefix_origins.values() for asn in origins}
    cut = min_vertex_cut(g, origins, foreign_neighbors(view, g))
    return EgressReport(shares=shares, cut=cut)
