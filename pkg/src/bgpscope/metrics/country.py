"""Per-country slice of the AS graph: domestic nodes, frontier, internal
and external connection tallies, address accounting."""

import logging
from dataclasses import dataclass, field

from ..addressing import address_span
from ..graph.model import AsGraph
from ..ingest.delegations import Registry
from ..records import Prefix

log = logging.getLogger(__name__)


@dataclass
class CountryView:
    country: str
    domestic: set[int] = field(default_factory=set)
    frontier: set[int] = field(default_factory=set)
    internal_edges: int = 0
    external_edges: int = 0
    external_unknown: int = 0  # external edges whose far endpoint has no country
    total_addr: dict[str, int] = field(default_factory=dict)
    prefix_origins: dict[Prefix, set[int]] = field(default_factory=dict)


def country_view(g: AsGraph, registry, cc: str) -> CountryView:
    """Slice the graph for one country.

    A domestic AS is one whose ASN is registered to `cc`; the frontier is
    every domestic AS with at least one non-domestic neighbor.  Edges with
    an unattributable (ZZ) far endpoint count as external and are also
    tallied separately.
    """
    reg = Registry.ensure(registry)
    view = CountryView(country=cc)
    if cc not in reg.countries():
        log.warning("country %s has no registry records; returning empty view", cc)
        return view

    view.domestic = {asn for asn in g.nodes if reg.asn_country(asn) == cc}
    for (a, b), _edge in g.edges.items():
        a_dom, b_dom = a in view.domestic, b in view.domestic
        if a_dom and b_dom:
            view.internal_edges += 1
        elif a_dom or b_dom:
            view.external_edges += 1
            domestic, foreign = (a, b) if a_dom else (b, a)
            view.frontier.add(domestic)
            if g.nodes[foreign].country == "ZZ":
                view.external_unknown += 1
    for asn in view.domestic:
        for prefix in g.nodes[asn].prefixes:
            view.prefix_origins.setdefault(prefix, set()).add(asn)
    view.total_addr = address_span(view.prefix_origins)
    return view


def neighbor_histogram(view: CountryView, g: AsGraph) -> dict[str, int]:
    """Nationalities of the foreign ASes adjacent to the country, one count
    per distinct foreign AS (not per edge)."""
    foreign: set[int] = set()
    for a, b in g.edges:
        if (a in view.domestic) != (b in view.domestic):
            foreign.add(b if a in view.domestic else a)
    hist: dict[str, int] = {}
    for asn in foreign:
        cc = g.nodes[asn].country
        hist[cc] = hist.get(cc, 0) + 1
    return hist


def foreign_neighbors(view: CountryView, g: AsGraph) -> set[int]:
    """Non-domestic ASes adjacent to any domestic AS."""
    out: set[int] = set()
    for asn in view.frontier:
        out.update(n for n in g.neighbors(asn) if n not in view.domestic)
    return out
