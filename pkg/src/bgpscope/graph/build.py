"""Build the AS graph from RibEntries and annotate it from registry and
relationship data."""

from collections import defaultdict
from collections.abc import Iterable

from ..addressing import address_span
from ..ingest.delegations import Registry
from ..records import P2C, RegistryRecord, RelRecord, RibEntry
from .model import AsEdge, AsGraph, AsNode, edge_key


def _edge_rel(a: int, b: int, rels: dict[tuple[int, int], str]) -> str | None:
    """Relationship label for the sorted pair (a, b), orientation encoded."""
    rel = rels.get((a, b))
    if rel is not None:
        return rel
    rel = rels.get((b, a))
    if rel is None:
        return None
    return "c2p" if rel == P2C else rel


def build_graph(
    entries: Iterable[RibEntry],
    registry: Registry | Iterable[RegistryRecord] | None = None,
    rels: Iterable[RelRecord] | None = None,
    names: dict[int, str] | None = None,
) -> AsGraph:
    """Construct the annotated AS graph.

    An edge's obs_count is the number of distinct routing tables (one table
    per (vantage, timestamp) pair) in which the adjacency appeared; repeats
    within one table do not add.  The last hop of each path originates the
    entry's prefix.
    """
    table_ids: dict[tuple[str, int], int] = {}
    edge_tables: dict[tuple[int, int], set[int]] = defaultdict(set)
    originated: dict[int, set] = defaultdict(set)
    seen: set[int] = set()

    for entry in entries:
        table = table_ids.setdefault(entry.table, len(table_ids))
        hops = entry.path.hops
        seen.update(hops)
        originated[hops[-1]].add(entry.prefix)
        for u, v in zip(hops, hops[1:]):
            edge_tables[edge_key(u, v)].add(table)

    reg = Registry.ensure(registry) if registry is not None else None
    rel_map = {(r.a, r.b): r.rel for r in rels} if rels else {}
    names = names or {}

    nodes = {}
    for asn in seen:
        prefixes = frozenset(originated.get(asn, ()))
        nodes[asn] = AsNode(
            asn=asn,
            country=reg.asn_country(asn) if reg else "ZZ",
            name=names.get(asn),
            prefixes=prefixes,
            addr_count=address_span(prefixes),
        )
    edges = {
        key: AsEdge(key[0], key[1], len(tabs), _edge_rel(key[0], key[1], rel_map))
        for key, tabs in edge_tables.items()
    }
    return AsGraph(nodes, edges, tables=len(table_ids))


def prune_edges(g: AsGraph, min_obs: int, drop_isolated: bool = False) -> AsGraph:
    """Drop edges observed in fewer than `min_obs` distinct routing tables
    (backup links and private peering rarely make it into many tables)."""
    if min_obs < 1:
        raise ValueError("min_obs must be >= 1")
    edges = {k: e for k, e in g.edges.items() if e.obs_count >= min_obs}
    nodes = g.nodes
    if drop_isolated:
        connected = {a for k in edges for a in k}
        nodes = {asn: n for asn, n in nodes.items() if asn in connected}
    return AsGraph(dict(nodes), edges, g.tables)


def major_nodes(g: AsGraph, min_prefixes: int) -> set[int]:
    """ASNs originating at least `min_prefixes` prefixes."""
    if min_prefixes < 0:
        raise ValueError("min_prefixes must be >= 0")
    return {asn for asn, node in g.nodes.items() if len(node.prefixes) >= min_prefixes}
