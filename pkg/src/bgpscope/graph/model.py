"""Undirected AS-level graph: nodes with registry attributes, edges with
per-table observation counts.  The graph is immutable after build; all
algorithms treat it as read-only."""

from dataclasses import dataclass, field

from ..records import Prefix


@dataclass(frozen=True)
class AsNode:
    asn: int
    country: str = "ZZ"
    name: str | None = None
    prefixes: frozenset[Prefix] = frozenset()
    addr_count: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class AsEdge:
    """Undirected edge, endpoints ordered a < b.  `rel` is relative to that
    ordering: p2c means a is the provider of b, c2p the reverse."""

    a: int
    b: int
    obs_count: int = 1
    rel: str | None = None


def edge_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass
class AsGraph:
    nodes: dict[int, AsNode]
    edges: dict[tuple[int, int], AsEdge]
    tables: int = 0

    def __post_init__(self):
        self._adj: dict[int, set[int]] | None = None

    @property
    def adjacency(self) -> dict[int, set[int]]:
        if self._adj is None:
            adj: dict[int, set[int]] = {asn: set() for asn in self.nodes}
            for a, b in self.edges:
                adj[a].add(b)
                adj[b].add(a)
            self._adj = adj
        return self._adj

    def neighbors(self, asn: int) -> set[int]:
        return self.adjacency[asn]

    def has_edge(self, a: int, b: int) -> bool:
        return edge_key(a, b) in self.edges

    def subgraph(self, keep: set[int]) -> "AsGraph":
        nodes = {asn: node for asn, node in self.nodes.items() if asn in keep}
        edges = {k: e for k, e in self.edges.items() if k[0] in keep and k[1] in keep}
        return AsGraph(nodes, edges, self.tables)

    def __len__(self) -> int:
        return len(self.nodes)
