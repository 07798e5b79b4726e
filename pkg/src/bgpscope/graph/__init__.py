"""AS-level graph construction and core graph algorithms."""

from .build import build_graph, major_nodes, prune_edges
from .centrality import betweenness
from .cuts import VertexCut, min_vertex_cut
from .export import read_edge_csv, to_dot, to_gexf, write_edge_csv
from .model import AsEdge, AsGraph, AsNode, edge_key
from .relationships import INVALID, UNKNOWN, VALID, RelIndex, customer_cone, valley_free

__all__ = [
    "AsEdge",
    "AsGraph",
    "AsNode",
    "INVALID",
    "RelIndex",
    "UNKNOWN",
    "VALID",
    "VertexCut",
    "betweenness",
    "build_graph",
    "customer_cone",
    "edge_key",
    "major_nodes",
    "min_vertex_cut",
    "prune_edges",
    "read_edge_csv",
    "to_dot",
    "to_gexf",
    "valley_free",
    "write_edge_csv",
]
