"""Graph serialization: DOT and GEXF 1.2 for external layout tools, plus an
edge-list CSV that round-trips through import."""

import csv
import xml.etree.ElementTree as ET
from collections.abc import Iterable

from .model import AsEdge, AsGraph, AsNode

GEXF_NS = "http://www.gexf.net/1.2draft"


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: AsGraph) -> str:
    """Undirected DOT with node attributes cc/name and edge attribute obs.

    Output order is sorted, so identical graphs serialize byte-identically.
    """
    lines = ["graph asgraph {"]
    for asn in sorted(g.nodes):
        node = g.nodes[asn]
        attrs = [f"cc={_dot_quote(node.country)}"]
        if node.name:
            attrs.append(f"name={_dot_quote(node.name)}")
        lines.append(f"  {asn} [{', '.join(attrs)}];")
    for a, b in sorted(g.edges):
        lines.append(f"  {a} -- {b} [obs={g.edges[(a, b)].obs_count}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_gexf(g: AsGraph) -> str:
    root = ET.Element("gexf", {"xmlns": GEXF_NS, "version": "1.2"})
    graph = ET.SubElement(root, "graph", {"defaultedgetype": "undirected"})
    node_attrs = ET.SubElement(graph, "attributes", {"class": "node"})
    ET.SubElement(node_attrs, "attribute", {"id": "cc", "title": "cc", "type": "string"})
    ET.SubElement(node_attrs, "attribute", {"id": "name", "title": "name", "type": "string"})
    edge_attrs = ET.SubElement(graph, "attributes", {"class": "edge"})
    ET.SubElement(edge_attrs, "attribute", {"id": "obs", "title": "obs", "type": "integer"})

    nodes_el = ET.SubElement(graph, "nodes")
    for asn in sorted(g.nodes):
        node = g.nodes[asn]
        node_el = ET.SubElement(nodes_el, "node", {"id": str(asn), "label": f"AS{asn}"})
        vals = ET.SubElement(node_el, "attvalues")
        ET.SubElement(vals, "attvalue", {"for": "cc", "value": node.country})
        if node.name:
            ET.SubElement(vals, "attvalue", {"for": "name", "value": node.name})
    edges_el = ET.SubElement(graph, "edges")
    for i, (a, b) in enumerate(sorted(g.edges)):
        edge_el = ET.SubElement(
            edges_el, "edge", {"id": str(i), "source": str(a), "target": str(b)}
        )
        vals = ET.SubElement(edge_el, "attvalues")
        ET.SubElement(vals, "attvalue", {"for": "obs", "value": str(g.edges[(a, b)].obs_count)})
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def write_edge_csv(g: AsGraph, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["a", "b", "obs_count", "rel"])
    for a, b in sorted(g.edges):
        edge = g.edges[(a, b)]
        writer.writerow([a, b, edge.obs_count, edge.rel or ""])


def read_edge_csv(lines: Iterable[str]) -> AsGraph:
    """Rebuild a bare graph (no registry attributes) from an edge-list CSV."""
    nodes: dict[int, AsNode] = {}
    edges: dict[tuple[int, int], AsEdge] = {}
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None or [h.strip() for h in header[:3]] != ["a", "b", "obs_count"]:
        raise ValueError("edge CSV must start with header a,b,obs_count,rel")
    for row in reader:
        if not row:
            continue
        a, b, obs = int(row[0]), int(row[1]), int(row[2])
        rel = row[3] or None if len(row) > 3 else None
        if a > b:
            a, b = b, a
        for asn in (a, b):
            if asn not in nodes:
                nodes[asn] = AsNode(asn=asn)
        edges[(a, b)] = AsEdge(a, b, obs, rel)
    return AsGraph(nodes, edges)
