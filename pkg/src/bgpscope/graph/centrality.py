"""Betweenness centrality (Brandes) over the unweighted AS graph.

Scores are raw shortest-path pair counts: each unordered node pair
contributes 1, split evenly among its equal-length shortest paths; node
scores exclude the endpoints.  obs_count is metadata, never a distance.

The accumulation runs over CSR arrays in a numba-compiled kernel so that
full routing-table graphs (tens of thousands of nodes) stay tractable.
"""

import numpy as np
from numba import njit

from .model import AsGraph


@njit(cache=True)
def _brandes(indptr, indices, eids, n, m):
    node_bc = np.zeros(n, np.float64)
    edge_bc = np.zeros(m, np.float64)
    dist = np.empty(n, np.int64)
    sigma = np.empty(n, np.float64)
    delta = np.empty(n, np.float64)
    order = np.empty(n, np.int64)
    for s in range(n):
        for i in range(n):
            dist[i] = -1
            sigma[i] = 0.0
            delta[i] = 0.0
        head, tail = 0, 0
        dist[s] = 0
        sigma[s] = 1.0
        order[tail] = s
        tail += 1
        while head < tail:
            v = order[head]
            head += 1
            dv = dist[v]
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dv + 1:
                    sigma[w] += sigma[v]
        # visit order reversed is non-increasing distance; accumulate
        # dependencies onto predecessors and the edges reaching them
        for i in range(tail - 1, -1, -1):
            w = order[i]
            dw = dist[w]
            coeff = (1.0 + delta[w]) / sigma[w]
            for k in range(indptr[w], indptr[w + 1]):
                v = indices[k]
                if dist[v] == dw - 1:
                    c = sigma[v] * coeff
                    delta[v] += c
                    edge_bc[eids[k]] += c
            if w != s:
                node_bc[w] += delta[w]
    return node_bc, edge_bc


def betweenness(
    g: AsGraph,
) -> tuple[dict[int, float], dict[tuple[int, int], float]]:
    """Node and edge betweenness as raw unordered-pair path counts."""
    asns = sorted(g.nodes)
    if not asns:
        return {}, {}
    index = {asn: i for i, asn in enumerate(asns)}
    edge_list = sorted(g.edges)
    n, m = len(asns), len(edge_list)

    deg = np.zeros(n + 1, np.int64)
    for a, b in edge_list:
        deg[index[a] + 1] += 1
        deg[index[b] + 1] += 1
    indptr = np.cumsum(deg)
    indices = np.empty(2 * m, np.int64)
    eids = np.empty(2 * m, np.int64)
    fill = indptr[:-1].copy()
    for j, (a, b) in enumerate(edge_list):
        ia, ib = index[a], index[b]
        indices[fill[ia]] = ib
        eids[fill[ia]] = j
        fill[ia] += 1
        indices[fill[ib]] = ia
        eids[fill[ib]] = j
        fill[ib] += 1

    node_bc, edge_bc = _brandes(indptr, indices, eids, n, m)
    # every unordered pair was counted from both endpoints
    node_scores = {asn: node_bc[index[asn]] / 2.0 for asn in asns}
    edge_scores = {key: edge_bc[j] / 2.0 for j, key in enumerate(edge_list)}
    return node_scores, edge_scores
