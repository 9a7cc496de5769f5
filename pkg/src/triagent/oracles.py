"""Brute-force reference implementations of every protocol output.

These are deliberately simple and independent of the agent simulation:
triangle counts by neighbor intersection, trussness by sequential peeling
and (separately) by an h-index fixed point, centrality and clustering in
exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import PortGraph


@dataclass
class TriangleTally:
    per_node: dict       # node -> T(v)
    per_edge: dict       # (u, v) u < v -> support
    total: int

    def check_identities(self):
        assert sum(self.per_node.values()) == 3 * self.total
        assert sum(self.per_edge.values()) == 3 * self.total


@dataclass
class TrussLabeling:
    per_edge: dict       # (u, v) u < v -> trussness (>= 2)
    t_max: int

    def k_truss(self, k: int):
        """Edges of the k-truss; empty when k exceeds t_max."""
        if k < 2:
            raise ValueError("k-truss is defined for k >= 2")
        return frozenset(e for e, t in self.per_edge.items() if t >= k)


@dataclass
class CentralityVector:
    per_node: dict       # node -> Fraction
    defined: bool        # False when the graph has no triangles


@dataclass
class LccVector:
    per_node: dict       # node -> Fraction


def oracle_triangles(graph: PortGraph) -> TriangleTally:
    """Exact triangle tally by per-edge neighbor intersection."""
    nbr = {v: graph.neighbor_set(v) for v in range(graph.node_count)}
    per_edge = {}
    per_node = {v: 0 for v in range(graph.node_count)}
    for u, v in sorted(graph.edges):
        common = nbr[u] & nbr[v]
        per_edge[(u, v)] = len(common)
    for v in range(graph.node_count):
        # every triangle at v is counted on each of its two incident edges
        s = sum(per_edge[(min(v, u), max(v, u))] for u in nbr[v])
        assert s % 2 == 0
        per_node[v] = s // 2
    total3 = sum(per_edge.values())
    assert total3 % 3 == 0
    tally = TriangleTally(per_node=per_node, per_edge=per_edge,
                          total=total3 // 3)
    tally.check_identities()
    return tally


def _edge_key(u, v):
    return (u, v) if u < v else (v, u)


def oracle_truss(graph: PortGraph) -> TrussLabeling:
    """Trussness by sequential peeling.

    Repeatedly removes the minimum-support edge (lexicographically smallest
    on ties) and records trussness as support + 2, running-max corrected so
    labels never regress when a removal cascade dips below the current
    level.
    """
    support = dict(oracle_triangles(graph).per_edge)
    adj = {v: set(graph.neighbor_set(v)) for v in range(graph.node_count)}
    labels = {}
    level = 2
    while support:
        e = min(support, key=lambda ee: (support[ee], ee))
        u, v = e
        level = max(level, support[e] + 2)
        labels[e] = level
        del support[e]
        for w in adj[u] & adj[v]:
            for f in (_edge_key(u, w), _edge_key(v, w)):
                if f in support:
                    support[f] -= 1
        adj[u].discard(v)
        adj[v].discard(u)
    t_max = max(labels.values(), default=2)
    return TrussLabeling(per_edge=labels, t_max=t_max)


def h_index(values) -> int:
    """Largest h such that at least h of the values are >= h."""
    ordered = sorted(values, reverse=True)
    h = 0
    for i, x in enumerate(ordered):
        if x >= i + 1:
            h = i + 1
        else:
            break
    return h


def oracle_truss_hindex(graph: PortGraph) -> TrussLabeling:
    """Trussness by the synchronous h-index fixed point.

    h(e) starts at support(e); sweeps replace h(e) with
    min(h(e), h_index over min(h(e'), h(e'')) of its triangles) until no
    value moves.  Agrees with oracle_truss on every graph.
    """
    h = dict(oracle_triangles(graph).per_edge)
    nbr = {v: graph.neighbor_set(v) for v in range(graph.node_count)}
    changed = True
    while changed:
        changed = False
        snapshot = dict(h)
        for (u, v) in sorted(h):
            vals = [min(snapshot[_edge_key(u, w)], snapshot[_edge_key(v, w)])
                    for w in nbr[u] & nbr[v]]
            new = min(snapshot[(u, v)], h_index(vals))
            if new < h[(u, v)]:
                h[(u, v)] = new
                changed = True
    labels = {e: x + 2 for e, x in h.items()}
    return TrussLabeling(per_edge=labels,
                         t_max=max(labels.values(), default=2))


def oracle_centrality(graph: PortGraph) -> CentralityVector:
    """Triangle centrality per node, exact rationals.

    TC(v) = ((1/3) * sum of T(u) over v's closed triangle-neighborhood
             + sum of T(w) over non-triangle neighbors) / T(G).
    All zeros with defined=False when the graph is triangle-free.
    """
    tally = oracle_triangles(graph)
    n = graph.node_count
    if tally.total == 0:
        return CentralityVector(
            per_node={v: Fraction(0) for v in range(n)}, defined=False)
    nbr = {v: graph.neighbor_set(v) for v in range(n)}
    per_node = {}
    for v in range(n):
        n_t = {u for u in nbr[v] if nbr[u] & nbr[v]}
        a = tally.per_node[v] + sum(tally.per_node[u] for u in n_t)
        b = sum(tally.per_node[w] for w in nbr[v] - n_t)
        per_node[v] = Fraction(a + 3 * b, 3 * tally.total)
    return CentralityVector(per_node=per_node, defined=True)


def oracle_lcc(graph: PortGraph, standard: bool = False) -> LccVector:
    """Local clustering coefficient T(v) / (deg * (deg - 1)) per node.

    standard=True applies the conventional factor 2; degree <= 1 yields 0.
    """
    tally = oracle_triangles(graph)
    per_node = {}
    for v in range(graph.node_count):
        d = graph.degree(v)
        if d <= 1:
            per_node[v] = Fraction(0)
        else:
            num = 2 * tally.per_node[v] if standard else tally.per_node[v]
            per_node[v] = Fraction(num, d * (d - 1))
    return LccVector(per_node=per_node)
