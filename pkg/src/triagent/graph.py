"""Anonymous port-labeled graphs: loading, generation, validation, queries.

A PortGraph is a simple connected undirected graph where each node of
degree d labels its incident edges with ports 0..d-1, independently of the
far endpoint's labeling.  Node indices exist only for the simulator and the
oracles; agents never see them.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field


class GraphError(ValueError):
    """Raised for malformed edge lists or invalid generator parameters."""


@dataclass(frozen=True)
class PortGraph:
    """Immutable port-labeled graph.

    port_map[v][p] == (u, q) means port p at v crosses the edge {v, u} and
    arrives through port q at u.
    """

    node_count: int
    edges: frozenset  # of (u, v) tuples with u < v
    port_map: tuple   # port_map[v] = tuple of (neighbor, remote_port)

    @property
    def edge_count(self):
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.port_map[v])

    @property
    def max_degree(self) -> int:
        return max((len(p) for p in self.port_map), default=0)

    def neighbors(self, v: int):
        return tuple(u for u, _ in self.port_map[v])

    def neighbor_set(self, v: int) -> frozenset:
        return frozenset(u for u, _ in self.port_map[v])

    def port_to(self, v: int, u: int) -> int:
        """Port at v whose edge leads to u."""
        for p, (w, _) in enumerate(self.port_map[v]):
            if w == u:
                return p
        raise KeyError((v, u))

    def traverse(self, v: int, p: int):
        """Follow port p out of v; returns (far node, entry port there)."""
        return self.port_map[v][p]

    def validate(self):
        """Check all structural invariants; raises GraphError on violation."""
        n = self.node_count
        if n <= 0:
            raise GraphError("node count must be positive")
        seen = set()
        for v in range(n):
            ports = self.port_map[v]
            for p, (u, q) in enumerate(ports):
                if u == v:
                    raise GraphError(f"self-loop at node {v}")
                if not 0 <= u < n:
                    raise GraphError(f"node index {u} out of range")
                far = self.port_map[u]
                if q >= len(far) or far[q] != (v, p):
                    raise GraphError(
                        f"port symmetry broken at node {v} port {p}")
                seen.add((min(u, v), max(u, v)))
            if len({u for u, _ in ports}) != len(ports):
                raise GraphError(f"parallel edge at node {v}")
        if seen != set(self.edges):
            raise GraphError("edge set inconsistent with port map")
        if sum(self.degree(v) for v in range(n)) != 2 * len(self.edges):
            raise GraphError("degree sum != 2m")
        if n > 1 and len(self._bfs_dist(0)) != n:
            raise GraphError("graph is disconnected")

    def _bfs_dist(self, src: int) -> dict:
        dist = {src: 0}
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for u, _ in self.port_map[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    def diameter(self) -> int:
        """Exact diameter via all-pairs BFS."""
        best = 0
        for v in range(self.node_count):
            dist = self._bfs_dist(v)
            if len(dist) != self.node_count:
                raise GraphError("graph is disconnected")
            best = max(best, max(dist.values()))
        return best


def build_graph(n: int, edges, neighbor_order=None) -> PortGraph:
    """Assemble a PortGraph from an edge collection.

    neighbor_order, when given, maps node -> sequence of its neighbors and
    fixes the port numbering; otherwise ports follow ascending neighbor
    index.  Validates every invariant before returning.
    """
    norm = set()
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}): node index out of range")
        if u == v:
            raise GraphError(f"edge ({u}, {v}): self-loop")
        key = (min(u, v), max(u, v))
        if key in norm:
            raise GraphError(f"edge ({u}, {v}): duplicate edge")
        norm.add(key)
        adj[u].add(v)
        adj[v].add(u)

    order = {}
    for v in range(n):
        if neighbor_order is not None:
            row = list(neighbor_order[v])
            if set(row) != adj[v] or len(row) != len(adj[v]):
                raise GraphError(f"port order for node {v} does not match "
                                 f"its neighbor set")
        else:
            row = sorted(adj[v])
        order[v] = row

    index_of = {v: {u: p for p, u in enumerate(order[v])} for v in range(n)}
    port_map = tuple(
        tuple((u, index_of[u][v]) for u in order[v]) for v in range(n))
    g = PortGraph(node_count=n, edges=frozenset(norm), port_map=port_map)
    g.validate()
    return g


def shuffle_ports(graph: PortGraph, seed: int) -> PortGraph:
    """Same graph, seeded random port numbering at every node."""
    rng = random.Random(seed)
    order = {}
    for v in range(graph.node_count):
        row = list(graph.neighbors(v))
        rng.shuffle(row)
        order[v] = row
    return build_graph(graph.node_count, graph.edges, neighbor_order=order)


def relabel_nodes(graph: PortGraph, perm) -> PortGraph:
    """Apply a node permutation, preserving each node's port order."""
    n = graph.node_count
    edges = {(min(perm[u], perm[v]), max(perm[u], perm[v]))
             for u, v in graph.edges}
    order = {perm[v]: [perm[u] for u in graph.neighbors(v)]
             for v in range(n)}
    return build_graph(n, edges, neighbor_order=order)


# ---------------------------------------------------------------------------
# Edge-list text format
# ---------------------------------------------------------------------------

def load_graph(text: str) -> PortGraph:
    """Parse an edge-list document into a PortGraph.

    Lines are "u v" with 0-based indices.  Optional header "n <count>"
    pins the node count; optional "# ports v: a,b,c" comments pin the
    port order at node v (as written by serialize_graph).
    """
    edges = []
    n_header = None
    port_lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("ports"):
                try:
                    head, rest = body.split(":", 1)
                    v = int(head.split()[1])
                    port_lines[v] = [int(x) for x in rest.split(",")]
                except (ValueError, IndexError):
                    raise GraphError(f"line {lineno}: bad ports comment")
            continue
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2:
                raise GraphError(f"line {lineno}: bad header")
            n_header = int(parts[1])
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer node index")
        edges.append((u, v))

    if not edges and n_header != 1:
        raise GraphError("document contains no edges")
    n = n_header
    if n is None:
        n = max(max(u, v) for u, v in edges) + 1
    order = None
    if port_lines:
        if set(port_lines) != set(range(n)):
            raise GraphError("ports comments must cover every node")
        order = port_lines
    return build_graph(n, edges, neighbor_order=order)


def serialize_graph(graph: PortGraph, with_ports: bool = True) -> str:
    """Emit the edge-list document; inverse of load_graph."""
    lines = [f"n {graph.node_count}"]
    for u, v in sorted(graph.edges):
        lines.append(f"{u} {v}")
    if with_ports:
        for v in range(graph.node_count):
            row = ",".join(str(u) for u in graph.neighbors(v))
            lines.append(f"# ports {v}: {row}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

GENERATOR_MODELS = ("complete", "cycle", "path", "star", "petersen",
                    "gnp", "diamond")


@dataclass(frozen=True)
class GeneratorConfig:
    model: str
    n: int = 0
    p: float = 0.0
    seed: int = 0
    shuffle_ports_seed: int | None = None

    def __post_init__(self):
        if self.model not in GENERATOR_MODELS:
            raise GraphError(f"unknown generator model {self.model!r}")


def _petersen_edges():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return outer + spokes + inner


def generate(config: GeneratorConfig) -> PortGraph:
    """Deterministic graph for (model, params, seed)."""
    m = config.model
    n = config.n
    if m == "complete":
        if n < 2:
            raise GraphError("complete graph needs n >= 2")
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    elif m == "cycle":
        if n < 3:
            raise GraphError("cycle needs n >= 3")
        edges = [(v, (v + 1) % n) for v in range(n)]
    elif m == "path":
        if n < 2:
            raise GraphError("path needs n >= 2")
        edges = [(v, v + 1) for v in range(n - 1)]
    elif m == "star":
        if n < 2:
            raise GraphError("star needs n >= 2")
        edges = [(0, v) for v in range(1, n)]
    elif m == "petersen":
        n = 10
        edges = _petersen_edges()
    elif m == "diamond":
        n = 4
        edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
    elif m == "gnp":
        if n < 2 or not 0.0 < config.p <= 1.0:
            raise GraphError("gnp needs n >= 2 and 0 < p <= 1")
        edges = _gnp_connected(n, config.p, config.seed)
    else:  # pragma: no cover - guarded by GeneratorConfig
        raise GraphError(f"unknown model {m!r}")

    g = build_graph(n, edges)
    if config.shuffle_ports_seed is not None:
        g = shuffle_ports(g, config.shuffle_ports_seed)
    return g


def _gnp_connected(n: int, p: float, seed: int):
    """G(n,p) edge sample, re-drawn until connected.  Seed-deterministic."""
    rng = random.Random(("gnp", n, p, seed).__repr__())
    for _ in range(10000):
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < p]
        if _connected(n, edges):
            return edges
    raise GraphError(f"gnp({n}, {p}) produced no connected graph "
                     f"in 10000 attempts")


def _connected(n: int, edges) -> bool:
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == n
