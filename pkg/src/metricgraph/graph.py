"""Simple undirected graphs and BFS geodesic distances.

Graphs are immutable: labeled vertices plus sorted per-vertex neighbor
index lists.  Disconnected graphs are representable (the enumerator needs
them mid-stream); every geodesic-metric consumer checks connectivity and
raises `Disconnected` otherwise.  Unreachable distance entries are None.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import Disconnected, EmptySubset, ParseError, UnknownLabel
from .metric import MetricSpace

DistanceMatrix = tuple[tuple[int | None, ...], ...]


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph with labeled vertices."""

    vertex_labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.vertex_labels)
        if n == 0:
            raise ParseError("a graph needs at least one vertex")
        if len(set(self.vertex_labels)) != n:
            raise ParseError(f"duplicate vertex labels in {self.vertex_labels}")
        for lab in self.vertex_labels:
            if not isinstance(lab, str) or not lab:
                raise ParseError(f"vertex labels must be nonempty strings, got {lab!r}")
        if len(self.adjacency) != n:
            raise ParseError(f"{n} vertices but {len(self.adjacency)} adjacency rows")
        for i, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise ParseError(f"neighbor list of vertex {i} must be sorted and duplicate-free")
            for j in nbrs:
                if not 0 <= j < n:
                    raise ParseError(f"neighbor index {j} of vertex {i} out of range")
                if j == i:
                    raise ParseError(f"self-loop at vertex {i}")
                if i not in self.adjacency[j]:
                    raise ParseError(f"edge ({i},{j}) is not symmetric")
        object.__setattr__(
            self, "_index", {lab: i for i, lab in enumerate(self.vertex_labels)}
        )

    @classmethod
    def from_edges(
        cls,
        vertex_labels: list[str] | tuple[str, ...],
        edges: list[tuple[int, int]] | tuple,
    ) -> "Graph":
        n = len(vertex_labels)
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            if len(e) != 2:
                raise ParseError(f"edge {e!r} must be a pair")
            i, j = e
            if not (isinstance(i, int) and isinstance(j, int)):
                raise ParseError(f"edge {e!r} must contain integer indices")
            if not (0 <= i < n and 0 <= j < n):
                raise ParseError(f"edge {e!r} out of range for {n} vertices")
            if i == j:
                raise ParseError(f"self-loop {e!r} not allowed")
            if j in nbrs[i]:
                raise ParseError(f"duplicate edge {e!r}")
            nbrs[i].add(j)
            nbrs[j].add(i)
        return cls(
            tuple(vertex_labels),
            tuple(tuple(sorted(s)) for s in nbrs),
        )

    @property
    def n(self) -> int:
        return len(self.vertex_labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]  # type: ignore[attr-defined]
        except KeyError:
            raise UnknownLabel(f"unknown vertex label {label!r}") from None

    def edges(self) -> list[tuple[int, int]]:
        """Edge list as index pairs (i, j) with i < j, sorted."""
        return [(i, j) for i in range(self.n) for j in self.adjacency[i] if i < j]

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]


# ---------------------------------------------------------------------------
# Factories
# ---------------------------------------------------------------------------

def path_graph(n: int, prefix: str = "v") -> Graph:
    """Path on n vertices v0-v1-...-v{n-1}."""
    return Graph.from_edges(
        [f"{prefix}{i}" for i in range(n)], [(i, i + 1) for i in range(n - 1)]
    )


def cycle_graph(n: int, prefix: str = "v") -> Graph:
    """Cycle on n >= 3 vertices in ring order."""
    if n < 3:
        raise ParseError(f"a cycle needs at least 3 vertices, got {n}")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return Graph.from_edges([f"{prefix}{i}" for i in range(n)], edges)


# ---------------------------------------------------------------------------
# BFS distances and paths
# ---------------------------------------------------------------------------

def _bfs_from(g: Graph, src: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in g.adjacency[u]:
            if dist[v] is None:
                dist[v] = du + 1  # type: ignore[operator]
                queue.append(v)
    return dist


def geodesic_distances(g: Graph) -> DistanceMatrix:
    """All-pairs minimum edge counts via BFS from every vertex.

    Entries are None exactly for vertex pairs in different components.
    """
    return tuple(tuple(_bfs_from(g, s)) for s in range(g.n))


def is_connected(g: Graph) -> bool:
    return all(v is not None for v in _bfs_from(g, 0))


def geodesic_metric(g: Graph) -> MetricSpace:
    """The geodesic distance as a validated MetricSpace (connected graphs)."""
    dist = geodesic_distances(g)
    if any(v is None for row in dist for v in row):
        raise Disconnected("geodesic metric requires a connected graph")
    rows = tuple(tuple(Fraction(v) for v in row) for row in dist)  # type: ignore[arg-type]
    return MetricSpace(g.vertex_labels, rows)


def shortest_path(g: Graph, x: str, z: str) -> list[str]:
    """One shortest path from x to z, as vertex labels.

    Deterministic: walking back from z, each predecessor is the
    lowest-index neighbor one BFS level closer to x.
    """
    src, dst = g.index(x), g.index(z)
    dist = _bfs_from(g, src)
    if dist[dst] is None:
        raise Disconnected(f"no path joins {x!r} and {z!r}")
    rev = [dst]
    cur = dst
    while cur != src:
        cur = min(v for v in g.adjacency[cur] if dist[v] == dist[cur] - 1)
        rev.append(cur)
    return [g.vertex_labels[i] for i in reversed(rev)]


# ---------------------------------------------------------------------------
# Subgraphs and shape classification
# ---------------------------------------------------------------------------

def induced_subgraph(g: Graph, subset: set[str] | list[str] | tuple[str, ...]) -> Graph:
    """Subgraph on the given labels keeping exactly the edges of g.

    Vertex order follows the host graph's order.
    """
    wanted = set(subset)
    if not wanted:
        raise EmptySubset("induced subgraph needs a nonempty vertex subset")
    for lab in wanted:
        g.index(lab)
    keep = [i for i, lab in enumerate(g.vertex_labels) if lab in wanted]
    remap = {old: new for new, old in enumerate(keep)}
    labels = [g.vertex_labels[i] for i in keep]
    edges = [
        (remap[i], remap[j])
        for (i, j) in g.edges()
        if i in remap and j in remap
    ]
    return Graph.from_edges(labels, edges)


@dataclass(frozen=True)
class ShapeClass:
    """Degree-sequence shape: single_vertex, path (size = edge count),
    cycle (size = vertex count), or other."""

    kind: str
    size: int | None = None

    @property
    def is_path(self) -> bool:
        return self.kind == "path"

    @property
    def is_cycle(self) -> bool:
        return self.kind == "cycle"


def classify_shape(g: Graph) -> ShapeClass:
    n = g.n
    if n == 1:
        return ShapeClass("single_vertex")
    if not is_connected(g):
        return ShapeClass("other")
    degrees = sorted(g.degree(i) for i in range(n))
    if degrees == [1, 1] + [2] * (n - 2):
        return ShapeClass("path", n - 1)
    if n >= 3 and degrees == [2] * n:
        return ShapeClass("cycle", n)
    return ShapeClass("other")


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

def parse_graph(text: str, format: str = "json") -> Graph:
    """Parse a graph from JSON (`{"vertices": [...], "edges": [[i,j], ...]}`)
    or text (`n m` header then m lines `i j`); indices are 0-based."""
    if format == "json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ParseError("graph JSON must be an object")
        if "vertices" not in doc or "edges" not in doc:
            raise ParseError('graph JSON needs "vertices" and "edges" keys')
        vertices = doc["vertices"]
        edges = doc["edges"]
        if not isinstance(vertices, list) or not isinstance(edges, list):
            raise ParseError('"vertices" and "edges" must be arrays')
        pairs = []
        for e in edges:
            if not isinstance(e, list) or len(e) != 2:
                raise ParseError(f"edge {e!r} must be an index pair")
            pairs.append((e[0], e[1]))
        return Graph.from_edges(vertices, pairs)

    if format == "text":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty graph input")
        header = lines[0].split()
        if len(header) != 2:
            raise ParseError(f"expected header 'n m', got {lines[0]!r}")
        try:
            n, m = int(header[0]), int(header[1])
        except ValueError as exc:
            raise ParseError(f"bad header {lines[0]!r}") from exc
        if len(lines) - 1 != m:
            raise ParseError(f"expected {m} edge lines, got {len(lines) - 1}")
        pairs = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ParseError(f"bad edge line {ln!r}")
            try:
                pairs.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise ParseError(f"bad edge line {ln!r}") from exc
        return Graph.from_edges([f"v{i}" for i in range(n)], pairs)

    raise ParseError(f"unknown graph format {format!r}")


def graph_doc(g: Graph) -> dict:
    """Graph as a JSON-ready dict with sorted i < j edge pairs."""
    return {
        "vertices": list(g.vertex_labels),
        "edges": [[i, j] for (i, j) in g.edges()],
    }


def dump_graph(g: Graph, format: str = "json") -> str:
    """Serialize a graph; edges are emitted with i < j in sorted order."""
    if format == "json":
        return json.dumps(graph_doc(g), sort_keys=True, separators=(",", ": ")) + "\n"
    if format == "text":
        lines = [f"{g.n} {g.edge_count()}"]
        for i, j in g.edges():
            lines.append(f"{i} {j}")
        return "\n".join(lines) + "\n"
    raise ParseError(f"unknown graph format {format!r}")
