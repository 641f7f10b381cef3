"""Finite multigraphs, subdivision, and the subdivision checks for the discrete models.

A :class:`Graph` keeps vertices and edges in declaration order.  That order is
the global order used everywhere downstream: cells of a product complex are
encoded as integer tuples where ``0..V-1`` are vertices and ``V..V+E-1`` are
edges.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable


class GraphError(ValueError):
    """Raised for malformed graph descriptions or unknown identifiers."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    """Finite multigraph; loops and parallel edges allowed.

    ``edges`` holds ``(edge_id, tail, head)`` triples.  Orientation is only
    bookkeeping: it fixes the sign of the boundary of an edge.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]
    name: str = "graph"
    _vindex: dict = field(init=False, repr=False, compare=False, hash=False)
    _eindex: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        edges = tuple(tuple(e) for e in self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        vindex = {}
        for i, v in enumerate(vertices):
            if v in vindex:
                raise GraphError(f"duplicate vertex {v!r}")
            vindex[v] = i
        eindex = {}
        for i, (e, t, h) in enumerate(edges):
            if e in eindex:
                raise GraphError(f"duplicate edge {e!r}")
            for end in (t, h):
                if end not in vindex:
                    raise GraphError(f"edge {e!r} has unknown endpoint {end!r}")
            eindex[e] = i
        object.__setattr__(self, "_vindex", vindex)
        object.__setattr__(self, "_eindex", eindex)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertex_index(self, v: str) -> int:
        try:
            return self._vindex[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def edge_index(self, e: str) -> int:
        try:
            return self._eindex[e]
        except KeyError:
            raise GraphError(f"unknown edge {e!r}") from None

    def endpoints(self, e: str) -> tuple[str, str]:
        _, t, h = self.edges[self.edge_index(e)]
        return t, h

    def has_vertex(self, v: str) -> bool:
        return v in self._vindex

    def incident_edges(self, v: str) -> list[str]:
        """Edges touching ``v``; a loop is listed once."""
        self.vertex_index(v)
        return [e for e, t, h in self.edges if t == v or h == v]

    def to_text(self) -> str:
        lines = [f"# {self.name}"]
        lines += [f"v {v}" for v in self.vertices]
        lines += [f"e {e} {t} {h}" for e, t, h in self.edges]
        return "\n".join(lines) + "\n"


def parse_graph(text: str, name: str = "graph") -> Graph:
    """Parse the line format: ``v <id>``, ``e <id> <tail> <head>``, ``#`` comments.

    Errors carry the offending line number.
    """
    vertices: list[str] = []
    seen_v: set[str] = set()
    edges: list[tuple[str, str, str]] = []
    seen_e: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            if parts[1] in seen_v:
                raise GraphError(f"duplicate vertex {parts[1]!r}", lineno)
            seen_v.add(parts[1])
            vertices.append(parts[1])
        elif parts[0] == "e" and len(parts) == 4:
            e, t, h = parts[1:]
            if e in seen_e:
                raise GraphError(f"duplicate edge {e!r}", lineno)
            for end in (t, h):
                if end not in seen_v:
                    raise GraphError(f"unknown endpoint {end!r}", lineno)
            seen_e.add(e)
            edges.append((e, t, h))
        else:
            raise GraphError(f"malformed line {line!r}", lineno)
    return Graph(tuple(vertices), tuple(edges), name=name)


def valence(g: Graph, v: str) -> int:
    """Number of edge-ends at ``v`` (a loop counts twice)."""
    g.vertex_index(v)
    return sum((t == v) + (h == v) for _, t, h in g.edges)


def valences(g: Graph) -> dict[str, int]:
    val = dict.fromkeys(g.vertices, 0)
    for _, t, h in g.edges:
        val[t] += 1
        val[h] += 1
    return val


def essential_vertices(g: Graph) -> list[str]:
    """Vertices of valence other than two, in global order."""
    val = valences(g)
    return [v for v in g.vertices if val[v] != 2]


def branched_vertices(g: Graph) -> list[str]:
    """Vertices of valence at least three, in global order."""
    val = valences(g)
    return [v for v in g.vertices if val[v] >= 3]


@dataclass(frozen=True)
class SubdivisionReport:
    """Per original edge: replacement edges (tail to head) and interior vertices."""

    segments: int
    edges: dict[str, tuple[str, ...]]
    interior_vertices: dict[str, tuple[str, ...]]


def subdivide(g: Graph, segments_per_edge: int) -> tuple[Graph, SubdivisionReport]:
    """Replace every edge by a path of ``segments_per_edge`` edges.

    Edge ``e`` becomes ``e.1 .. e.m`` and gains interior vertices
    ``e:1 .. e:(m-1)``.  Original vertices come first in the new global order,
    followed by interior vertices grouped by edge.
    """
    m = int(segments_per_edge)
    if m < 1:
        raise ValueError("segments_per_edge must be >= 1")
    if m == 1:
        report = SubdivisionReport(
            1, {e: (e,) for e, _, _ in g.edges}, {e: () for e, _, _ in g.edges}
        )
        return g, report
    new_vertices = list(g.vertices)
    new_edges = []
    rep_edges = {}
    rep_verts = {}
    for e, t, h in g.edges:
        interior = tuple(f"{e}:{k}" for k in range(1, m))
        path = (t, *interior, h)
        pieces = tuple(f"{e}.{k}" for k in range(1, m + 1))
        new_vertices.extend(interior)
        new_edges.extend((pieces[k], path[k], path[k + 1]) for k in range(m))
        rep_edges[e] = pieces
        rep_verts[e] = interior
    sub = Graph(tuple(new_vertices), tuple(new_edges), name=g.name)
    return sub, SubdivisionReport(m, rep_edges, rep_verts)


def _adjacency(g: Graph) -> dict[str, list[tuple[str, str]]]:
    adj: dict[str, list[tuple[str, str]]] = {v: [] for v in g.vertices}
    for e, t, h in g.edges:
        adj[t].append((e, h))
        if t != h:
            adj[h].append((e, t))
    return adj


def distances_from(g: Graph, source: str) -> dict[str, int]:
    """Breadth-first edge-count distances from ``source``."""
    adj = _adjacency(g)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for _, w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def short_cycles(g: Graph, max_length: int) -> list[tuple[str, ...]]:
    """All simple cycles with at most ``max_length`` edges, as edge-id tuples.

    Loops are cycles of length 1 and a pair of parallel edges is a cycle of
    length 2.  Each cycle is reported once, rotated to start at its smallest
    vertex and read in the direction giving the smaller edge sequence.
    """
    if max_length < 1:
        return []
    adj = _adjacency(g)
    order = {v: i for i, v in enumerate(g.vertices)}
    eorder = {e: i for i, (e, _, _) in enumerate(g.edges)}
    found: set[tuple[str, ...]] = set()
    for e, t, h in g.edges:
        if t == h:
            found.add((e,))
    # A cycle is rooted at its minimal vertex; the DFS only visits larger vertices.
    for root in g.vertices:
        r = order[root]
        stack = [(root, (), frozenset([root]))]
        while stack:
            u, path, visited = stack.pop()
            if len(path) >= max_length:
                continue
            for e, w in adj[u]:
                if e in path or (w == u):
                    continue
                if w == root and path:
                    cyc = path + (e,)
                    rev = tuple(reversed(cyc))
                    key = min(cyc, rev, key=lambda c: [eorder[x] for x in c])
                    found.add(key)
                elif w not in visited and order[w] > r:
                    stack.append((w, path + (e,), visited | {w}))
    return sorted(found, key=lambda c: (len(c), [eorder[x] for x in c]))


def girth(g: Graph) -> float:
    """Length of the shortest simple cycle, ``inf`` for a forest."""
    if any(t == h for _, t, h in g.edges):
        return 1
    adj = _adjacency(g)
    best = float("inf")
    for s in g.vertices:
        # BFS tree from s; a non-tree edge closes a cycle through s of length <= d(u)+d(w)+1.
        dist = {s: 0}
        via = {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e, w in adj[u]:
                if e == via[u]:
                    continue
                if w in dist:
                    best = min(best, dist[u] + dist[w] + 1)
                else:
                    dist[w] = dist[u] + 1
                    via[w] = e
                    queue.append(w)
    return best


@dataclass(frozen=True)
class AbramsCheckReport:
    n: int
    condition1: list[tuple[tuple[str, str], int]]
    condition2: list[tuple[tuple[str, ...], int]]
    reason: str | None = None

    @property
    def passed(self) -> bool:
        return self.reason is None and not self.condition1 and not self.condition2

    def render(self) -> str:
        if self.passed:
            return f"pass (n={self.n})"
        lines = [f"fail (n={self.n})"]
        if self.reason:
            lines.append(f"  {self.reason}")
        for (u, v), d in self.condition1:
            lines.append(f"  essential vertices {u},{v} at distance {d} < {self.n - 1}")
        for cyc, length in self.condition2:
            lines.append(f"  cycle length {length} < {self.n + 1}: {' '.join(cyc)}")
        return "\n".join(lines)


def check_abrams(g: Graph, n: int) -> AbramsCheckReport:
    """Check the two subdivision conditions that make ``D_n(g)`` faithful.

    (1) distinct essential vertices lie at distance at least ``n - 1``;
    (2) every simple cycle has at least ``n + 1`` edges.

    For ``n == 1`` the discrete model is the graph itself and the check passes.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if g.num_vertices < n:
        return AbramsCheckReport(n, [], [], reason=f"graph has {g.num_vertices} < {n} vertices")
    if n == 1:
        return AbramsCheckReport(n, [], [])
    ess = essential_vertices(g)
    bad1 = []
    for i, u in enumerate(ess):
        dist = distances_from(g, u)
        for v in ess[i + 1:]:
            if v in dist and dist[v] < n - 1:
                bad1.append(((u, v), dist[v]))
    bad2 = [(c, len(c)) for c in short_cycles(g, n)]
    return AbramsCheckReport(n, bad1, bad2)


def sufficient_subdivision(g: Graph, n: int, model: str = "abrams") -> tuple[Graph, SubdivisionReport]:
    """Uniform subdivision licensing the discrete model for ``n`` points.

    ``abrams`` splits every edge into ``n + 1`` segments, ``non-k`` into ``n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if model == "abrams":
        sub = subdivide(g, n + 1)
        if g.num_edges:
            assert check_abrams(sub[0], n).passed
        return sub
    if model in ("non-k", "nonk"):
        return subdivide(g, n)
    raise ValueError(f"unknown model {model!r}")


def graph_from_edges(pairs: Iterable[tuple[str, str]], name: str = "graph", vertices: Iterable[str] = ()) -> Graph:
    """Convenience constructor: edges named ``e0, e1, ...``, vertices in first-seen order."""
    vs = list(dict.fromkeys(itertools.chain(vertices, itertools.chain.from_iterable(pairs))))
    return Graph(tuple(vs), tuple((f"e{i}", t, h) for i, (t, h) in enumerate(pairs)), name=name)


def star_graph(arms: int, name: str | None = None) -> Graph:
    """Center ``c`` with leaves ``l1..l<arms>``; Y is ``star_graph(3)``, X is ``star_graph(4)``."""
    leaves = [f"l{i}" for i in range(1, arms + 1)]
    edges = tuple((f"a{i}", "c", leaf) for i, leaf in enumerate(leaves, start=1))
    return Graph(("c", *leaves), edges, name=name or f"star{arms}")


def path_graph(length: int, name: str | None = None) -> Graph:
    """Vertices ``0..length`` joined in a line by edges ``p1..p<length>``."""
    vs = tuple(str(i) for i in range(length + 1))
    edges = tuple((f"p{i + 1}", vs[i], vs[i + 1]) for i in range(length))
    return Graph(vs, edges, name=name or f"path{length}")


def lollipop_graph() -> Graph:
    """One loop at ``a`` plus a pendant edge ``a-b``."""
    return Graph(("a", "b"), (("loop", "a", "a"), ("stick", "a", "b")), name="lollipop")


def complete_graph(k: int) -> Graph:
    vs = tuple(f"v{i}" for i in range(k))
    edges = tuple((f"e{i}{j}", vs[i], vs[j]) for i in range(k) for j in range(i + 1, k))
    return Graph(vs, edges, name=f"K{k}")
