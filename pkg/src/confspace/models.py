"""Discrete models of configuration spaces of graphs.

* :func:`build_abrams` -- cells of ``g^n`` whose factor closures are pairwise disjoint.
* :func:`build_unlabeled_abrams` -- the same modulo permuting factors.
* :func:`build_nonk` -- no ``k`` factor closures share a point.
* :func:`build_swiatkowski` -- the cube complex of the poset of pairs ``(f, S)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

from .complex import CellComplex, CubicalComplex, graph_cells
from .graph import (Graph, SubdivisionReport, branched_vertices, check_abrams,
                    essential_vertices, sufficient_subdivision, valences)

MODEL_KINDS = ("abrams", "abrams-unlabeled", "swiatkowski", "non-k")
_ALIASES = {"abrams-u": "abrams-unlabeled", "nonk": "non-k", "sw": "swiatkowski"}


class ModelPreconditionError(ValueError):
    """The graph is not subdivided enough for the requested model."""


@dataclass(frozen=True)
class ModelDescriptor:
    kind: str
    n: int
    k: int | None = None
    graph: Graph | None = field(default=None, compare=False)
    subdivision: int = 1
    labeled: bool = True

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if (self.k is not None) != (kind == "non-k"):
            raise ValueError("k is given exactly for the non-k model")
        if self.n < 1:
            raise ValueError("n must be positive")


def _tuples(g: Graph, n: int, k: int, increasing: bool = False) -> Iterator[tuple[int, ...]]:
    """Backtrack over n-tuples of graph cells with no vertex in k or more closures."""
    gc = graph_cells(g)
    ncells = g.num_vertices + g.num_edges
    closures = [gc.closure(c) for c in range(ncells)]
    load = [0] * g.num_vertices
    cap = k - 1
    cell: list[int] = []

    def rec(start: int):
        if len(cell) == n:
            yield tuple(cell)
            return
        for c in range(start, ncells):
            cl = closures[c]
            if all(load[v] < cap for v in cl):
                for v in cl:
                    load[v] += 1
                cell.append(c)
                yield from rec(c + 1 if increasing else 0)
                cell.pop()
                for v in cl:
                    load[v] -= 1

    yield from rec(0)


def _require_abrams(g: Graph, n: int, override: bool) -> bool:
    report = check_abrams(g, n)
    if report.passed:
        return True
    if not override:
        raise ModelPreconditionError(report.render())
    return False


def build_abrams(g: Graph, n: int, override: bool = False) -> CubicalComplex:
    """Labeled discretized configuration space ``D_n(g)``.

    Raises :class:`ModelPreconditionError` when the subdivision check fails,
    unless ``override`` is set; the result is then marked ``faithful=False``.
    More points than vertices gives the empty complex.
    """
    if g.num_vertices < n:
        return CubicalComplex(g, n, ())
    faithful = _require_abrams(g, n, override)
    x = CubicalComplex(g, n, _tuples(g, n, 2))
    x.faithful = faithful
    return x


def build_unlabeled_abrams(g: Graph, n: int, override: bool = False) -> CubicalComplex:
    """``UD_n(g)``: sorted representatives, faces re-sorted with the shuffle sign."""
    if g.num_vertices < n:
        return CubicalComplex(g, n, (), symmetric=True)
    faithful = _require_abrams(g, n, override)
    x = CubicalComplex(g, n, _tuples(g, n, 2, increasing=True), symmetric=True)
    x.faithful = faithful
    return x


def topological_edges(g: Graph) -> list[list[str]]:
    """Maximal edge paths whose interior vertices have valence two.

    Components that are plain cycles of valence-two vertices come out as one
    closed path each.
    """
    val = valences(g)
    ess = set(essential_vertices(g))
    adj: dict[str, list[tuple[str, str]]] = {v: [] for v in g.vertices}
    for e, t, h in g.edges:
        adj[t].append((e, h))
        adj[h].append((e, t))
    used: set[str] = set()
    chains = []
    starts = [v for v in g.vertices if v in ess] + [v for v in g.vertices if val[v] == 2]
    for s in starts:
        for e, w in adj[s]:
            if e in used:
                continue
            chain = [e]
            used.add(e)
            prev, cur = e, w
            while cur not in ess and cur != s:
                nxt = next((f, x) for f, x in adj[cur] if f != prev and f not in used)
                chain.append(nxt[0])
                used.add(nxt[0])
                prev, cur = nxt
            chains.append(chain)
    return chains


def check_nonk_subdivision(g: Graph, n: int) -> list[tuple[list[str], int]]:
    """Topological edges with fewer than ``n`` segments (empty list means sufficient)."""
    return [(c, len(c)) for c in topological_edges(g) if len(c) < n]


def build_nonk(g: Graph, n: int, k: int, override: bool = False) -> CubicalComplex:
    """Discretized non-k-equal space ``D_{n,k}(g)``.

    Cells are n-tuples of graph cells such that no k factor closures
    intersect.  The graph must already carry at least ``n`` segments on every
    topological edge (see :func:`sufficient_subdivision`) unless ``override``.
    """
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    short = check_nonk_subdivision(g, n)
    if short and not override:
        chain, m = short[0]
        raise ModelPreconditionError(f"edge path {' '.join(chain)} has {m} < {n} segments")
    x = CubicalComplex(g, n, _tuples(g, n, k))
    x.faithful = not short
    if not x.is_face_closed():
        raise AssertionError("non-k model is not face-closed")
    return x


# ---------------------------------------------------------------------------
# Swiatkowski model

@dataclass(frozen=True, order=True)
class SwiatkowskiFace:
    """One cell of the Swiatkowski complex.

    ``edges[i]`` lists the points on edge ``i`` from tail to head,
    ``vertices[j]`` is the point parked on branched vertex ``j`` (``None`` if
    free) and ``S`` holds ``(edge index, direction, point)`` for each point
    in motion, sorted by edge index.  ``direction`` 0 means the motion starts
    at the edge's tail, 1 at its head.  In the unlabeled poset every point is
    ``0``, so ``len(edges[i])`` is the count ``f(edge)``.
    """

    edges: tuple[tuple[int, ...], ...]
    vertices: tuple[int | None, ...]
    S: tuple[tuple[int, int, int], ...]

    @property
    def dim(self) -> int:
        return len(self.S)


class SwiatkowskiComplex(CellComplex):
    """Cube complex of the Swiatkowski poset of ``g`` for ``n`` points."""

    def __init__(self, graph: Graph, n: int, cells, labeled: bool = True):
        self.graph = graph
        self.n = n
        self.labeled = labeled
        self.name = graph.name
        self.branched = branched_vertices(graph)
        self._bindex = {v: i for i, v in enumerate(self.branched)}
        super().__init__(cells)

    def initial_vertex(self, e: int, direction: int) -> str:
        _, t, h = self.graph.edges[e]
        return h if direction else t

    def cell_dim(self, cell) -> int:
        return len(cell.S)

    def sort_key(self, cell):
        return (cell.S, cell.vertices and tuple(-1 if v is None else v for v in cell.vertices), cell.edges)

    def faces(self, cell: SwiatkowskiFace):
        out = []
        for pos, (e, d, p) in enumerate(cell.S):
            sign = -1 if pos % 2 else 1
            rest = cell.S[:pos] + cell.S[pos + 1:]
            b = self._bindex[self.initial_vertex(e, d)]
            verts = list(cell.vertices)
            verts[b] = p
            out.append((SwiatkowskiFace(cell.edges, tuple(verts), rest), -sign))
            seq = cell.edges[e]
            seq = (seq + (p,)) if d else ((p,) + seq)
            edges = cell.edges[:e] + (seq,) + cell.edges[e + 1:]
            out.append((SwiatkowskiFace(edges, cell.vertices, rest), sign))
        return out

    def describe(self, cell: SwiatkowskiFace) -> str:
        parts = ["sw"]
        for (e, _, _), seq in zip(self.graph.edges, cell.edges):
            if seq:
                val = ",".join(map(str, seq)) if self.labeled else str(len(seq))
                parts.append(f"f({e})={val}")
        for v, p in zip(self.branched, cell.vertices):
            if p is not None:
                parts.append(f"f({v})={p if self.labeled else 1}")
        s_tokens = []
        for e, d, p in cell.S:
            tok = ("-" if d else "+") + self.graph.edges[e][0]
            s_tokens.append(f"{tok}#{p}" if self.labeled else tok)
        parts.append("S=" + ",".join(s_tokens))
        return " ".join(parts)

    def restrict(self, cells):
        return SwiatkowskiComplex(self.graph, self.n, cells, labeled=self.labeled)

    def unlabel(self, cell: SwiatkowskiFace) -> SwiatkowskiFace:
        return SwiatkowskiFace(
            tuple((0,) * len(s) for s in cell.edges),
            tuple(None if p is None else 0 for p in cell.vertices),
            tuple((e, d, 0) for e, d, _ in cell.S),
        )


def _admissible_S(g: Graph, branched: set[str], max_size: int):
    oriented = []
    for i, (_, t, h) in enumerate(g.edges):
        for d, v in ((0, t), (1, h)):
            if v in branched:
                oriented.append((i, d, v))
    for size in range(max_size + 1):
        for combo in itertools.combinations(oriented, size):
            if len({v for _, _, v in combo}) == size:
                yield tuple((i, d) for i, d, _ in combo)


def swiatkowski_cells(g: Graph, n: int, labeled: bool = True) -> list[SwiatkowskiFace]:
    """Enumerate all cells: admissible ``S``, then every placement of the other points."""
    branched = branched_vertices(g)
    bset = set(branched)
    bindex = {v: i for i, v in enumerate(branched)}
    E = g.num_edges
    out = []
    for S in _admissible_S(g, bset, min(n, len(branched))):
        blocked = {bindex[g.edges[e][2] if d else g.edges[e][1]] for e, d in S}
        free_v = [j for j in range(len(branched)) if j not in blocked]
        k = len(S)
        if labeled:
            for movers in itertools.permutations(range(1, n + 1), k):
                rest = [p for p in range(1, n + 1) if p not in movers]
                s_full = tuple((e, d, p) for (e, d), p in zip(S, movers))
                for edges, verts in _place_labeled(rest, E, free_v, len(branched)):
                    out.append(SwiatkowskiFace(edges, verts, s_full))
        else:
            s_full = tuple((e, d, 0) for e, d in S)
            m = n - k
            for nv in range(min(m, len(free_v)) + 1):
                for vs in itertools.combinations(free_v, nv):
                    verts = tuple(0 if j in vs else None for j in range(len(branched)))
                    for counts in _compositions(m - nv, E):
                        edges = tuple((0,) * c for c in counts)
                        out.append(SwiatkowskiFace(edges, verts, s_full))
    return out


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        counts = []
        for b in bars:
            counts.append(b - prev - 1)
            prev = b
        counts.append(total + parts - 2 - prev)
        yield tuple(counts)


def _place_labeled(points: list[int], E: int, free_v: list[int], B: int):
    """Place labeled points one at a time; an edge insertion slot fixes the order."""
    edges: list[list[int]] = [[] for _ in range(E)]
    verts: list[int | None] = [None] * B

    def rec(i: int):
        if i == len(points):
            yield tuple(tuple(s) for s in edges), tuple(verts)
            return
        p = points[i]
        for j in free_v:
            if verts[j] is None:
                verts[j] = p
                yield from rec(i + 1)
                verts[j] = None
        for e in range(E):
            for pos in range(len(edges[e]) + 1):
                edges[e].insert(pos, p)
                yield from rec(i + 1)
                edges[e].pop(pos)

    yield from rec(0)


def swiatkowski_faces(x: SwiatkowskiComplex, face: SwiatkowskiFace) -> list[tuple[SwiatkowskiFace, int]]:
    """Codimension-one faces: each moving point settles on its vertex (0-end) or its edge (1-end)."""
    return x.faces(face)


def build_swiatkowski(g: Graph, n: int, labeled: bool = True) -> SwiatkowskiComplex:
    """Swiatkowski complex; ``labeled=False`` gives the unordered poset of pairs ``(f, S)``.

    No subdivision is needed, but vertices of valence two are not positions
    in this model, so they should be smoothed away beforehand.
    """
    return SwiatkowskiComplex(g, n, swiatkowski_cells(g, n, labeled), labeled=labeled)


# ---------------------------------------------------------------------------

def projected_cells(g: Graph, descriptor: ModelDescriptor) -> int:
    """Cheap upper bound on the number of cells a build would produce."""
    m = descriptor.subdivision
    V = g.num_vertices + g.num_edges * (m - 1)
    E = g.num_edges * m
    if descriptor.kind == "swiatkowski":
        return math.factorial(descriptor.n) * (2 * g.num_edges + g.num_vertices + 1) ** descriptor.n
    return (V + E) ** descriptor.n


def build_model(g: Graph, descriptor: ModelDescriptor, override: bool = False,
                auto_subdivide: bool = False) -> tuple[CellComplex, ModelDescriptor, SubdivisionReport | None]:
    """Build the model named by ``descriptor``, subdividing first when asked."""
    report = None
    kind, n = descriptor.kind, descriptor.n
    if auto_subdivide and kind != "swiatkowski":
        g, report = sufficient_subdivision(g, n, "non-k" if kind == "non-k" else "abrams")
    desc = ModelDescriptor(kind, n, descriptor.k, g, report.segments if report else 1, descriptor.labeled)
    if kind == "abrams":
        x = build_abrams(g, n, override)
    elif kind == "abrams-unlabeled":
        x = build_unlabeled_abrams(g, n, override)
    elif kind == "non-k":
        x = build_nonk(g, n, descriptor.k, override)
    else:
        x = build_swiatkowski(g, n, descriptor.labeled)
    return x, desc, report


def escalate_nonk(g: Graph, n: int, k: int, max_rounds: int = 5):
    """Subdivide with ``n, 2n, 4n, ...`` segments until two consecutive rounds agree on Betti numbers.

    Returns ``(complex, segments, history)`` where ``history`` lists
    ``(segments, betti)`` per round.  Raises ``RuntimeError`` if no two
    consecutive rounds agree within ``max_rounds``.
    """
    from .graph import subdivide
    from .homology import betti_numbers

    history = []
    seg = n
    for _ in range(max_rounds):
        sub, _ = subdivide(g, seg)
        x = build_nonk(sub, n, k, override=True)
        betti = betti_numbers(x)
        history.append((seg, betti))
        if len(history) >= 2 and history[-2][1] == betti:
            return x, seg, history
        seg *= 2
    raise RuntimeError(f"Betti numbers did not stabilize: {history}")
