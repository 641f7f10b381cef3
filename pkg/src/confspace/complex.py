"""Cubical cells as products of graph cells, boundaries, and chain complexes.

A product cell over a graph ``g`` is a tuple of integer codes, one per
factor: ``0 <= c < V`` is the vertex ``g.vertices[c]`` (a degenerate
interval) and ``V <= c < V + E`` is the edge ``g.edges[c - V]`` (a
non-degenerate interval, oriented tail to head).  Tuples compare
lexicographically, which is the global cell order.

Every complex type in the package subclasses :class:`CellComplex`; the
homology engine, collapses and file export only use that interface.
"""

from __future__ import annotations

import io
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Iterator, Sequence, TextIO

import numpy as np
import scipy.sparse as sp

from .graph import Graph, path_graph

Cell = Hashable


class BoundaryError(RuntimeError):
    """The composite of two boundary maps is nonzero (an internal sign bug)."""


class ComplexError(ValueError):
    """Malformed complex input."""


@dataclass(frozen=True)
class GraphCells:
    """Integer codes for the cells of a graph."""

    graph: Graph
    tail: tuple[int, ...]
    head: tuple[int, ...]

    @property
    def num_vertices(self) -> int:
        return self.graph.num_vertices

    def is_segment(self, code: int) -> bool:
        return code >= self.graph.num_vertices

    def closure(self, code: int) -> tuple[int, ...]:
        """Vertex codes in the closure of a graph cell."""
        if code < self.graph.num_vertices:
            return (code,)
        e = code - self.graph.num_vertices
        return (self.tail[e],) if self.tail[e] == self.head[e] else (self.tail[e], self.head[e])

    def vertex(self, v: str) -> int:
        return self.graph.vertex_index(v)

    def edge(self, e: str) -> int:
        return self.graph.num_vertices + self.graph.edge_index(e)

    def token(self, code: int) -> str:
        V = self.graph.num_vertices
        if code < V:
            return f"p:{self.graph.vertices[code]}"
        return f"s:{self.graph.edges[code - V][0]}"

    def parse_token(self, token: str) -> int:
        kind, _, ident = token.partition(":")
        if kind == "p":
            return self.vertex(ident)
        if kind == "s":
            return self.edge(ident)
        raise ComplexError(f"bad factor {token!r}")


@lru_cache(maxsize=64)
def graph_cells(g: Graph) -> GraphCells:
    tail = tuple(g.vertex_index(t) for _, t, _ in g.edges)
    head = tuple(g.vertex_index(h) for _, _, h in g.edges)
    return GraphCells(g, tail, head)


@dataclass
class Chain:
    """Sparse integer combination of cells of one degree."""

    degree: int
    coeffs: dict = field(default_factory=dict)

    def add(self, cell: Cell, coeff: int) -> None:
        value = self.coeffs.get(cell, 0) + coeff
        if value:
            self.coeffs[cell] = value
        else:
            self.coeffs.pop(cell, None)

    def __add__(self, other: Chain) -> Chain:
        out = Chain(self.degree, dict(self.coeffs))
        for c, a in other.coeffs.items():
            out.add(c, a)
        return out

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.coeffs == other.coeffs


def _sort_parity(cell: Sequence[int], is_segment) -> tuple[tuple[int, ...], int]:
    """Sort a cell's factors; sign is the parity of the induced shuffle of Segment factors."""
    order = sorted(range(len(cell)), key=lambda i: cell[i])
    segs = [i for i in order if is_segment(cell[i])]
    inversions = sum(1 for a in range(len(segs)) for b in range(a + 1, len(segs)) if segs[a] > segs[b])
    return tuple(cell[i] for i in order), (-1 if inversions % 2 else 1)


def faces(g: Graph, cell: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
    """Primary faces of a product cell with their boundary coefficients.

    Returns ``2 * dim`` entries; a loop factor gives two equal faces whose
    coefficients cancel in the boundary.
    """
    gc = graph_cells(g)
    V = g.num_vertices
    out = []
    sign = 1
    for i, c in enumerate(cell):
        if c >= V:
            e = c - V
            head = tuple(cell[:i]) + (gc.head[e],) + tuple(cell[i + 1:])
            tail = tuple(cell[:i]) + (gc.tail[e],) + tuple(cell[i + 1:])
            out.append((head, sign))
            out.append((tail, -sign))
            sign = -sign
    if not out:
        raise ComplexError("a 0-dimensional cell has no faces")
    return out


def boundary_chain(g: Graph, cell: Sequence[int]) -> Chain:
    """Sum over Segment factors of ``(-1)^(segments before) * (head face - tail face)``."""
    cell = tuple(cell)
    dim = sum(1 for c in cell if c >= g.num_vertices)
    chain = Chain(dim - 1 if dim else 0)
    if dim == 0:
        return chain
    for f, a in faces(g, cell):
        chain.add(f, a)
    return chain


class CellComplex:
    """Finite face-closed collection of oriented cells.

    Subclasses implement :meth:`faces` (primary faces with multiplicity and
    coefficient), :meth:`cell_dim`, :meth:`describe` and :meth:`restrict`.
    """

    n: int = 0
    name: str = "complex"

    def __init__(self, cells: Iterable[Cell]):
        by_dim: dict[int, list] = defaultdict(list)
        seen = set()
        for c in cells:
            if c in seen:
                continue
            seen.add(c)
            by_dim[self.cell_dim(c)].append(c)
        top = max(by_dim) if by_dim else -1
        self._cells = [sorted(by_dim.get(k, ()), key=self.sort_key) for k in range(top + 1)]
        self._index = [{c: i for i, c in enumerate(cs)} for cs in self._cells]
        self.faithful = True

    # interface -----------------------------------------------------------
    def cell_dim(self, cell: Cell) -> int:
        raise NotImplementedError

    def faces(self, cell: Cell) -> list[tuple[Cell, int]]:
        raise NotImplementedError

    def describe(self, cell: Cell) -> str:
        raise NotImplementedError

    def restrict(self, cells: Iterable[Cell]) -> CellComplex:
        raise NotImplementedError

    def sort_key(self, cell: Cell):
        return cell

    # derived -------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self._cells) - 1

    def cells(self, k: int) -> list:
        return self._cells[k] if 0 <= k < len(self._cells) else []

    def __iter__(self) -> Iterator[Cell]:
        for cs in self._cells:
            yield from cs

    def __len__(self) -> int:
        return sum(len(cs) for cs in self._cells)

    def __contains__(self, cell) -> bool:
        try:
            k = self.cell_dim(cell)
        except Exception:
            return False
        return 0 <= k < len(self._index) and cell in self._index[k]

    def index(self, cell: Cell) -> int:
        return self._index[self.cell_dim(cell)][cell]

    def counts(self) -> list[int]:
        return [len(cs) for cs in self._cells]

    def boundary(self, cell: Cell) -> dict:
        out: dict = {}
        if self.cell_dim(cell) == 0:
            return out
        for f, a in self.faces(cell):
            v = out.get(f, 0) + a
            if v:
                out[f] = v
            else:
                out.pop(f, None)
        return out

    def is_face_closed(self) -> bool:
        for k in range(1, self.dim + 1):
            for c in self._cells[k]:
                for f, _ in self.faces(c):
                    if f not in self._index[k - 1]:
                        return False
        return True

    def euler_characteristic(self) -> int:
        return euler_characteristic(self)


class CubicalComplex(CellComplex):
    """Face-closed set of product cells over a graph.

    With ``symmetric=True`` cells are unordered: the stored representative is
    the sorted tuple and faces are re-sorted, with the sign of the shuffle of
    Segment factors.
    """

    def __init__(self, graph: Graph, n: int, cells: Iterable[Sequence[int]] = (),
                 symmetric: bool = False, name: str | None = None):
        self.graph = graph
        self.n = n
        self.symmetric = symmetric
        self.name = name or graph.name
        self._gc = graph_cells(graph)
        cells = [tuple(c) for c in cells]
        for c in cells:
            if len(c) != n:
                raise ComplexError(f"cell {c} has {len(c)} factors, expected {n}")
            if symmetric and list(c) != sorted(c):
                raise ComplexError(f"cell {c} is not a sorted representative")
        super().__init__(cells)

    def cell_dim(self, cell) -> int:
        V = self.graph.num_vertices
        return sum(1 for c in cell if c >= V)

    def faces(self, cell):
        out = faces(self.graph, cell)
        if not self.symmetric:
            return out
        is_seg = self._gc.is_segment
        canon = []
        for f, a in out:
            fs, s = _sort_parity(f, is_seg)
            canon.append((fs, a * s))
        return canon

    def describe(self, cell) -> str:
        return " ".join(self._gc.token(c) for c in cell)

    def parse_cell(self, tokens: Sequence[str]) -> tuple[int, ...]:
        return tuple(self._gc.parse_token(t) for t in tokens)

    def restrict(self, cells):
        out = CubicalComplex(self.graph, self.n, cells, symmetric=self.symmetric, name=self.name)
        out.faithful = self.faithful
        return out


def close_under_faces(g: Graph, cells: Iterable[Sequence[int]], n: int | None = None) -> CubicalComplex:
    """Smallest face-closed complex containing ``cells``."""
    cells = [tuple(c) for c in cells]
    lengths = {len(c) for c in cells}
    if len(lengths) > 1:
        raise ComplexError(f"mixed factor counts {sorted(lengths)}")
    if n is None:
        n = lengths.pop() if lengths else 0
    elif lengths and lengths != {n}:
        raise ComplexError(f"cells have {lengths.pop()} factors, expected {n}")
    seen = set(cells)
    stack = list(cells)
    V = g.num_vertices
    while stack:
        c = stack.pop()
        if any(x >= V for x in c):
            for f, _ in faces(g, c):
                if f not in seen:
                    seen.add(f)
                    stack.append(f)
    return CubicalComplex(g, n, seen)


def elementary_cubes(cubes: Iterable[Sequence[tuple[int, int]]], name: str = "cubical") -> CubicalComplex:
    """Cubical set in Z^d from elementary cubes, closed under faces.

    Each cube is a sequence of intervals ``(l, l)`` or ``(l, l + 1)``.  The
    ambient is a path graph whose vertices are the integers in range and whose
    edges ``[l,l+1]`` are oriented upward, so boundaries agree with the usual
    elementary-cube formula.
    """
    cubes = [tuple(tuple(iv) for iv in q) for q in cubes]
    if not cubes:
        return CubicalComplex(path_graph(0), 0, ())
    d = len(cubes[0])
    lo = min(iv[0] for q in cubes for iv in q)
    hi = max(iv[1] for q in cubes for iv in q)
    vs = tuple(str(i) for i in range(lo, hi + 1))
    edges = tuple((f"[{i},{i + 1}]", str(i), str(i + 1)) for i in range(lo, hi))
    g = Graph(vs, edges, name=name)
    V = len(vs)
    cells = []
    for q in cubes:
        if len(q) != d:
            raise ComplexError("cubes of mixed embedding dimension")
        cell = []
        for l, r in q:
            if r == l:
                cell.append(l - lo)
            elif r == l + 1:
                cell.append(V + l - lo)
            else:
                raise ComplexError(f"({l}, {r}) is not an elementary interval")
        cells.append(tuple(cell))
    return close_under_faces(g, cells, d)


def euler_characteristic(x: CellComplex) -> int:
    return sum((-1) ** k * m for k, m in enumerate(x.counts()))


@dataclass
class ChainComplex:
    """Bases per degree and sparse integer boundary matrices.

    ``boundaries[k]`` maps degree ``k`` to ``k - 1`` and has shape
    ``(len(bases[k-1]), len(bases[k]))``; ``boundaries[0]`` is the zero map.
    """

    bases: list[list]
    boundaries: list[sp.csc_matrix]

    def __post_init__(self):
        for k, d in enumerate(self.boundaries):
            rows = len(self.bases[k - 1]) if k else 0
            if d.shape != (rows, len(self.bases[k])):
                raise ComplexError(f"boundary {k} has shape {d.shape}, expected {(rows, len(self.bases[k]))}")
        for k in range(2, len(self.boundaries)):
            prod = self.boundaries[k - 1] @ self.boundaries[k]
            if prod.count_nonzero():
                raise BoundaryError(f"d{k - 1} * d{k} != 0")

    @property
    def top(self) -> int:
        return len(self.bases) - 1

    def rank(self, k: int) -> int:
        return len(self.bases[k]) if 0 <= k < len(self.bases) else 0

    def boundary_matrix(self, k: int) -> sp.csc_matrix:
        """``d_k``; zero matrices of the right shape outside the stored range."""
        if 0 <= k < len(self.boundaries):
            return self.boundaries[k]
        return sp.csc_matrix((self.rank(k - 1), self.rank(k)), dtype=np.int64)

    @classmethod
    def from_matrices(cls, matrices: Sequence, ranks: Sequence[int] | None = None) -> ChainComplex:
        """Synthetic complex; ``matrices[k-1]`` is ``d_k`` for ``k >= 1``."""
        mats = [sp.csc_matrix(np.asarray(m, dtype=np.int64)) for m in matrices]
        if ranks is None:
            ranks = [mats[0].shape[0]] if mats else [0]
            ranks += [m.shape[1] for m in mats]
        bases = [list(range(r)) for r in ranks]
        bnd = [sp.csc_matrix((0, ranks[0]), dtype=np.int64)] + mats
        return cls(bases, bnd)


def build_chain_complex(x: CellComplex) -> ChainComplex:
    """Integer chain complex of ``x``; raises :class:`BoundaryError` if d*d != 0."""
    bases = [list(x.cells(k)) for k in range(x.dim + 1)]
    mats = [sp.csc_matrix((0, len(bases[0]) if bases else 0), dtype=np.int64)] if bases else []
    for k in range(1, x.dim + 1):
        rows, cols, vals = [], [], []
        index = {c: i for i, c in enumerate(bases[k - 1])}
        for j, c in enumerate(bases[k]):
            for f, a in x.boundary(c).items():
                try:
                    rows.append(index[f])
                except KeyError:
                    raise ComplexError(f"face {x.describe(f)} of {x.describe(c)} missing") from None
                cols.append(j)
                vals.append(a)
        mats.append(sp.csc_matrix((vals, (rows, cols)), shape=(len(bases[k - 1]), len(bases[k])), dtype=np.int64))
    return ChainComplex(bases, mats)


# ---------------------------------------------------------------------------
# file format

class FileComplex(CellComplex):
    """Complex read back from the text format; faces come from ``bnd`` triplets."""

    def __init__(self, n: int, name: str, labels: dict, bnd: dict):
        self.n = n
        self.name = name
        self._labels = labels
        self._bnd = bnd
        super().__init__(labels)

    def cell_dim(self, cell):
        return cell[0]

    def faces(self, cell):
        out = []
        for f, a in self._bnd.get(cell, {}).items():
            out.extend([(f, 1 if a > 0 else -1)] * abs(a))
        return out

    def describe(self, cell):
        return self._labels[cell]

    def restrict(self, cells):
        keep = set(cells)
        return FileComplex(self.n, self.name, {c: self._labels[c] for c in keep},
                           {c: b for c, b in self._bnd.items() if c in keep})


def write_complex(x: CellComplex, out: TextIO | None = None, model: str | None = None) -> str:
    """Serialize ``x``: header, one ``cell`` line per cell, then ``bnd k row col coeff``."""
    buf = io.StringIO()
    buf.write(f"complex n={x.n} graph={x.name}\n")
    if model:
        buf.write(f"# model={model}\n")
    for k in range(x.dim + 1):
        for c in x.cells(k):
            buf.write(f"cell {k} {x.describe(c)}\n")
    cc = build_chain_complex(x)
    for k in range(1, cc.top + 1):
        d = cc.boundaries[k].tocoo()
        for r, c, v in sorted(zip(d.row.tolist(), d.col.tolist(), d.data.tolist()), key=lambda t: (t[1], t[0])):
            buf.write(f"bnd {k} {r} {c} {v}\n")
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def read_complex(text: str) -> FileComplex:
    n, name = 0, "complex"
    labels: dict = {}
    counters: dict[int, int] = defaultdict(int)
    bnd: dict = defaultdict(dict)
    header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "complex":
                kv = dict(p.split("=", 1) for p in parts[1:])
                n, name = int(kv.get("n", 0)), kv.get("graph", "complex")
                header = True
            elif parts[0] == "cell":
                k = int(parts[1])
                labels[(k, counters[k])] = " ".join(parts[2:])
                counters[k] += 1
            elif parts[0] == "bnd":
                k, r, c, v = map(int, parts[1:5])
                if (k, c) not in labels or (k - 1, r) not in labels:
                    raise ComplexError("bnd refers to an undeclared cell")
                bnd[(k, c)][(k - 1, r)] = v
            else:
                raise ComplexError(f"unknown record {parts[0]!r}")
        except (ValueError, IndexError) as exc:
            raise ComplexError(f"line {lineno}: {exc}") from None
    if not header and labels:
        raise ComplexError("missing 'complex' header")
    return FileComplex(n, name, labels, dict(bnd))
