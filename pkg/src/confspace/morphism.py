"""Cellular graph embeddings and the maps they induce on models and homology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import scipy.sparse as sp

from .complex import ChainComplex, CubicalComplex, _sort_parity, build_chain_complex, graph_cells
from .graph import Graph, GraphError
from .homology import HomologyBasis
from .models import SwiatkowskiComplex, SwiatkowskiFace


class MorphismError(ValueError):
    pass


@dataclass(frozen=True)
class GraphEmbedding:
    """Injective, incidence-preserving map sending vertices to vertices and edges to edges.

    ``edge_map[e] = (e', reversed)``; a reversed edge runs head to tail.
    """

    source: Graph
    target: Graph
    vertex_map: dict[str, str]
    edge_map: dict[str, tuple[str, bool]]

    def __post_init__(self):
        s, t = self.source, self.target
        if set(self.vertex_map) != set(s.vertices):
            raise MorphismError("vertex map must cover every source vertex")
        if set(self.edge_map) != {e for e, _, _ in s.edges}:
            raise MorphismError("edge map must cover every source edge")
        if len(set(self.vertex_map.values())) != len(self.vertex_map):
            raise MorphismError("vertex map is not injective")
        if len({e for e, _ in self.edge_map.values()}) != len(self.edge_map):
            raise MorphismError("edge map is not injective")
        for v in self.vertex_map.values():
            if not t.has_vertex(v):
                raise MorphismError(f"unknown target vertex {v!r}")
        for e, a, b in s.edges:
            e2, rev = self.edge_map[e]
            try:
                ta, tb = t.endpoints(e2)
            except GraphError as exc:
                raise MorphismError(str(exc)) from None
            if rev:
                ta, tb = tb, ta
            if (self.vertex_map[a], self.vertex_map[b]) != (ta, tb):
                raise MorphismError(f"edge {e} -> {e2} does not preserve incidence")

    def compose(self, other: GraphEmbedding) -> GraphEmbedding:
        """``other`` after ``self``."""
        vm = {v: other.vertex_map[w] for v, w in self.vertex_map.items()}
        em = {}
        for e, (e2, r1) in self.edge_map.items():
            e3, r2 = other.edge_map[e2]
            em[e] = (e3, r1 != r2)
        return GraphEmbedding(self.source, other.target, vm, em)

    @classmethod
    def identity(cls, g: Graph) -> GraphEmbedding:
        return cls(g, g, {v: v for v in g.vertices}, {e: (e, False) for e, _, _ in g.edges})


def parse_embedding(text: str, source: Graph, target: Graph) -> GraphEmbedding:
    """Lines ``gm v <src> <dst>`` and ``gm e <src> <dst> [rev]``; ``#`` starts a comment."""
    vm, em = {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 4 and parts[:2] == ["gm", "v"]:
            vm[parts[2]] = parts[3]
        elif len(parts) in (4, 5) and parts[:2] == ["gm", "e"]:
            if len(parts) == 5 and parts[4] != "rev":
                raise GraphError(f"expected 'rev', got {parts[4]!r}", lineno)
            em[parts[2]] = (parts[3], len(parts) == 5)
        else:
            raise GraphError(f"malformed line {line!r}", lineno)
    return GraphEmbedding(source, target, vm, em)


@dataclass
class CellMap:
    """Signed cellular map between two complexes: ``cell -> (image cell, sign)``."""

    source: object
    target: object
    images: dict = field(repr=False)

    def matrix(self, k: int) -> sp.csc_matrix:
        src, tgt = self.source.cells(k), self.target.cells(k)
        tindex = {c: i for i, c in enumerate(tgt)}
        rows, cols, vals = [], [], []
        for j, c in enumerate(src):
            img, s = self.images[c]
            rows.append(tindex[img])
            cols.append(j)
            vals.append(s)
        return sp.csc_matrix((vals, (rows, cols)), shape=(len(tgt), len(src)), dtype=np.int64)

    def compose(self, other: CellMap) -> CellMap:
        """``other`` after ``self``."""
        images = {}
        for c, (img, s) in self.images.items():
            img2, s2 = other.images[img]
            images[c] = (img2, s * s2)
        return CellMap(self.source, other.target, images)

    def is_chain_map(self) -> bool:
        """``d_target F_k == F_{k-1} d_source`` in every degree."""
        cs, ct = build_chain_complex(self.source), build_chain_complex(self.target)
        for k in range(1, self.source.dim + 1):
            lhs = ct.boundary_matrix(k) @ self.matrix(k)
            rhs = self.matrix(k - 1) @ cs.boundary_matrix(k)
            if (lhs - rhs).count_nonzero():
                return False
        return True


def _product_image(emb: GraphEmbedding, src: CubicalComplex, tgt: CubicalComplex):
    gs, gt = graph_cells(src.graph), graph_cells(tgt.graph)
    V = src.graph.num_vertices
    code = {}
    for v in src.graph.vertices:
        code[gs.vertex(v)] = (gt.vertex(emb.vertex_map[v]), 1)
    for e, _, _ in src.graph.edges:
        e2, rev = emb.edge_map[e]
        code[gs.edge(e)] = (gt.edge(e2), -1 if rev else 1)

    def image(cell):
        out, sign = [], 1
        for c in cell:
            c2, s = code[c]
            out.append(c2)
            if c >= V:
                sign *= s
        out = tuple(out)
        if tgt.symmetric:
            out, s = _sort_parity(out, gt.is_segment)
            sign *= s
        return out, sign

    return image


def _swiatkowski_image(emb: GraphEmbedding, src: SwiatkowskiComplex, tgt: SwiatkowskiComplex):
    tedge = {e: i for i, (e, _, _) in enumerate(tgt.graph.edges)}
    emap = []
    for e, _, _ in src.graph.edges:
        e2, rev = emb.edge_map[e]
        emap.append((tedge[e2], rev))
    vmap = []
    for v in src.branched:
        w = emb.vertex_map[v]
        if w not in tgt._bindex:
            raise MorphismError(f"branched vertex {v} maps to unbranched {w}")
        vmap.append(tgt._bindex[w])
    nE, nB = tgt.graph.num_edges, len(tgt.branched)

    def image(cell: SwiatkowskiFace):
        edges = [()] * nE
        for seq, (i, rev) in zip(cell.edges, emap):
            edges[i] = tuple(reversed(seq)) if rev else seq
        verts = [None] * nB
        for p, j in zip(cell.vertices, vmap):
            verts[j] = p
        S = [(emap[e][0], d ^ emap[e][1], p) for e, d, p in cell.S]
        order = sorted(range(len(S)), key=lambda i: S[i])
        inv = sum(1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b])
        return SwiatkowskiFace(tuple(edges), tuple(verts), tuple(S[i] for i in order)), (-1 if inv % 2 else 1)

    return image


def induced_complex_map(emb: GraphEmbedding, source, target) -> CellMap:
    """Factor-wise image of every cell of ``source`` in ``target``.

    Both complexes must be the same model for the same ``n`` over
    ``emb.source`` and ``emb.target``.  Raises :class:`MorphismError` when an
    image cell is missing (mismatched models or subdivisions).
    """
    if source.graph is not emb.source and source.graph != emb.source:
        raise MorphismError("source complex is not built on the embedding's source graph")
    if target.graph is not emb.target and target.graph != emb.target:
        raise MorphismError("target complex is not built on the embedding's target graph")
    if source.n != target.n or type(source) is not type(target):
        raise MorphismError("source and target must be the same model with the same n")
    if isinstance(source, SwiatkowskiComplex):
        image = _swiatkowski_image(emb, source, target)
    else:
        if source.symmetric != target.symmetric:
            raise MorphismError("labeled and unlabeled models cannot be mixed")
        image = _product_image(emb, source, target)
    images = {}
    for c in source:
        img, s = image(c)
        if img not in target:
            raise MorphismError(f"image of {source.describe(c)} is not a cell of the target model")
        images[c] = (img, s)
    cmap = CellMap(source, target, images)
    if not cmap.is_chain_map():
        raise MorphismError("induced map does not commute with the boundary")
    return cmap


def induced_model_map(emb: GraphEmbedding, descriptor) -> CellMap:
    """Build both models named by ``descriptor`` (no subdivision) and map between them."""
    from .models import build_model
    src, _, _ = build_model(emb.source, descriptor, override=True)
    tgt, _, _ = build_model(emb.target, descriptor, override=True)
    return induced_complex_map(emb, src, tgt)


def induced_homology_map(cmap: CellMap, degrees: Iterable[int] | None = None) -> dict[int, np.ndarray]:
    """Matrices of the induced map on the free parts of homology, per degree.

    Columns index the source's free generators and rows the target's, both in
    the bases of :class:`~confspace.homology.HomologyBasis`.
    """
    cs = build_chain_complex(cmap.source)
    ct = build_chain_complex(cmap.target)
    if degrees is None:
        degrees = range(max(cs.top, 0) + 1) if cs.top >= 0 else []
    out = {}
    for k in degrees:
        out[k] = _degree_map(cmap, cs, ct, k)
    return out


def _degree_map(cmap: CellMap, cs: ChainComplex, ct: ChainComplex, k: int) -> np.ndarray:
    bs = HomologyBasis(cs, k)
    bt = HomologyBasis(ct, k) if k <= ct.top else None
    rows = bt.betti if bt else 0
    M = np.zeros((rows, bs.betti), dtype=object)
    if not rows or not bs.betti:
        return M
    F = cmap.matrix(k).toarray().astype(object)
    for j in range(bs.betti):
        free, _ = bt.coordinates(F @ bs.free_generators[:, j])
        M[:, j] = free
    return M


def induced_torsion_map(cmap: CellMap, k: int) -> np.ndarray:
    """Images of the source torsion generators as residues in the target torsion summands."""
    cs = build_chain_complex(cmap.source)
    ct = build_chain_complex(cmap.target)
    bs, bt = HomologyBasis(cs, k), HomologyBasis(ct, k)
    M = np.zeros((len(bt.torsion), len(bs.torsion)), dtype=object)
    F = cmap.matrix(k).toarray().astype(object)
    for j in range(len(bs.torsion)):
        _, tors = bt.coordinates(F @ bs.torsion_generators[:, j])
        M[:, j] = tors
    return M
