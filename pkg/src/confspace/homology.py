"""Exact integer homology: Smith normal form, homology bases, free-face collapses.

All arithmetic is on Python integers, so nothing overflows.  Large boundary
matrices go through a sparse elimination on unit pivots first; only the
leftover block (usually tiny) is reduced densely.
"""

from __future__ import annotations

import heapq
import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .complex import CellComplex, ChainComplex


def _identity(m: int) -> list[list[int]]:
    return [[int(i == j) for j in range(m)] for i in range(m)]


def _as_rows(A) -> list[list[int]]:
    if sp.issparse(A):
        A = A.toarray()
    arr = np.asarray(A, dtype=object)
    if arr.ndim != 2:
        if arr.size == 0:
            return []
        raise ValueError("expected a 2-d matrix")
    return [[int(v) for v in row] for row in arr]


def _obj(rows: list[list[int]], shape: tuple[int, int]) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    for i in range(shape[0]):
        for j in range(shape[1]):
            out[i, j] = rows[i][j]
    return out


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular; ``U_inv``, ``V_inv`` their inverses."""

    D: np.ndarray
    U: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


class _Reducer:
    """In-place SNF on a dense list-of-lists matrix, optionally tracking transforms."""

    def __init__(self, rows: list[list[int]], ncols: int, track: bool):
        self.A = rows
        self.m = len(rows)
        self.n = ncols
        self.track = track
        if track:
            self.U, self.Ui = _identity(self.m), _identity(self.m)
            self.V, self.Vi = _identity(self.n), _identity(self.n)

    # elementary operations; each keeps U A V = D and the inverses in step
    def swap_rows(self, i, j):
        A = self.A
        A[i], A[j] = A[j], A[i]
        if self.track:
            self.U[i], self.U[j] = self.U[j], self.U[i]
            for row in self.Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        for row in self.A:
            row[i], row[j] = row[j], row[i]
        if self.track:
            for row in self.V:
                row[i], row[j] = row[j], row[i]
            self.Vi[i], self.Vi[j] = self.Vi[j], self.Vi[i]

    def add_row(self, dst, src, q):
        """row dst += q * row src"""
        A = self.A
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        if self.track:
            self.U[dst] = [a + q * b for a, b in zip(self.U[dst], self.U[src])]
            for row in self.Ui:
                row[src] -= q * row[dst]

    def add_col(self, dst, src, q):
        """col dst += q * col src"""
        for row in self.A:
            row[dst] += q * row[src]
        if self.track:
            for row in self.V:
                row[dst] += q * row[src]
            self.Vi[src] = [a - q * b for a, b in zip(self.Vi[src], self.Vi[dst])]

    def negate_row(self, i):
        self.A[i] = [-a for a in self.A[i]]
        if self.track:
            self.U[i] = [-a for a in self.U[i]]
            for row in self.Ui:
                row[i] = -row[i]

    def _pick_pivot(self, t):
        best = None
        A = self.A
        for i in range(t, self.m):
            row = A[i]
            nnz = None
            for j in range(t, self.n):
                v = row[j]
                if v:
                    if nnz is None:
                        nnz = sum(1 for x in row[t:] if x)
                    key = (abs(v), nnz, i, j)
                    if best is None or key < best:
                        best = key
        return best

    def run(self) -> None:
        # Re-pick the smallest entry of the trailing block after every sweep;
        # reducing against anything larger lets entries grow without bound.
        A = self.A
        for t in range(min(self.m, self.n)):
            while True:
                best = self._pick_pivot(t)
                if best is None:
                    return
                _, _, i, j = best
                if i != t:
                    self.swap_rows(i, t)
                if j != t:
                    self.swap_cols(j, t)
                p = A[t][t]
                dirty = False
                for i in range(t + 1, self.m):
                    if A[i][t]:
                        self.add_row(i, t, -(A[i][t] // p))
                        dirty = dirty or bool(A[i][t])
                for j in range(t + 1, self.n):
                    if A[t][j]:
                        self.add_col(j, t, -(A[t][j] // p))
                        dirty = dirty or bool(A[t][j])
                if dirty:
                    continue
                bad = next((i for i in range(t + 1, self.m)
                            if any(A[i][j] % p for j in range(t + 1, self.n))), None)
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if A[t][t] < 0:
                self.negate_row(t)


def smith_normal_form(A) -> SmithDecomposition:
    """Smith normal form of an integer matrix with unimodular transforms.

    >>> smith_normal_form([[2, 4], [6, 8]]).diagonal
    [2, 4]
    """
    rows = _as_rows(A)
    arr = np.asarray(A.toarray() if sp.issparse(A) else A)
    m = arr.shape[0] if arr.ndim == 2 else 0
    n = arr.shape[1] if arr.ndim == 2 else 0
    red = _Reducer([list(r) for r in rows], n, track=True)
    red.run()
    return SmithDecomposition(
        D=_obj(red.A, (m, n)),
        U=_obj(red.U, (m, m)),
        V=_obj(red.V, (n, n)),
        U_inv=_obj(red.Ui, (m, m)),
        V_inv=_obj(red.Vi, (n, n)),
    )


def _dense_invariants(rows: list[list[int]], ncols: int) -> list[int]:
    red = _Reducer(rows, ncols, track=False)
    red.run()
    return [red.A[i][i] for i in range(min(red.m, ncols)) if red.A[i][i]]


def invariant_factors(A) -> list[int]:
    """Nonzero Smith diagonal of ``A`` (sparse-aware, no transforms)."""
    A = sp.csc_matrix(A)
    rows: dict[int, dict[int, int]] = defaultdict(dict)
    cols: dict[int, set[int]] = defaultdict(set)
    coo = A.tocoo()
    for r, c, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
        if v:
            rows[r][c] = rows[r].get(c, 0) + int(v)
            cols[c].add(r)
    diag: list[int] = []
    # unit pivots, sparsest column then sparsest row first
    progress = True
    while progress and cols:
        progress = False
        for c in sorted(cols, key=lambda c: (len(cols[c]), c)):
            if c not in cols:
                continue
            best = None
            for r in cols[c]:
                if abs(rows[r][c]) == 1 and (best is None or (len(rows[r]), r) < (len(rows[best]), best)):
                    best = r
            if best is None:
                continue
            prow = rows.pop(best)
            pv = prow[c]
            for r in list(cols[c]):
                if r == best:
                    continue
                row = rows[r]
                q = row[c] * pv
                for cc, v in prow.items():
                    nv = row.get(cc, 0) - q * v
                    if nv:
                        if cc not in row:
                            cols[cc].add(r)
                        row[cc] = nv
                    elif cc in row:
                        del row[cc]
                        cols[cc].discard(r)
            for cc in prow:
                cols[cc].discard(best)
                if not cols[cc]:
                    del cols[cc]
            cols.pop(c, None)
            diag.append(1)
            progress = True
    if cols:
        live_rows = sorted(r for r in rows if rows[r])
        live_cols = sorted(cols)
        cidx = {c: j for j, c in enumerate(live_cols)}
        dense = [[0] * len(live_cols) for _ in live_rows]
        for i, r in enumerate(live_rows):
            for c, v in rows[r].items():
                dense[i][cidx[c]] = v
        diag.extend(abs(d) for d in _dense_invariants(dense, len(live_cols)))
    return diag


@dataclass(frozen=True)
class HomologyGroup:
    """``Z^betti`` plus cyclic torsion summands; ranks of cycles and boundaries kept for the record."""

    degree: int
    betti: int
    torsion: tuple[int, ...] = ()
    cycles_rank: int | None = None
    boundaries_rank: int | None = None

    def __str__(self) -> str:
        return f"H{self.degree} = Z^{self.betti}" + "".join(f" + Z/{d}" for d in self.torsion)

    def machine(self) -> str:
        return " ".join(str(x) for x in (self.degree, self.betti, *self.torsion))


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("CONFSPACE_THREADS", "1")))
    except ValueError:
        return 1


def homology(cc: ChainComplex | CellComplex) -> list[HomologyGroup]:
    """Homology groups ``H_0 .. H_top``; an empty complex gives ``[]``."""
    if isinstance(cc, CellComplex):
        from .complex import build_chain_complex
        cc = build_chain_complex(cc)
    top = cc.top
    if top < 0:
        return []
    degrees = list(range(1, top + 1))
    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        diags = dict(zip(degrees, pool.map(lambda k: invariant_factors(cc.boundary_matrix(k)), degrees)))
    ranks = {k: len(d) for k, d in diags.items()}
    out = []
    for k in range(top + 1):
        rk, rk1 = ranks.get(k, 0), ranks.get(k + 1, 0)
        torsion = tuple(sorted(d for d in diags.get(k + 1, ()) if d > 1))
        z = cc.rank(k) - rk
        out.append(HomologyGroup(k, z - rk1, torsion, cycles_rank=z, boundaries_rank=rk1))
    return out


def betti_numbers(x) -> list[int]:
    return [h.betti for h in homology(x)]


class HomologyBasis:
    """Generators of ``H_k`` and coordinates of cycles in them.

    Built from two Smith decompositions: one of ``d_k`` (giving a basis of
    the cycles) and one of ``d_{k+1}`` written in that basis.
    """

    def __init__(self, cc: ChainComplex, k: int):
        self.degree = k
        nk = cc.rank(k)
        snf_k = smith_normal_form(cc.boundary_matrix(k))
        r = snf_k.rank
        self._cycle_rows = np.array(snf_k.V_inv[r:, :], dtype=object).reshape(nk - r, nk)
        Z = np.array(snf_k.V[:, r:], dtype=object).reshape(nk, nk - r)
        B = cc.boundary_matrix(k + 1).toarray().astype(object)
        M = self._cycle_rows @ B if B.size else np.zeros((nk - r, B.shape[1]), dtype=object)
        snf_b = smith_normal_form(M)
        diag = snf_b.diagonal + [0] * ((nk - r) - len(snf_b.diagonal))
        self._U = snf_b.U
        gens = Z @ snf_b.U_inv if Z.size else np.zeros((nk, 0), dtype=object)
        self.free_index = [i for i, d in enumerate(diag) if d == 0]
        self.torsion_index = [i for i, d in enumerate(diag) if d > 1]
        self.torsion = [diag[i] for i in self.torsion_index]
        self.free_generators = gens[:, self.free_index]
        self.torsion_generators = gens[:, self.torsion_index]
        self.betti = len(self.free_index)

    def coordinates(self, cycle) -> tuple[list[int], list[int]]:
        """Free coordinates and torsion residues of a cycle vector in ``C_k``."""
        y = self._cycle_rows @ np.asarray(cycle, dtype=object)
        h = self._U @ y if len(y) else y
        free = [int(h[i]) for i in self.free_index]
        tors = [int(h[i]) % d for i, d in zip(self.torsion_index, self.torsion)]
        return free, tors


# ---------------------------------------------------------------------------
# collapses

def collapse_free_faces(x: CellComplex) -> CellComplex:
    """Remove (free face, unique coface) pairs until none remain.

    A face is free when it has exactly one coface, it occurs in that coface's
    boundary exactly once, and the coface is maximal.  Candidates are tried
    in global cell order, so the result is deterministic.
    """
    mult: dict = defaultdict(int)
    cofaces: dict = defaultdict(set)
    face_list: dict = {}
    for k in range(1, x.dim + 1):
        for c in x.cells(k):
            fl = x.faces(c)
            face_list[c] = fl
            for f, _ in fl:
                mult[(f, c)] += 1
                cofaces[f].add(c)
    alive = set(x)
    dims = {c: x.cell_dim(c) for c in alive}
    tick = 0
    heap = []
    for c in alive:
        heap.append(((dims[c], x.sort_key(c)), tick, c))
        tick += 1
    heapq.heapify(heap)
    while heap:
        _, _, s = heapq.heappop(heap)
        if s not in alive:
            continue
        live = [t for t in cofaces.get(s, ()) if t in alive]
        if len(live) != 1:
            continue
        t = live[0]
        if mult[(s, t)] != 1 or any(u in alive for u in cofaces.get(t, ())):
            continue
        alive.discard(s)
        alive.discard(t)
        for f, _ in face_list.get(t, ()) + face_list.get(s, []):
            if f in alive:
                heapq.heappush(heap, ((dims[f], x.sort_key(f)), tick, f))
                tick += 1
    return x.restrict(alive)
