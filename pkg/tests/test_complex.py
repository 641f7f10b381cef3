import io
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from confspace.complex import (BoundaryError, ChainComplex, ComplexError, CubicalComplex,
                               boundary_chain, build_chain_complex, close_under_faces,
                               elementary_cubes, faces, graph_cells, read_complex, write_complex)
from confspace.graph import complete_graph, lollipop_graph, path_graph, star_graph
from confspace.homology import homology
from confspace.models import build_abrams

from conftest import corpus


def product_boundary(g, cell):
    """Leibniz rule applied one factor at a time: d(a x b) = da x b + (-1)^|a| a x db."""
    V = g.num_vertices
    gc = graph_cells(g)
    if not cell:
        return Counter()
    first, rest = cell[0], tuple(cell[1:])
    out = Counter()
    if first >= V:
        e = first - V
        for v, s in ((gc.head[e], 1), (gc.tail[e], -1)):
            out[(v,) + rest] += s
        sign = -1
    else:
        sign = 1
    for f, a in product_boundary(g, rest).items():
        out[(first,) + f] += sign * a
    return Counter({k: v for k, v in out.items() if v})


def test_faces_of_a_square():
    g = path_graph(2)   # vertices 0,1,2 ; p1 = 3, p2 = 4
    assert faces(g, (3, 4)) == [
        ((1, 4), 1), ((0, 4), -1),
        ((3, 2), -1), ((3, 1), 1),
    ]


def test_zero_cell_has_no_faces():
    with pytest.raises(ComplexError):
        faces(path_graph(1), (0, 1))
    assert not boundary_chain(path_graph(1), (0, 1))


def test_loop_factor_cancels():
    g = lollipop_graph()       # vertices a=0, b=1 ; loop=2, stick=3
    assert len(faces(g, (2, 1))) == 2
    assert not boundary_chain(g, (2, 1))
    # only the loop factor cancels; the stick factor survives
    assert boundary_chain(g, (3, 2)).coeffs == {(1, 2): 1, (0, 2): -1}
    assert boundary_chain(g, (2, 3)).coeffs == {(2, 1): -1, (2, 0): 1}


@pytest.mark.parametrize("g", [path_graph(3), star_graph(3), complete_graph(4), lollipop_graph()],
                         ids=["path3", "Y", "K4", "lollipop"])
def test_boundary_matches_inductive_oracle(g):
    codes = range(g.num_vertices + g.num_edges)
    rng = np.random.default_rng(7)
    for n in range(1, 5):
        for _ in range(60):
            cell = tuple(int(c) for c in rng.choice(list(codes), size=n))
            assert boundary_chain(g, cell).coeffs == dict(product_boundary(g, cell))


@settings(max_examples=150, deadline=None, derandomize=True)
@given(st.sampled_from(list(corpus().values())), st.data())
def test_boundary_squares_to_zero(g, data):
    n = data.draw(st.integers(1, 4))
    codes = st.integers(0, g.num_vertices + g.num_edges - 1)
    cell = tuple(data.draw(st.lists(codes, min_size=n, max_size=n)))
    total = Counter()
    for f, a in boundary_chain(g, cell).coeffs.items():
        for ff, b in boundary_chain(g, f).coeffs.items():
            total[ff] += a * b
    assert not any(total.values())


def test_close_under_faces_square():
    g = path_graph(1)
    x = close_under_faces(g, [(2, 2)])
    assert x.counts() == [4, 4, 1]
    assert x.euler_characteristic() == 1
    assert x.is_face_closed()


def test_close_under_faces_rejects_mixed():
    with pytest.raises(ComplexError):
        close_under_faces(path_graph(1), [(2,), (2, 2)])


def test_elementary_cubes_figure():
    # two squares sharing an edge, plus a dangling interval
    x = elementary_cubes([((0, 1), (0, 1)), ((1, 2), (0, 1)), ((2, 3), (0, 0))])
    assert x.counts() == [7, 8, 2]
    assert [h.betti for h in homology(x)] == [1, 0, 0]


def test_elementary_cubes_annulus():
    ring = [((i, i + 1), (j, j + 1)) for i in range(3) for j in range(3) if (i, j) != (1, 1)]
    x = elementary_cubes(ring)
    assert [h.betti for h in homology(x)] == [1, 1, 0]


def test_elementary_cube_rejects_long_interval():
    with pytest.raises(ComplexError):
        elementary_cubes([((0, 2),)])


def test_symmetric_rejects_unsorted():
    with pytest.raises(ComplexError):
        CubicalComplex(path_graph(1), 2, [(1, 0)], symmetric=True)


def test_chain_complex_detects_bad_square():
    with pytest.raises(BoundaryError):
        ChainComplex.from_matrices([[[1]], [[1]]])


def test_chain_complex_shape_check():
    with pytest.raises(ComplexError):
        ChainComplex.from_matrices([[[1, 1]]], ranks=[2, 2])


def test_build_reports_missing_face():
    g = path_graph(1)
    x = CubicalComplex(g, 1, [(2,)])
    with pytest.raises(ComplexError):
        build_chain_complex(x)
    assert not x.is_face_closed()


def test_file_round_trip(Y):
    x = build_abrams(Y, 2)
    text = write_complex(x, model="abrams")
    assert text.startswith("complex n=2 graph=Y\n# model=abrams\n")
    back = read_complex(text)
    assert back.counts() == x.counts()
    assert write_complex(back) == write_complex(x)
    assert [str(h) for h in homology(back)] == [str(h) for h in homology(x)]
    buf = io.StringIO()
    write_complex(x, buf)
    assert buf.getvalue() == write_complex(x)


def test_file_round_trip_preserves_boundaries(X):
    x = build_abrams(X, 2)
    a = build_chain_complex(x)
    b = build_chain_complex(read_complex(write_complex(x)))
    for k in range(a.top + 1):
        assert (a.boundary_matrix(k) != b.boundary_matrix(k)).nnz == 0


@pytest.mark.parametrize("text", [
    "complex n=1\ncell 0 p:a\nbnd 1 0 0 1\n",
    "cell 0 p:a\n",
    "complex n=1\nfoo\n",
    "complex n=1\ncell x p:a\n",
])
def test_read_complex_errors(text):
    with pytest.raises(ComplexError):
        read_complex(text)


def test_cell_text_parse(Y):
    x = build_abrams(Y, 2)
    for c in x:
        assert x.parse_cell(x.describe(c).split()) == c
