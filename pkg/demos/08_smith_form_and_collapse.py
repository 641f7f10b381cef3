"""
Under the hood: Smith form and collapses
========================================

Homology comes from the Smith normal form of the boundary matrices.
Free-face collapses shrink a complex without changing its homology.
"""

import numpy as np

from confspace import build_abrams, homology, smith_normal_form, star_graph, sufficient_subdivision
from confspace.complex import ChainComplex
from confspace.homology import collapse_free_faces

s = smith_normal_form([[2, 4], [6, 8]])
print("diagonal:", s.diagonal)
print("U A V == D:", (s.U @ np.array([[2, 4], [6, 8]], dtype=object) @ s.V == s.D).all())

# One cell in each degree with boundary 2 in degree 2: torsion appears.
print([str(h) for h in homology(ChainComplex.from_matrices([[[0]], [[2]]]))])

g, _ = sufficient_subdivision(star_graph(4), 2, "abrams")
x = build_abrams(g, 2)
y = collapse_free_faces(x)
print("collapse:", x.counts(), "->", y.counts())
print(" before:", [str(h) for h in homology(x)])
print(" after: ", [str(h) for h in homology(y)])
