"""
Two points on the Y and X graphs
================================

Build the discretized configuration space of two labeled points, count its
cells and compute integer homology.
"""

from confspace import build_abrams, homology, star_graph, write_complex

Y = star_graph(3, "Y")
X = star_graph(4, "X")

# Cells are pairs of graph cells whose closures do not touch.
dy = build_abrams(Y, 2)
print("D2(Y) cells per degree:", dy.counts())
for h in homology(dy):
    print("  ", h)

# The X graph already has five independent loops of motion.
dx = build_abrams(X, 2)
print("D2(X) cells per degree:", dx.counts())
for h in homology(dx):
    print("  ", h)

# A few cells in text form: p: is a point factor, s: a segment factor.
for cell in dy.cells(1)[:4]:
    print("  ", dy.describe(cell))

# The complex file format is plain text and reads back losslessly.
text = write_complex(dy, model="abrams")
print(text.splitlines()[0], "...", len(text.splitlines()), "lines")
