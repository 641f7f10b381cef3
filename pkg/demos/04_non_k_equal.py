"""
Points that may collide, but not too many at once
=================================================

In the non-k-equal space up to k - 1 points may share a position.  Three
points on the Y graph, no three together, give a space with H2 = Z^5.
"""

from confspace import build_nonk, homology, star_graph, subdivide
from confspace.graph import path_graph
from confspace.models import escalate_nonk

g, _ = subdivide(star_graph(3), 3)
x = build_nonk(g, 3, 3)
print("D_{3,3}(Y):", x.counts())
for h in homology(x):
    print("  ", h)

# On an interval the answer is a sphere.  The subdivision is doubled until
# two rounds agree.
for n in (3, 4):
    x, segments, history = escalate_nonk(path_graph(1), n, n)
    print(f"n = {n}:", " -> ".join(f"{s} seg {b}" for s, b in history))
