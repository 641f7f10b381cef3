"""
A smaller model without subdivision
===================================

The Swiatkowski complex records how many points sit on each edge and which
points are currently leaving a branched vertex.  It needs no subdivision and
its dimension is bounded by the number of branched vertices.
"""

from confspace import betti_numbers, build_abrams, build_swiatkowski, star_graph

for arms in (3, 4):
    g = star_graph(arms)
    k = build_swiatkowski(g, 2)
    d = build_abrams(g, 2)
    print(f"star with {arms} arms: K2 cells {k.counts()}, Betti {betti_numbers(k)};"
          f" D2 Betti {betti_numbers(d)}")

# Cells print as point placements plus the set S of moving points.
k = build_swiatkowski(star_graph(3), 2)
for cell in k.cells(1)[:3]:
    print("  ", k.describe(cell))

# The unordered poset, one cell per (f, S) pair.
u = build_swiatkowski(star_graph(4), 2, labeled=False)
print("unordered K2(X):", u.counts(), betti_numbers(u))
