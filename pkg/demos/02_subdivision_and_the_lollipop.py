"""
When the graph is too coarse
============================

The discrete model only captures the configuration space after enough
subdivision.  The lollipop graph shows what goes wrong without it.
"""

from confspace import build_abrams, check_abrams, homology, lollipop_graph, sufficient_subdivision

g = lollipop_graph()
report = check_abrams(g, 2)
print(report.render())

# Building anyway gives a complex that is marked unfaithful.
coarse = build_abrams(g, 2, override=True)
print("coarse model:", coarse.counts(), "faithful =", coarse.faithful)
print("  ", homology(coarse)[0], "(two components)")

# After subdivision the check passes and the space is connected.
fine, sub = sufficient_subdivision(g, 2, "abrams")
print(f"subdivided into {sub.segments} segments per edge:", check_abrams(fine, 2).passed)
for h in homology(build_abrams(fine, 2)):
    print("  ", h)
