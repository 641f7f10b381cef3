"""
Embedding Y into X
==================

An injective cellular map of graphs induces a map of configuration spaces
and hence of homology.  The four ways of placing Y inside X land on four
different classes in H1(D2(X)) = Z^5.
"""

import itertools

from confspace import GraphEmbedding, ModelDescriptor, induced_homology_map, star_graph
from confspace.morphism import induced_model_map

Y, X = star_graph(3, "Y"), star_graph(4, "X")

for arms in itertools.combinations(range(1, 5), 3):
    vm = {"c": "c", **{f"l{i}": f"l{a}" for i, a in enumerate(arms, 1)}}
    em = {f"a{i}": (f"a{a}", False) for i, a in enumerate(arms, 1)}
    cmap = induced_model_map(GraphEmbedding(Y, X, vm, em), ModelDescriptor("abrams", 2))
    H1 = induced_homology_map(cmap, [1])[1]
    print(f"arms {arms}: chain map {cmap.is_chain_map()}, H1 image {H1[:, 0].tolist()}")
