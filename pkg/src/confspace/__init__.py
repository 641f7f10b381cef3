"""Discrete models of configuration spaces of graphs and their integer homology."""

from .braid import BraidWord, apply_relation, exponent_sum, free_reduce, is_pure, parse_word, permutation_image
from .complex import (CellComplex, Chain, ChainComplex, CubicalComplex, boundary_chain, build_chain_complex,
                      close_under_faces, elementary_cubes, euler_characteristic, faces, read_complex,
                      write_complex)
from .graph import (AbramsCheckReport, Graph, SubdivisionReport, branched_vertices, check_abrams,
                    complete_graph, essential_vertices, lollipop_graph, parse_graph, path_graph,
                    star_graph, subdivide, sufficient_subdivision, valence)
from .homology import (HomologyGroup, SmithDecomposition, betti_numbers, collapse_free_faces, homology,
                       smith_normal_form)
from .models import (ModelDescriptor, SwiatkowskiFace, build_abrams, build_model, build_nonk,
                     build_swiatkowski, build_unlabeled_abrams, swiatkowski_faces)
from .morphism import GraphEmbedding, induced_complex_map, induced_homology_map, parse_embedding
from .plane import conf2_forward, conf2_inverse

__version__ = "0.1.0"

__all__ = [
    "BraidWord", "apply_relation", "exponent_sum", "free_reduce", "is_pure", "parse_word",
    "permutation_image", "CellComplex", "Chain", "ChainComplex", "CubicalComplex", "boundary_chain",
    "build_chain_complex", "close_under_faces", "elementary_cubes", "euler_characteristic", "faces",
    "read_complex", "write_complex", "AbramsCheckReport", "Graph", "SubdivisionReport",
    "branched_vertices", "check_abrams", "essential_vertices", "parse_graph", "subdivide",
    "sufficient_subdivision", "valence", "complete_graph", "lollipop_graph", "path_graph", "star_graph", "HomologyGroup", "SmithDecomposition", "betti_numbers",
    "collapse_free_faces", "homology", "smith_normal_form", "ModelDescriptor", "SwiatkowskiFace",
    "build_abrams", "build_model", "build_nonk", "build_swiatkowski", "build_unlabeled_abrams",
    "swiatkowski_faces", "GraphEmbedding", "induced_complex_map", "induced_homology_map",
    "parse_embedding", "conf2_forward", "conf2_inverse",
]
