"""Homology of unordered configuration spaces of graphs, with the coshuffle
comultiplication, computed exactly from the reduced Swiatkowski complex."""

from .errors import (DegenerateGraph, GrapeshotError, GraphError, IndexOutOfRange,
                     NoEssentialVertex, NotAGrape, TorsionPresent)
from .graph_core import (Graph, GrapesStructure, HalfEdge, build_graph, circle_graph,
                         circumference, decompose_grapes, elementary_grape, graph_from_dict,
                         interval_graph, load_graph, fourteen_vertex_grape, smooth_bivalent,
                         star_tree, theta_graph, topological_circumference)
from .polyring import Poly, TensorPoly, in_R0, parse_poly, r0_homogeneous_basis, sha_star
from .swiatkowski import (HomologyPresentation, SBasisElement, SwiatkowskiComplex,
                          boundary_matrix, enumerate_basis, homology)
from .coalgebra import (HomologyCoalgebra, coshuffle, homology_comultiplication,
                        primitive_kernel, verify_coalgebra_axioms)
from .grapes_theory import (MappingCone, SLGenerator, betti_closed_form, build_mapping_cone,
                            classify_primitives, loop_class, sl_basis, sl_external_product,
                            star_class, verify_formality, verify_sl_isomorphism)
from .oracle import cross_check, cube_betti, discretized_config_complex, subdivide_for

__version__ = "0.1.0"
