"""Isomorphism testing for graphs excluding a small clique minor.

The library decides color-preserving isomorphism by recursive decomposition
along small separators, with color refinement, a bounded closure operator,
and exact permutation-group machinery underneath.  Every run either decides
the instance or certifies a K_h minor in the input.
"""

__version__ = "0.1.0"

from .errors import CapacityError, InputError, InternalError, MinorDetected
from .graphs import ArcColoring, Graph, PairColoring, VertexColoring
from .formats import (
    from_edgelist,
    from_graph6,
    load_graph,
    to_edgelist,
    to_graph6,
)
from .refine import color_refine, wl2, wl2_pair
from .closure import closure_t, components_and_separators, t_for_h
from .initial import find_initial_class
from .iso import (
    IsoCoset,
    IsoOutcome,
    TreeDecomposition,
    check_tree_decomposition,
    is_isomorphic,
    iso_restricted,
    tree_decomposition,
)
from .witness import (
    extract_topological_clique,
    pack_agreeing_trees,
    validate_witness,
)

__all__ = [
    "ArcColoring",
    "CapacityError",
    "Graph",
    "InputError",
    "InternalError",
    "IsoCoset",
    "IsoOutcome",
    "MinorDetected",
    "PairColoring",
    "TreeDecomposition",
    "VertexColoring",
    "check_tree_decomposition",
    "closure_t",
    "color_refine",
    "components_and_separators",
    "extract_topological_clique",
    "find_initial_class",
    "from_edgelist",
    "from_graph6",
    "is_isomorphic",
    "iso_restricted",
    "load_graph",
    "pack_agreeing_trees",
    "t_for_h",
    "to_edgelist",
    "to_graph6",
    "tree_decomposition",
    "validate_witness",
    "wl2",
    "wl2_pair",
]
