"""Persistent homology via R = DV decompositions over prime fields."""
from .field import F2, FieldContext
from .filtration import (BoundaryMatrix, Filtration, Simplex, antitranspose, boundary_matrix,
                         parse_filtration, read_filtration, serialize_filtration)
from .generate import random_filtration
from .persistence import (Chain, PersistencePair, RepresentativeSet, classify_simplices,
                          extract_cocycles, extract_diagram, extract_r_representatives,
                          extract_v_representatives, verify_decomposition)
from .reductions import ALGORITHMS, Decomposition, reduce

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS", "BoundaryMatrix", "Chain", "Decomposition", "F2", "FieldContext",
    "Filtration", "PersistencePair", "RepresentativeSet", "Simplex", "antitranspose",
    "boundary_matrix", "classify_simplices", "extract_cocycles", "extract_diagram",
    "extract_r_representatives", "extract_v_representatives", "parse_filtration",
    "random_filtration", "read_filtration", "reduce", "serialize_filtration",
    "verify_decomposition",
]
