"""Top-down triangular decomposition of polynomial systems, guided by chordal graphs."""
from .decompose import (ALGORITHMS, DecompositionResult, DecompositionTree, TriangularSystem,
                        decompose, reduce_chain)
from .elimination import prem, pquo, subresultant, subresultant_chain
from .errors import ChordtriError, ContractError, DomainError, ParseError, ResourceError
from .families import gen_family
from .field import QQ, PrimeField, field_from_spec
from .graph import (associated_graph, chordal_completion, is_chordal, is_peo, mcs_peo,
                    variable_sparsity, weighted_variable_sparsity)
from .oracle import enumerate_zeros, verify_decomposition, zeros_of_system
from .parsing import parse_poly, parse_system
from .poly import Polynomial, PolyRing, format_poly
from .sparse import sparse_decompose

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS", "ChordtriError", "ContractError", "DecompositionResult", "DecompositionTree",
    "DomainError", "ParseError", "PolyRing", "Polynomial", "PrimeField", "QQ", "ResourceError",
    "TriangularSystem", "associated_graph", "chordal_completion", "decompose", "enumerate_zeros",
    "field_from_spec", "format_poly", "gen_family", "is_chordal", "is_peo", "mcs_peo",
    "parse_poly", "parse_system", "pquo", "prem", "reduce_chain", "sparse_decompose",
    "subresultant", "subresultant_chain", "variable_sparsity", "verify_decomposition",
    "weighted_variable_sparsity", "zeros_of_system",
]
