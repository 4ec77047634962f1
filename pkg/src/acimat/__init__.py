"""Exact analysis of ACI-matrices (affine column independent matrices) over finite fields."""

from .aci import (
    ACIMatrix,
    AffineForm,
    ConstantMatrix,
    Equivalence,
    apply_equivalence,
    augment,
    complete,
    submatrix,
    validate,
)
from .classify import Classification, classify, find_augmenting_vector, is_column_irreducible, is_row_irreducible
from .decompose import (
    canonical_decomposition,
    compose_blocks,
    extract_core,
    find_zero_block,
    gen_constant_rank,
    pivot_reduce,
    reduce_tall,
    reduce_wide,
    triangularize_square,
)
from .errors import ACIError
from .gf import GF, Field, FieldElement, field_arith, field_elements, field_make
from .io import parse_document, parse_matrix, serialize_matrix
from .kernel import constant_left_kernel
from .rank import RankSummary, constant_rank, rank_constant, rank_set, rank_set_exhaustive

__version__ = "0.1.0"

__all__ = [
    "ACIMatrix",
    "AffineForm",
    "ConstantMatrix",
    "Equivalence",
    "apply_equivalence",
    "augment",
    "complete",
    "submatrix",
    "validate",
    "Classification",
    "classify",
    "find_augmenting_vector",
    "is_column_irreducible",
    "is_row_irreducible",
    "canonical_decomposition",
    "compose_blocks",
    "extract_core",
    "find_zero_block",
    "gen_constant_rank",
    "pivot_reduce",
    "reduce_tall",
    "reduce_wide",
    "triangularize_square",
    "ACIError",
    "GF",
    "Field",
    "FieldElement",
    "field_arith",
    "field_elements",
    "field_make",
    "parse_document",
    "parse_matrix",
    "serialize_matrix",
    "constant_left_kernel",
    "RankSummary",
    "constant_rank",
    "rank_constant",
    "rank_set",
    "rank_set_exhaustive",
]
