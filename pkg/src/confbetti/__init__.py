"""Rational Betti numbers and cohomological dimension of unordered
configuration spaces, computed from a presentation of the manifold's
cohomology ring."""

from .algebra import (
    BasisClass,
    CohomologyAlgebra,
    RingFormatError,
    ValidationIssue,
    ValidationReport,
    algebra_from_dict,
    algebra_to_dict,
    comultiplication,
    dump_ring,
    load_ring,
    tensor_product,
    validate_algebra,
)
from .analysis import (
    BettiTable,
    InvalidAlgebraError,
    TheoremVerdict,
    betti_table,
    chdim,
    integral_chdim_certified,
    kallel_upper_bound,
    lower_bound_rank,
    ordered_lower_bound,
    predicted_chdim,
    verify_theorems,
)
from .complexes import (
    AssemblyError,
    BasisLimitError,
    BigradedBasis,
    ChainVector,
    Generator,
    GeneratorSet,
    Monomial,
    ReductionNotice,
    assemble_matrices,
    build_generators,
    differential_closed,
    differential_open,
    enumerate_basis,
    reduce_complex,
)
from .linalg import RationalMatrix, betti_from_ranks, rank
from .presets import PresetEntry, get_entry, get_preset, preset_keys

__version__ = "0.1.0"

__all__ = [
    "BasisClass",
    "CohomologyAlgebra",
    "RingFormatError",
    "ValidationIssue",
    "ValidationReport",
    "algebra_from_dict",
    "algebra_to_dict",
    "comultiplication",
    "dump_ring",
    "load_ring",
    "tensor_product",
    "validate_algebra",
    "BettiTable",
    "InvalidAlgebraError",
    "TheoremVerdict",
    "betti_table",
    "chdim",
    "integral_chdim_certified",
    "kallel_upper_bound",
    "lower_bound_rank",
    "ordered_lower_bound",
    "predicted_chdim",
    "verify_theorems",
    "AssemblyError",
    "BasisLimitError",
    "BigradedBasis",
    "ChainVector",
    "Generator",
    "GeneratorSet",
    "Monomial",
    "ReductionNotice",
    "assemble_matrices",
    "build_generators",
    "differential_closed",
    "differential_open",
    "enumerate_basis",
    "reduce_complex",
    "RationalMatrix",
    "betti_from_ranks",
    "rank",
    "PresetEntry",
    "get_entry",
    "get_preset",
    "preset_keys",
    "__version__",
]
