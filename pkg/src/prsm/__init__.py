"""Pseudo-random sign matrices from shift-register sequences.

The pipeline: primitive polynomials over GF(2) (`gf2`) generate
maximum-length sequences (`sequences`), which lift to structured
sign-matrix ensembles (`ensembles`).  From-scratch eigensolvers
(`eigen`) extract their spectra, which are compared against the
classical limit laws (`laws`); the cyclic-code identities behind the
moment computations live in `codes`.  The `prsm` console script
(`cli`) drives all of it reproducibly.
"""

from .errors import (
    CapabilityError,
    ConvergenceError,
    DegenerateSeedError,
    DomainError,
    PeriodMismatchError,
    PolyParseError,
    PrsmError,
    ShiftAddViolation,
    VerificationError,
)
from .gf2 import (
    Gf2Poly,
    parse_poly,
    is_irreducible,
    is_primitive,
    primitive_polynomials,
    smallest_primitive,
    self_reciprocal_primitives,
    reciprocal,
)
from .sequences import (
    MSeq,
    msequence,
    shifted,
    description_length,
    axiom_balance,
    axiom_runs,
    autocorrelation,
    shift_and_add_table,
    window_check,
    serial_test,
    berlekamp_massey,
)
from .ensembles import (
    EnsembleSpec,
    SymCirculant,
    DenseSym,
    TriDiag,
    build,
    build_pseudo,
    build_one_sided,
    pseudo_ensemble,
    sample_wigner,
    sample_random_circulant,
    sample_tridiag_hermite,
    paley_matrix,
    member_rng,
    default_scale,
)
from .eigen import (
    Spectrum,
    circulant_eigenvalues,
    dense_sym_eigenvalues,
    tridiag_eigenvalues,
    jacobi_eigenvalues,
)
from .laws import (
    RefLaw,
    semicircle_law,
    mp_law,
    gaussian_law,
    law_moment,
    law_pdf,
    law_cdf,
    catalan,
    narayana,
    empirical_moment,
    trace_moment_oracle,
    ks_distance,
    make_histogram,
    spectrum_of,
    ensemble_stats,
    support_divergence,
)
from .codes import (
    BinaryCode,
    simplex_code,
    hamming_code,
    hamming_basis,
    weight_spectrum,
    palindromic_subcode,
    palindromic_dimension,
    tuple_parity_word,
    overlap_with_shifts,
    verify_tuple_identities,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # errors
    "PrsmError",
    "PolyParseError",
    "DomainError",
    "CapabilityError",
    "DegenerateSeedError",
    "PeriodMismatchError",
    "ShiftAddViolation",
    "ConvergenceError",
    "VerificationError",
    # gf2
    "Gf2Poly",
    "parse_poly",
    "is_irreducible",
    "is_primitive",
    "primitive_polynomials",
    "smallest_primitive",
    "self_reciprocal_primitives",
    "reciprocal",
    # sequences
    "MSeq",
    "msequence",
    "shifted",
    "description_length",
    "axiom_balance",
    "axiom_runs",
    "autocorrelation",
    "shift_and_add_table",
    "window_check",
    "serial_test",
    "berlekamp_massey",
    # ensembles
    "EnsembleSpec",
    "SymCirculant",
    "DenseSym",
    "TriDiag",
    "build",
    "build_pseudo",
    "build_one_sided",
    "pseudo_ensemble",
    "sample_wigner",
    "sample_random_circulant",
    "sample_tridiag_hermite",
    "paley_matrix",
    "member_rng",
    "default_scale",
    # eigen
    "Spectrum",
    "circulant_eigenvalues",
    "dense_sym_eigenvalues",
    "tridiag_eigenvalues",
    "jacobi_eigenvalues",
    # laws
    "RefLaw",
    "semicircle_law",
    "mp_law",
    "gaussian_law",
    "law_moment",
    "law_pdf",
    "law_cdf",
    "catalan",
    "narayana",
    "empirical_moment",
    "trace_moment_oracle",
    "ks_distance",
    "make_histogram",
    "spectrum_of",
    "ensemble_stats",
    "support_divergence",
    # codes
    "BinaryCode",
    "simplex_code",
    "hamming_code",
    "hamming_basis",
    "weight_spectrum",
    "palindromic_subcode",
    "palindromic_dimension",
    "tuple_parity_word",
    "overlap_with_shifts",
    "verify_tuple_identities",
]
