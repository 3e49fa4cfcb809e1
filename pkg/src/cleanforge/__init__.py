"""Exact strongly clean matrix decompositions over finite local rings.

A square matrix A over a commutative local ring whose maximal ideal is
nilpotent splits as A = E + U with E idempotent, U invertible and
EU = UE.  This package computes that splitting exactly, along with the
machinery behind it: characteristic polynomials without division, factor
lifting through nilpotents, companion-matrix factorization of marked
polynomials, power-stabilization witnesses, and brute-force oracles that
re-verify every claim at small sizes.

Supported rings: Z/p^k, Fp[t]/(t^k), products of those (Z/m via CRT) and
the localization Zloc(p) for exact counterexample arithmetic.  The
``cleanforge`` CLI exposes the same operations from the shell.
"""

from .errors import (
    BoundExceeded,
    CleanforgeError,
    InfiniteRing,
    InternalCheckFailed,
    NotAUnit,
    NotCoprime,
    NotIdempotent,
    NotMonic,
    NotPrime,
    ParseError,
    PreconditionViolated,
    ResidueMismatch,
    SpecMismatch,
    UnsupportedFamily,
    UnsupportedRing,
    WitnessDegenerate,
)
from .hensel import (
    HenselFactorization,
    LocalFactorList,
    SplitAtZero,
    bezout_lift,
    hensel_lift,
    local_factorization,
    split_at_zero,
)
from .matclean import (
    CleanDecomposition,
    Mat,
    PiRegularWitness,
    VerifyResult,
    charpoly,
    companion,
    det,
    idempotent_split_basis,
    mat_crt_combine,
    mat_crt_split,
    mat_invert,
    mat_pow,
    pi_regular_witness,
    poly_eval_matrix,
    poly_reduce_via_matrix,
    strongly_clean_decompose,
    verify_decomposition,
)
from .oracle import (
    NonCleanWitness,
    PropertyReport,
    SplitMix64,
    brute_factor,
    brute_strongly_clean,
    check_lemma_polyreduc,
    check_pi_regular,
    check_t5_condition,
    check_theorem_local_instance,
    nonclean_witness_quadratic,
    random_matrix,
)
from .poly import (
    Poly,
    ResiduePoly,
    divmod_monic,
    factor_residue,
    format_poly,
    format_residue_poly,
    is_irreducible_residue,
    monic_polys,
    monic_residue_polys,
    parse_poly,
    parse_residue_poly,
    poly_to_strings,
    reduce_mod_p,
    residue_gcd,
    scale_substitute,
    xgcd_residue,
)
from .rings import (
    LocalizedIntegers,
    PrimePowerIntegers,
    ProductRing,
    RingElem,
    RingSpec,
    ResidueElem,
    TruncatedPolynomials,
    crt_combine,
    crt_split,
    parse_ring_spec,
)
from .workbound import DEFAULT_WORK_BOUND, work_bound

__version__ = "0.1.0"
