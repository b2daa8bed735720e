"""Non-alternating Hamiltonian Lie algebras in three variables over GF(2^k).

Construction of the divided-power algebra O(3, m), the canonical
Hamiltonian 2-forms omega_1..omega_4, the Poisson bracket and the Lie
algebras P / P~ / P^(1), together with the structure analyses used to
separate them: dimension formulas, simplicity certificates, minimal
ad-rank, bilinear-pair classification, and filtration invariants.
"""

from .gfield import GF
from .divpow import Poly, Derivation, UndefinedDividedPower, validate_heights
from .sforms import (
    Form1,
    Form2,
    Form3,
    builtin_form,
    differential,
    is_closed,
    is_nonalternating,
    is_nondegenerate,
    gram_inverse,
    solve_exact,
)
from .admiso import (
    AddSubGen,
    LinearGen,
    Admissible,
    elimination_automorphism,
    swap_automorphism,
    scaling_automorphism,
    omega4_scaling,
    normalization_scaling,
)
from .bilin import (
    BilinPair,
    CANONICAL,
    canonicalize,
    n_invariants,
    pairs_equivalent,
)
from .poisson import AlgebraSpec, LieAlg, build_algebra, poisson, hamiltonian_field
from .lstruct import (
    Fingerprint,
    MinRankResult,
    ad_rank,
    center,
    derived_series,
    fingerprint,
    fingerprints_distinct,
    graded_algebra,
    is_simple,
    min_ad_rank,
)
from ._kernels import get_backend, use_backend

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "GF",
    "Poly",
    "Derivation",
    "UndefinedDividedPower",
    "validate_heights",
    "Form1",
    "Form2",
    "Form3",
    "builtin_form",
    "differential",
    "is_closed",
    "is_nonalternating",
    "is_nondegenerate",
    "gram_inverse",
    "solve_exact",
    "AddSubGen",
    "LinearGen",
    "Admissible",
    "elimination_automorphism",
    "swap_automorphism",
    "scaling_automorphism",
    "omega4_scaling",
    "normalization_scaling",
    "BilinPair",
    "CANONICAL",
    "canonicalize",
    "n_invariants",
    "pairs_equivalent",
    "AlgebraSpec",
    "LieAlg",
    "build_algebra",
    "poisson",
    "hamiltonian_field",
    "Fingerprint",
    "MinRankResult",
    "ad_rank",
    "center",
    "derived_series",
    "fingerprint",
    "fingerprints_distinct",
    "graded_algebra",
    "is_simple",
    "min_ad_rank",
    "get_backend",
    "use_backend",
]
