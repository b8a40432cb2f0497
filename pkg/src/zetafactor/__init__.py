"""Numerical laboratory for factorizations of critical-line oscillating systems.

The package builds everything from four layers: fast Hardy Z evaluation
(``special``), a checkpointed accumulator of its square with adaptive
quadrature (``quad``), an invertible height map with a closed-form
substitution weight (``ladder``), and pulse families with exact means
(``pulses``).  On top sit the exchange-point chains with their factorization
checks (``chains``) and the multiplicative and additive decompositions of
one chain product over others (``decompose``).  ``cli`` is the batch front
end.
"""

from .chains import (
    FactorizationChain,
    VerificationReport,
    band_width,
    build_chain,
    component_identity_verify,
    lemma1_verify,
    lemma2_verify,
    mean_value_point,
)
from .decompose import (
    DecompositionReport,
    DecompositionSpec,
    ExtremalPreset,
    corollary_k1,
    extremal_presets,
    theorem1_decompose,
    theorem2_verify,
)
from .errors import (
    BracketError,
    CacheFormatError,
    CacheRangeError,
    DivisionGuardError,
    DomainError,
    ImageRangeError,
    InvalidParameterError,
    NonFiniteSampleError,
    ZetaFactorError,
)
from .ladder import (
    IntervalTower,
    LadderModel,
    compose_k,
    ladder_weight,
    mean_main_term,
    phi1,
    phi1_inverse,
    reverse_iterates,
)
from .pulses import (
    AdditivePulse,
    MembershipVerdict,
    PartitionSpec,
    PowerPulse,
    c0_membership,
    eval_additive,
    eval_power,
    exact_mean_additive,
    exact_mean_power,
)
from .quad import (
    DEFAULT_QUAD_SPEC,
    IntegralCache,
    QuadratureSpec,
    QuadResult,
    build_cache,
    integrate,
    j_at,
    load_cache,
    write_cache,
)
from .special import (
    DEFAULT_POLICY,
    CriticalPoint,
    EvalPolicy,
    hardy_z,
    riemann_siegel_theta,
    zeta_half_sq,
)

__version__ = "0.1.0"

__all__ = [
    "AdditivePulse",
    "BracketError",
    "CacheFormatError",
    "CacheRangeError",
    "CriticalPoint",
    "DecompositionReport",
    "DecompositionSpec",
    "DEFAULT_POLICY",
    "DEFAULT_QUAD_SPEC",
    "DivisionGuardError",
    "DomainError",
    "EvalPolicy",
    "ExtremalPreset",
    "FactorizationChain",
    "ImageRangeError",
    "IntegralCache",
    "IntervalTower",
    "InvalidParameterError",
    "LadderModel",
    "MembershipVerdict",
    "NonFiniteSampleError",
    "PartitionSpec",
    "PowerPulse",
    "QuadResult",
    "QuadratureSpec",
    "VerificationReport",
    "ZetaFactorError",
    "band_width",
    "build_cache",
    "build_chain",
    "c0_membership",
    "component_identity_verify",
    "compose_k",
    "corollary_k1",
    "eval_additive",
    "eval_power",
    "exact_mean_additive",
    "exact_mean_power",
    "extremal_presets",
    "hardy_z",
    "integrate",
    "j_at",
    "ladder_weight",
    "lemma1_verify",
    "lemma2_verify",
    "load_cache",
    "mean_main_term",
    "mean_value_point",
    "phi1",
    "phi1_inverse",
    "reverse_iterates",
    "riemann_siegel_theta",
    "theorem1_decompose",
    "theorem2_verify",
    "write_cache",
    "zeta_half_sq",
]
