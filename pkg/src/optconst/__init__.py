"""Optimal constants for Khinchine-type and mixed Littlewood inequalities, with
certified numerical verification on roots-of-unity grids."""

from __future__ import annotations

from .constants import (
    ConstantQuery,
    ConstantValue,
    Family,
    Field,
    case_table_constant,
    critical_points,
    khinchine_constant,
    mixed_littlewood_constant,
    multiple_constant,
)
from .errors import (
    DomainError,
    NumericError,
    OptConstError,
    ResourceLimitError,
    UnsupportedModeError,
    UsageError,
)
from .norms import NormBounds, ascent_lower_bound, certified_bounds, grid_norm, mixed_grid_norm, norm_bounds
from .special import find_root, gamma, pair_moment_quadrature, quadrature, solve_critical, steinhaus_pair_moment
from .steinhaus import discrete_average, extremal_array, mc_average, rademacher_average, translate
from .tensor import ComplexTensor, MixedNormSpec, conjugate_exponent, l2_norm, mixed_norm
from .torus import GridSpec, apothem, gauge, membership_oracle, roots_of_unity
from .verify import (
    VerificationReport,
    build_kms_form,
    check_hl_exponents,
    verify_kms_chain,
    verify_mixed_littlewood,
    verify_multiple_khinchine,
    verify_theorem_pra,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexTensor",
    "ConstantQuery",
    "ConstantValue",
    "DomainError",
    "Family",
    "Field",
    "GridSpec",
    "MixedNormSpec",
    "NormBounds",
    "NumericError",
    "OptConstError",
    "ResourceLimitError",
    "UnsupportedModeError",
    "UsageError",
    "VerificationReport",
    "apothem",
    "ascent_lower_bound",
    "build_kms_form",
    "case_table_constant",
    "certified_bounds",
    "check_hl_exponents",
    "conjugate_exponent",
    "critical_points",
    "discrete_average",
    "extremal_array",
    "find_root",
    "gamma",
    "gauge",
    "grid_norm",
    "khinchine_constant",
    "l2_norm",
    "mc_average",
    "membership_oracle",
    "mixed_grid_norm",
    "mixed_littlewood_constant",
    "mixed_norm",
    "multiple_constant",
    "norm_bounds",
    "pair_moment_quadrature",
    "quadrature",
    "rademacher_average",
    "roots_of_unity",
    "solve_critical",
    "steinhaus_pair_moment",
    "translate",
    "verify_kms_chain",
    "verify_mixed_littlewood",
    "verify_multiple_khinchine",
    "verify_theorem_pra",
]
