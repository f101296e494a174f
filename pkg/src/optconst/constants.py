"""Optimal constants of Khinchine-type and mixed Littlewood inequalities.

Real (Rademacher) constants ``A_p``, ``B_p`` follow Haagerup; complex
(Steinhaus) constants follow Koenig. Multiple-inequality constants are m-th
powers of the one-dimensional ones, and the complex mixed
(ell_{p*}, ell_2, ..., ell_2)-Littlewood constant is the inverse (m-1)-th
power of the Steinhaus lower constant at the conjugate exponent.

The critical exponents where formulas switch are computed once by
:func:`optconst.special.solve_critical` and cached.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

from .errors import DomainError, UsageError
from .special import SQRT_PI, gamma, solve_critical
from .tensor import conjugate_exponent, parse_exponent

__all__ = [
    "Family",
    "Field",
    "ConstantQuery",
    "ConstantValue",
    "critical_points",
    "khinchine_constant",
    "multiple_constant",
    "mixed_littlewood_constant",
    "case_table_constant",
    "evaluate",
]


class Family(str, enum.Enum):
    KHINCHINE_LOWER_REAL = "khinchine_lower_real"
    KHINCHINE_UPPER_REAL = "khinchine_upper_real"
    STEINHAUS_LOWER = "steinhaus_lower"
    STEINHAUS_UPPER = "steinhaus_upper"
    MULTIPLE_LOWER = "multiple_lower"
    MULTIPLE_UPPER = "multiple_upper"
    MIXED_LITTLEWOOD = "mixed_littlewood"
    CASE_TABLE = "case_table"

    @classmethod
    def parse(cls, text: str | Family) -> Family:
        if isinstance(text, Family):
            return text
        try:
            return cls(text.strip().lower().replace("-", "_"))
        except ValueError:
            names = ", ".join(f.value for f in cls)
            raise UsageError(f"unknown constant family {text!r}; expected one of {names}") from None


class Field(str, enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


CASES = ("i", "ii", "iii", "iv")


@dataclass(frozen=True)
class ConstantQuery:
    family: Family
    p: float = 2.0
    m: int = 1
    field: Field = Field.COMPLEX
    case_id: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family.parse(self.family))
        object.__setattr__(self, "field", Field(self.field))
        object.__setattr__(self, "p", parse_exponent(self.p))
        if not self.p > 0.0:
            raise DomainError(f"exponent must be positive, got {self.p}")
        if self.m < 1:
            raise DomainError(f"degree m must be >= 1, got {self.m}")
        if (self.case_id is not None) != (self.family is Family.CASE_TABLE):
            raise UsageError("case_id is required for, and only for, the case_table family")
        if self.case_id is not None and self.case_id not in CASES:
            raise UsageError(f"case_id must be one of {CASES}, got {self.case_id!r}")


@dataclass(frozen=True)
class ConstantValue:
    value: float
    branch: str
    critical_points_used: tuple[tuple[str, float], ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "branch": self.branch,
            "critical_points_used": [[k, v] for k, v in self.critical_points_used],
        }


@functools.cache
def critical_points() -> dict[str, float]:
    """p0, p1 and alpha from the package's own root finder."""
    p0 = solve_critical("p0").root
    return {"p0": p0, "p1": solve_critical("p1").root, "alpha": p0 / (p0 - 1.0)}


def _gauss_real(p: float) -> float:
    # sqrt(2) (Gamma((p+1)/2) / sqrt(pi))^(1/p): the real Gaussian moment.
    return math.sqrt(2.0) * (gamma((p + 1.0) / 2.0) / SQRT_PI) ** (1.0 / p)


def _gauss_complex(p: float) -> float:
    # Gamma((p+2)/2)^(1/p): the complex Gaussian moment.
    return gamma((p + 2.0) / 2.0) ** (1.0 / p)


def _pair_complex(p: float) -> float:
    # (E|e1 + e2|^p)^(1/p) / sqrt(2).
    return math.sqrt(2.0) * (gamma((p + 1.0) / 2.0) / (gamma((p + 2.0) / 2.0) * SQRT_PI)) ** (1.0 / p)


def _real_lower(p: float) -> ConstantValue:
    p0 = critical_points()["p0"]
    used = (("p0", p0),)
    if p <= p0:
        return ConstantValue(2.0 ** (0.5 - 1.0 / p), "A_p=2^(1/2-1/p)", used)
    if p <= 2.0:
        return ConstantValue(_gauss_real(p), "A_p=gaussian", used)
    return ConstantValue(1.0, "A_p=1", used)


def _real_upper(p: float) -> ConstantValue:
    if p <= 2.0:
        return ConstantValue(1.0, "B_p=1")
    if math.isinf(p):
        raise DomainError("the real upper Khinchine constant is unbounded at p = inf")
    return ConstantValue(_gauss_real(p), "B_p=gaussian")


def _steinhaus_lower(p: float) -> ConstantValue:
    p1 = critical_points()["p1"]
    used = (("p1", p1),)
    if math.isinf(p):
        return ConstantValue(1.0, "A~_p=1", used)
    value = min(_gauss_complex(p), _pair_complex(p), 1.0)
    if p <= p1:
        branch = "A~_p=pair"
    elif p <= 2.0:
        branch = "A~_p=gaussian"
    else:
        branch = "A~_p=1"
    return ConstantValue(value, branch, used)


def _steinhaus_upper(p: float) -> ConstantValue:
    if p <= 2.0:
        return ConstantValue(max(_gauss_complex(p), 1.0), "B~_p=1")
    if math.isinf(p):
        raise DomainError("the Steinhaus upper Khinchine constant is unbounded at p = inf")
    return ConstantValue(max(_gauss_complex(p), 1.0), "B~_p=gaussian")


_BASE = {
    Family.KHINCHINE_LOWER_REAL: _real_lower,
    Family.KHINCHINE_UPPER_REAL: _real_upper,
    Family.STEINHAUS_LOWER: _steinhaus_lower,
    Family.STEINHAUS_UPPER: _steinhaus_upper,
}


def khinchine_constant(q: ConstantQuery) -> ConstantValue:
    """One-dimensional constant: A_p, B_p (real) or A~_p, B~_p (Steinhaus)."""
    try:
        fn = _BASE[q.family]
    except KeyError:
        raise UsageError(f"{q.family.value} is not a one-dimensional Khinchine family") from None
    return fn(q.p)


def multiple_constant(q: ConstantQuery) -> ConstantValue:
    """Optimal constant of the m-fold Khinchine inequality: the base constant to the m."""
    if q.family is Family.MULTIPLE_LOWER:
        base = Family.KHINCHINE_LOWER_REAL if q.field is Field.REAL else Family.STEINHAUS_LOWER
    elif q.family is Family.MULTIPLE_UPPER:
        base = Family.KHINCHINE_UPPER_REAL if q.field is Field.REAL else Family.STEINHAUS_UPPER
    else:
        raise UsageError(f"{q.family.value} is not a multiple Khinchine family")
    one = _BASE[base](q.p)
    return ConstantValue(one.value**q.m, f"({one.branch})^{q.m}", one.critical_points_used)


def case_table_constant(case_id: str, m: int, p: float = math.inf) -> ConstantValue:
    """Real optimal constants of the mixed Littlewood cases (i)-(iv)."""
    if case_id not in CASES:
        raise UsageError(f"case_id must be one of {CASES}, got {case_id!r}")
    if m < 1:
        raise DomainError(f"degree m must be >= 1, got {m}")
    p = parse_exponent(p)
    if case_id in ("i", "iii"):
        return ConstantValue(2.0 ** ((m - 1) / 2.0), f"case {case_id}: (2^(1/2))^(m-1)")
    alpha = critical_points()["alpha"]
    used = (("alpha", alpha),)
    if case_id == "ii":
        if p < alpha:
            raise DomainError(f"case ii needs p >= alpha = {alpha!r}, got {p!r}")
        base = math.sqrt(2.0) if math.isinf(p) else 2.0 ** (0.5 - 1.0 / p)
        return ConstantValue(base ** (m - 1), "case ii: (2^(1/2-1/p))^(m-1)", used)
    if not 2.0 <= p < alpha:
        raise DomainError(f"case iv needs 2 <= p < alpha = {alpha!r}, got {p!r}")
    base = (1.0 / math.sqrt(2.0)) * (gamma((2.0 * p - 1.0) / (2.0 * p - 2.0)) / SQRT_PI) ** (1.0 / p - 1.0)
    return ConstantValue(base ** (m - 1), "case iv: gamma formula", used)


def mixed_littlewood_constant(m: int, p: float, field: Field | str = Field.COMPLEX) -> ConstantValue:
    """Optimal constant of the mixed (ell_{p*}, ell_2, ..., ell_2)-Littlewood inequality.

    Complex scalars: (A~_{p*})^{-(m-1)}. Real scalars: the case table,
    case (i) at p = inf, (ii) for p >= alpha and (iv) for 2 <= p < alpha.
    """
    field = Field(field)
    p = parse_exponent(p)
    if m < 2:
        raise DomainError(f"mixed Littlewood constants need m >= 2, got {m}")
    if p < 2.0:
        raise DomainError(f"mixed Littlewood constants need p in [2, inf], got {p!r}")
    if field is Field.COMPLEX:
        pstar = conjugate_exponent(p)
        base = _steinhaus_lower(pstar)
        return ConstantValue(
            base.value ** (-(m - 1)),
            f"complex: (A~_p*)^-(m-1), p*={pstar!r}",
            base.critical_points_used,
        )
    if math.isinf(p):
        return case_table_constant("i", m)
    if p >= critical_points()["alpha"]:
        return case_table_constant("ii", m, p)
    return case_table_constant("iv", m, p)


def evaluate(q: ConstantQuery) -> ConstantValue:
    """Dispatch a query to the formula for its family."""
    if q.family in _BASE:
        if q.m != 1:
            raise UsageError("one-dimensional families take m = 1; use multiple_lower/upper")
        return khinchine_constant(q)
    if q.family in (Family.MULTIPLE_LOWER, Family.MULTIPLE_UPPER):
        return multiple_constant(q)
    if q.family is Family.MIXED_LITTLEWOOD:
        return mixed_littlewood_constant(q.m, q.p, q.field)
    return case_table_constant(q.case_id, q.m, q.p)
