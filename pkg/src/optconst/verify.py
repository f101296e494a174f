"""Verification harnesses for the Khinchine and mixed Littlewood inequalities.

Each verifier computes both sides of one inequality for a concrete input and
returns an immutable :class:`VerificationReport`. Upper bounds on sup-norms
always come from the grid sandwich in :mod:`optconst.norms`; the ascent
heuristic is never used on the certified side.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from ._grid import DEFAULT_BUDGET, phase_indices
from .constants import (
    ConstantValue,
    Family,
    Field,
    ConstantQuery,
    khinchine_constant,
    mixed_littlewood_constant,
)
from .errors import DomainError, NumericError, ResourceLimitError
from .norms import certified_bounds, mixed_grid_norm
from .steinhaus import discrete_average, mc_average
from .tensor import (
    ComplexTensor,
    MixedNormSpec,
    as_tensor,
    conjugate_exponent,
    l2_norm,
    mixed_norm,
    parse_exponent,
)
from .torus import apothem, roots_of_unity

__all__ = [
    "VerificationReport",
    "HLExponentVerdict",
    "check_hl_exponents",
    "verify_multiple_khinchine",
    "verify_mixed_littlewood",
    "verify_theorem_pra",
    "build_kms_form",
    "kms_certificate",
    "verify_kms_chain",
    "littlewood_lhs",
    "REPORT_COLUMNS",
]

DEFAULT_TOLERANCE = 1e-9
CHAIN_SLACK = 1e-12

S_CONVENTION = (
    "lower constant taken as (A~_p)^m: the inductive bound gives S >= (A~_p)^m "
    "and the pair-ones/uniform witnesses give equality"
)


def _plain(value: Any) -> Any:
    """JSON-safe copy: infinities become the string 'inf', tuples become lists."""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, (np.floating, np.integer)):
        return _plain(value.item())
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


@dataclass(frozen=True)
class VerificationReport:
    claim_id: str
    lhs: float
    rhs: float
    constant: ConstantValue
    margin: float
    verdict: str
    params: dict = field(default_factory=dict)
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "verdict": self.verdict,
            "lhs": _plain(self.lhs),
            "rhs": _plain(self.rhs),
            "margin": _plain(self.margin),
            "constant": _plain(self.constant.to_dict()),
            "params": _plain(self.params),
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv_row(self) -> list[str]:
        d = self.to_dict()
        return [
            d["claim_id"],
            d["verdict"],
            repr(self.lhs),
            repr(self.rhs),
            repr(self.margin),
            repr(self.constant.value),
            self.constant.branch,
            json.dumps(d["params"]),
            self.notes,
        ]


REPORT_COLUMNS = (
    "claim_id",
    "verdict",
    "lhs",
    "rhs",
    "margin",
    "constant",
    "constant_branch",
    "params",
    "notes",
)


def reports_to_csv(reports: Iterable[VerificationReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for r in reports:
        writer.writerow(r.to_csv_row())
    return buf.getvalue()


def _verdict(margin: float, tol: float, sigma: float | None = None) -> str:
    if margin >= -tol:
        return "pass"
    if sigma is not None and abs(margin) < 3.0 * sigma:
        return "inconclusive"
    return "fail"


@dataclass(frozen=True)
class HLExponentVerdict:
    admissible: bool
    sum_inv_p: float
    sum_inv_t: float
    bound: float
    t_range: tuple[float, float]
    violations: tuple[str, ...]


def check_hl_exponents(p: Sequence[Any], t: Sequence[Any]) -> HLExponentVerdict:
    """Admissibility of (p, t) for the Hardy-Littlewood inequalities.

    Conditions: every p_j in [2, inf]; sum 1/p_j <= 1/2; every t_j in
    [1/(1 - sum 1/p_j), 2]; sum 1/t_j <= (m+1)/2 - sum 1/p_j. The all-inf
    endpoint (Bohnenblust-Hille, sum 1/p_j = 0) is admitted.
    """
    p = [parse_exponent(v) for v in p]
    t = [parse_exponent(v) for v in t]
    m = len(p)
    if m < 1:
        raise DomainError("need at least one slot")
    if len(t) != m:
        raise DomainError(f"need {m} exponents t, got {len(t)}")
    violations = []
    for j, pj in enumerate(p):
        if pj < 2.0:
            violations.append(f"p[{j}] = {pj!r} < 2")
    sp = sum(0.0 if math.isinf(v) else 1.0 / v for v in p)
    if sp > 0.5:
        violations.append(f"sum 1/p = {sp!r} > 1/2")
    t_lo = 1.0 / (1.0 - sp) if sp < 1.0 else math.inf
    for j, tj in enumerate(t):
        if not t_lo <= tj <= 2.0:
            violations.append(f"t[{j}] = {tj!r} outside [{t_lo!r}, 2]")
    st = sum(0.0 if math.isinf(v) else 1.0 / v for v in t)
    bound = (m + 1) / 2.0 - sp
    if st > bound + 1e-12:
        violations.append(f"sum 1/t = {st!r} > (m+1)/2 - sum 1/p = {bound!r}")
    return HLExponentVerdict(not violations, sp, st, bound, (t_lo, 2.0), tuple(violations))


def _steinhaus_lower(p: float) -> ConstantValue:
    return khinchine_constant(ConstantQuery(Family.STEINHAUS_LOWER, p))


def _steinhaus_upper(p: float) -> ConstantValue:
    return khinchine_constant(ConstantQuery(Family.STEINHAUS_UPPER, p))


def verify_multiple_khinchine(
    a: Any,
    p: float,
    mode: str = "discrete",
    *,
    M: int | None = None,
    samples: int = 1_000_000,
    seed: int = 0,
    tolerance: float = DEFAULT_TOLERANCE,
    budget: int | None = None,
    threads: int = 0,
) -> VerificationReport:
    """Multiple Khinchine inequality for Steinhaus variables on array ``a``.

    ``mode="monte_carlo"``: (A~_p)^m |a|_2 <= E_m^(1/p) <= (B~_p)^m |a|_2 with
    the average estimated by sampling; the side with the smaller margin is
    reported. ``mode="discrete"``: the grid form
    |a|_2 <= (A~_p)^-m r_M^-m E_{m,M,p}(a), exact for 1 <= p <= 2 and M >= 3.
    """
    a = as_tensor(a)
    p = float(p)
    m = a.m
    l2 = l2_norm(a)
    if mode == "discrete":
        if M is None or M < 3:
            raise DomainError("discrete mode needs M >= 3 for the inradius factor")
        if not 1.0 <= p <= 2.0:
            raise DomainError(f"discrete mode needs 1 <= p <= 2, got {p!r}")
        lower = _steinhaus_lower(p)
        r = apothem(M)
        factor = lower.value ** (-m) * r ** (-m)
        E = discrete_average(a, M, p, budget=budget, threads=threads)
        rhs = factor * E
        margin = rhs - l2
        tol = tolerance * max(1.0, abs(l2))
        const = ConstantValue(factor, f"(A~_p)^-m r_M^-m; {lower.branch}", lower.critical_points_used)
        return VerificationReport(
            "multiple_khinchine_discrete",
            l2,
            rhs,
            const,
            margin,
            _verdict(margin, tol),
            {"m": m, "shape": list(a.shape), "p": p, "M": M, "E_mMp": E, "r_M": r, "l2": l2},
            S_CONVENTION,
        )
    if mode != "monte_carlo":
        raise DomainError(f"unknown mode {mode!r}; expected discrete or monte_carlo")
    est = mc_average(a, p, samples, seed, threads=threads)
    lower = _steinhaus_lower(p)
    upper = _steinhaus_upper(p)
    lo_bound = lower.value**m * l2
    hi_bound = upper.value**m * l2
    lo_margin = est.mean - lo_bound
    hi_margin = hi_bound - est.mean
    if lo_margin <= hi_margin:
        lhs, rhs, margin = lo_bound, est.mean, lo_margin
        const = ConstantValue(lower.value**m, f"({lower.branch})^{m}", lower.critical_points_used)
    else:
        lhs, rhs, margin = est.mean, hi_bound, hi_margin
        const = ConstantValue(upper.value**m, f"({upper.branch})^{m}", upper.critical_points_used)
    tol = tolerance * max(1.0, abs(lhs))
    return VerificationReport(
        "multiple_khinchine_mc",
        lhs,
        rhs,
        const,
        margin,
        _verdict(margin, tol, est.std_error),
        {
            "m": m,
            "shape": list(a.shape),
            "p": p,
            "samples": est.samples,
            "seed": est.seed,
            "estimate": est.mean,
            "std_error": est.std_error,
            "l2": l2,
            "ratio": est.mean / l2 if l2 > 0 else 0.0,
            "lower_bound": lo_bound,
            "upper_bound": hi_bound,
        },
        S_CONVENTION,
    )


def littlewood_lhs(T: Any, p: float, variant: int = 0) -> float:
    """Mixed (ell_{p*}, ell_2, ..., ell_2) sum of T with slot 0 moved to nesting level ``variant``.

    ``variant = 0`` is the identity ordering; ``variant = j`` swaps slot 0
    and slot j in the nesting order, with the exponent p* at level j.
    """
    T = as_tensor(T)
    if not 0 <= variant < T.m:
        raise DomainError(f"variant must lie in 0..{T.m - 1}, got {variant}")
    sigma = list(range(T.m))
    sigma[0], sigma[variant] = sigma[variant], sigma[0]
    t = [2.0] * T.m
    t[variant] = conjugate_exponent(p)
    return mixed_norm(T, MixedNormSpec(tuple(sigma), tuple(t)))


def verify_mixed_littlewood(
    T: Any,
    p: Any,
    variant: int = 0,
    M: int = 8,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    budget: int | None = None,
    threads: int = 0,
) -> VerificationReport:
    """Mixed Littlewood inequality LHS <= (A~_{p*})^{-(m-1)} ||T|| for complex T.

    ``T`` acts on ell_p x ell_inf x ... x ell_inf. ||T|| is bounded above by
    the grid sandwich with the grid on slots 1..m-1 and slot 0 handled
    exactly through its dual norm. The ordering of the left-hand sides over
    all variants (slot 0 pushed inward never increases the sum) is checked
    and folded into the verdict.
    """
    T = as_tensor(T)
    p = parse_exponent(p)
    m = T.m
    if p < 2.0:
        raise DomainError(f"mixed Littlewood needs p in [2, inf], got {p!r}")
    if m < 2:
        raise DomainError("mixed Littlewood needs m >= 2")
    const = mixed_littlewood_constant(m, p, Field.COMPLEX)
    chain = [littlewood_lhs(T, p, j) for j in range(m)]
    scale = max(1.0, chain[0])
    chain_ok = all(chain[j + 1] <= chain[j] + CHAIN_SLACK * scale for j in range(1, m - 1))
    chain_ok = chain_ok and all(c <= chain[0] + CHAIN_SLACK * scale for c in chain[1:])
    bounds = certified_bounds(
        T, (p,) + (math.inf,) * (m - 1), M, budget=budget, threads=threads
    )
    lhs = chain[variant] if 0 <= variant < m else littlewood_lhs(T, p, variant)
    rhs = const.value * bounds.upper
    margin = rhs - lhs
    tol = tolerance * max(1.0, abs(lhs))
    verdict = _verdict(margin, tol)
    if not chain_ok and verdict == "pass":
        verdict = "fail"
    return VerificationReport(
        "mixed_littlewood",
        lhs,
        rhs,
        const,
        margin,
        verdict,
        {
            "m": m,
            "shape": list(T.shape),
            "p": p,
            "p_star": conjugate_exponent(p),
            "variant": variant,
            "M": M,
            "norm_lower": bounds.lower,
            "norm_upper": bounds.upper,
            "grid_slots": list(bounds.A),
            "chain": chain,
            "chain_ok": chain_ok,
        },
        "chain lists the left-hand side for variants 0..m-1; it must be nonincreasing after variant 0",
    )


def verify_theorem_pra(
    T: Any,
    p: Sequence[Any],
    M: int = 8,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    budget: int | None = None,
    threads: int = 0,
) -> VerificationReport:
    """(lambda, 2, ..., 2) mixed sum <= sqrt(2)^(m-1) ||T|| when sum 1/p_j < 1/2."""
    T = as_tensor(T)
    p = tuple(parse_exponent(v) for v in p)
    m = T.m
    if len(p) != m:
        raise DomainError(f"need {m} domain exponents, got {len(p)}")
    spec = MixedNormSpec.identity((2.0,) * m, p)
    s = sum(1.0 / v for v in p)
    if not s < 0.5:
        raise DomainError(f"need sum 1/p_j < 1/2, got {s!r}")
    lam = spec.lam
    lhs = mixed_norm(T, MixedNormSpec.identity((lam,) + (2.0,) * (m - 1), p))
    bounds = certified_bounds(T, p, M, budget=budget, threads=threads)
    cval = math.sqrt(2.0) ** (m - 1)
    const = ConstantValue(cval, "(sqrt 2)^(m-1)")
    rhs = cval * bounds.upper
    margin = rhs - lhs
    tol = tolerance * max(1.0, abs(lhs))
    return VerificationReport(
        "theorem_pra",
        lhs,
        rhs,
        const,
        margin,
        _verdict(margin, tol),
        {
            "m": m,
            "shape": list(T.shape),
            "p": list(p),
            "lambda": lam,
            "M": M,
            "norm_lower": bounds.lower,
            "norm_upper": bounds.upper,
            "grid_slots": list(bounds.A),
        },
    )


def build_kms_form(
    a: Any,
    M: int,
    p: float,
    *,
    check: bool = True,
    budget: int | None = None,
    threads: int = 0,
) -> ComplexTensor:
    """The (m+1)-linear form that turns the grid Khinchine bound into a Littlewood bound.

    ``a`` is first scaled so that E_{m,M,p}(a) = 1. Row i of the new slot 0
    corresponds to the i-th point w of (T_M^{n_0} x ... x T_M^{n_{m-1}}) in
    lexicographic order (slot-major, coordinate next, phase digit fastest),
    and T[i, n_0, ..., n_{m-1}] = a[n] w^(0)_{n_0} ... w^(m-1)_{n_{m-1}} / M^(K/p)
    with K the total number of coordinates. With ``check`` the bound
    ||T||_{grid slots 1..m, M} <= 1 + 1e-9 is verified before returning.
    """
    a = as_tensor(a)
    p = float(p)
    if not 1.0 <= p <= 2.0:
        raise DomainError(f"the construction needs 1 <= p <= 2, got {p!r}")
    if M < 2:
        raise DomainError(f"the construction needs M >= 2, got {M}")
    budget = DEFAULT_BUDGET if budget is None else budget
    K = sum(a.shape)
    rows = M**K
    entries = rows * math.prod(a.shape)
    if entries > budget:
        raise ResourceLimitError(entries, budget, "coefficients")
    E = discrete_average(a, M, p, budget=budget, threads=threads)
    if E == 0.0:
        raise DomainError("cannot normalise the zero array")
    base = a.array / E
    w = roots_of_unity(M)[phase_indices(M, K)]
    tau = np.ones((rows,) + (1,) * a.m, dtype=np.complex128)
    start = 0
    for j, n in enumerate(a.shape):
        shape = [rows] + [1] * a.m
        shape[j + 1] = n
        tau = tau * w[:, start : start + n].reshape(shape)
        start += n
    form = ComplexTensor(base[None] * tau / float(M) ** (K / p))
    if check:
        cert = kms_certificate(form, M, p, budget=budget, threads=threads)
        if cert > 1.0 + 1e-9:
            raise NumericError(f"grid norm certificate {cert!r} exceeds 1")
    return form


def kms_certificate(form: Any, M: int, p: float, *, budget: int | None = None, threads: int = 0) -> float:
    """||form||_{A,M} with the grid on slots 1..m and slot 0 in the ell_{p*} ball."""
    form = as_tensor(form)
    dom = (conjugate_exponent(p),) + (math.inf,) * (form.m - 1)
    return mixed_grid_norm(form, range(1, form.m), M, dom, budget=budget, threads=threads)


def verify_kms_chain(
    a: Any,
    M: int,
    p: float,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    budget: int | None = None,
    threads: int = 0,
) -> VerificationReport:
    """Re-derive the grid Khinchine bound through the (m+1)-linear construction.

    |a|_2 = E * (ell_2, ..., ell_2, ell_p) sum of the form
          <= E * (A~_p)^-m * r_M^-m * ||form||_{A,M},
    and the right side must match the direct discrete bound.
    """
    a = as_tensor(a)
    if M < 3:
        raise DomainError("the chain needs M >= 3")
    E = discrete_average(a, M, p, budget=budget, threads=threads)
    form = build_kms_form(a, M, p, check=False, budget=budget, threads=threads)
    cert = kms_certificate(form, M, p, budget=budget, threads=threads)
    m = a.m
    sigma = tuple(range(1, m + 1)) + (0,)
    mixed = mixed_norm(form, MixedNormSpec(sigma, (2.0,) * m + (p,)))
    lower = _steinhaus_lower(p)
    factor = lower.value ** (-m) * apothem(M) ** (-m)
    l2 = l2_norm(a)
    rhs = E * factor * cert
    direct = verify_multiple_khinchine(a, p, "discrete", M=M, budget=budget, threads=threads)
    agree = abs(rhs - direct.rhs) <= 1e-9 * max(1.0, abs(direct.rhs))
    lhs_consistent = abs(E * mixed - l2) <= 1e-9 * max(1.0, l2)
    margin = rhs - l2
    verdict = _verdict(margin, tolerance * max(1.0, l2))
    if verdict == "pass" and not (agree and lhs_consistent and cert <= 1.0 + 1e-9):
        verdict = "fail"
    return VerificationReport(
        "kms_chain",
        l2,
        rhs,
        ConstantValue(factor, f"(A~_p)^-m r_M^-m; {lower.branch}", lower.critical_points_used),
        margin,
        verdict,
        {
            "m": m,
            "shape": list(a.shape),
            "p": p,
            "M": M,
            "E_mMp": E,
            "certificate": cert,
            "mixed_sum_of_form": mixed,
            "direct_rhs": direct.rhs,
            "agrees_with_direct": agree,
        },
        S_CONVENTION,
    )
