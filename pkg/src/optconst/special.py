"""Gamma function, bracketed root finding and adaptive quadrature.

Everything here is pure Python on 64-bit floats. The Gamma function uses the
13-term rational Lanczos approximation (g = 6.02468...) published with Boost
and reused by Cephes/SciPy as ``lanczos_sum_expg_scaled``; its coefficients
are fixed below so results are reproducible to the last digit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, NumericError

__all__ = [
    "RootResult",
    "gamma",
    "find_root",
    "solve_critical",
    "steinhaus_pair_moment",
    "pair_moment_quadrature",
    "quadrature",
]

SQRT_PI = math.sqrt(math.pi)

_LANCZOS_G = 6.024680040776729583740234375

# Numerator and denominator of the scaled Lanczos sum, highest power first.
_LANCZOS_NUM = (
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
)
_LANCZOS_DEN = (
    1.0,
    66.0,
    1925.0,
    32670.0,
    357423.0,
    2637558.0,
    13339535.0,
    45995730.0,
    105258076.0,
    150917976.0,
    120543840.0,
    39916800.0,
    0.0,
)


def _ratevl(x: float) -> float:
    if x <= 1.0:
        num = den = 0.0
        for c in _LANCZOS_NUM:
            num = num * x + c
        for c in _LANCZOS_DEN:
            den = den * x + c
        return num / den
    # Evaluate in 1/x to keep the powers bounded.
    y = 1.0 / x
    num = den = 0.0
    for c in reversed(_LANCZOS_NUM):
        num = num * y + c
    for c in reversed(_LANCZOS_DEN):
        den = den * y + c
    return num / den


def gamma(x: float) -> float:
    """Gamma function for positive finite real ``x``.

    Raises :class:`DomainError` for non-positive or non-finite input and
    ``OverflowError`` when the result exceeds the float range (x > ~171.6).
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"gamma is defined here only for finite x > 0, got {x!r}")
    if x < 1.0:
        # The rational fit is tuned for x >= 1; shift with the recurrence.
        return gamma(x + 1.0) / x
    if x == math.floor(x) and x <= 23.0:
        return float(math.factorial(int(x) - 1))
    base = (x + _LANCZOS_G - 0.5) / math.e
    half = math.pow(base, (x - 0.5) / 2.0)
    return _ratevl(x) * half * half


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int
    bracket: tuple[float, float]


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    maxiter: int = 200,
) -> RootResult:
    """Bracketed root of ``f`` on ``[lo, hi]`` by alternating secant and bisection.

    A secant (false position) step is tried first; every second step, or
    whenever the secant point leaves the bracket, the interval is bisected,
    so the bracket at least halves every two iterations.
    """
    a, b = float(lo), float(hi)
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return RootResult(a, 0.0, 0, (lo, hi))
    if fb == 0.0:
        return RootResult(b, 0.0, 0, (lo, hi))
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise NumericError(
            f"bracket [{lo}, {hi}] has no sign change: f(lo)={fa!r}, f(hi)={fb!r}"
        )
    it = 0
    for it in range(1, maxiter + 1):
        x = b - fb * (b - a) / (fb - fa)
        if it % 2 == 0 or not (min(a, b) < x < max(a, b)):
            x = 0.5 * (a + b)
        fx = f(x)
        if fx == 0.0:
            a = b = x
            fa = fb = fx
            break
        if math.copysign(1.0, fx) == math.copysign(1.0, fa):
            a, fa = x, fx
        else:
            b, fb = x, fx
        if abs(b - a) <= 4.0 * math.ulp(max(abs(a), abs(b))):
            break
    else:
        raise NumericError(f"root finder did not converge in {maxiter} iterations")
    root, froot = (a, fa) if abs(fa) <= abs(fb) else (b, fb)
    return RootResult(root, abs(froot), it, (float(lo), float(hi)))


def _p0_equation(p: float) -> float:
    return gamma((p + 1.0) / 2.0) - SQRT_PI / 2.0


def _p1_equation(p: float) -> float:
    ratio = gamma((p + 1.0) / 2.0) / (SQRT_PI * gamma(p / 2.0 + 1.0) ** 2)
    return 1.0 - math.sqrt(2.0) * ratio ** (1.0 / p)


def solve_critical(which: str) -> RootResult:
    """Critical exponents of the Khinchine constants.

    ``p0``: the root in (1, 2) of Gamma((p+1)/2) = sqrt(pi)/2, where the real
    lower constant switches formula. ``p1``: the root in (0, 1) where the two
    Steinhaus lower-constant formulas cross. ``alpha``: p0/(p0 - 1); its
    residual is the residual of p0.
    """
    if which == "p0":
        return find_root(_p0_equation, 1.5, 1.99)
    if which == "p1":
        return find_root(_p1_equation, 0.1, 0.9)
    if which == "alpha":
        r = find_root(_p0_equation, 1.5, 1.99)
        return RootResult(r.root / (r.root - 1.0), r.residual, r.iterations, r.bracket)
    raise DomainError(f"unknown critical point {which!r}; expected p0, p1 or alpha")


def steinhaus_pair_moment(p: float) -> float:
    """E|e1 + e2|^p for two independent Steinhaus variables (not rooted)."""
    if not p > 0.0:
        raise DomainError(f"pair moment needs p > 0, got {p!r}")
    if math.isinf(p):
        raise DomainError("pair moment is unbounded at p = inf")
    return 2.0**p * gamma((p + 1.0) / 2.0) / (gamma((p + 2.0) / 2.0) * SQRT_PI)


def quadrature(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    *,
    max_depth: int = 60,
    max_evals: int = 5_000_000,
) -> float:
    """Adaptive Simpson integral of ``f`` over ``[a, b]``.

    An interval is accepted once the two-panel and one-panel estimates differ
    by at most 15 times its share of ``tol``; the Richardson-corrected value
    is kept. Raises :class:`NumericError` if an interval needs to be split
    beyond ``max_depth`` levels or the evaluation budget runs out.
    """
    if not a < b:
        raise DomainError(f"quadrature needs a < b, got [{a}, {b}]")
    if not tol > 0.0:
        raise DomainError("quadrature tolerance must be positive")
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    evals = 3
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    pieces: list[float] = []
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, est, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        evals += 2
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - est
        if abs(delta) <= 15.0 * eps:
            pieces.append(left + right + delta / 15.0)
            continue
        if depth >= max_depth or evals >= max_evals:
            raise NumericError(
                f"adaptive Simpson did not converge near [{lo}, {hi}] "
                f"(depth {depth}, {evals} evaluations)"
            )
        stack.append((mid, hi, fmid, frm, fhi, right, eps / 2.0, depth + 1))
        stack.append((lo, mid, flo, flm, fmid, left, eps / 2.0, depth + 1))
    return math.fsum(pieces)


def pair_moment_quadrature(p: float, tol: float = 1e-12) -> float:
    """Quadrature oracle for :func:`steinhaus_pair_moment`.

    Computes (1/2pi) * integral of |1 + e^{it}|^p over [0, 2pi]. By symmetry
    this is (1/pi) * integral of (2 sin(u/2))^p over [0, pi]; the substitution
    u = pi * s^4 removes the u^p endpoint singularity for small p.
    """
    if not p > 0.0:
        raise DomainError(f"pair moment needs p > 0, got {p!r}")

    def integrand(s: float) -> float:
        u = math.pi * s**4
        return 4.0 * s**3 * (2.0 * math.sin(u / 2.0)) ** p

    return quadrature(integrand, 0.0, 1.0, tol)
