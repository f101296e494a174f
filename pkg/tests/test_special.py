from __future__ import annotations

import math

import mpmath
import pytest
from scipy import integrate

from optconst.errors import DomainError, NumericError
from optconst.special import (
    SQRT_PI,
    find_root,
    gamma,
    pair_moment_quadrature,
    quadrature,
    solve_critical,
    steinhaus_pair_moment,
)

# Regression pins from the package's own root finder.
P0 = 1.8474163360763542
P1 = 0.4756170089320786


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 1.0), (0.5, 1.7724538509055159), (2.5, 1.3293403881791370)],
)
def test_gamma_examples(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-14, abs=0)


def test_gamma_against_mpmath():
    xs = [1e-3, 0.1, 0.3, 0.77, 1.5, 2.0, 3.3, 7.25, 12.5, 24.5, 40.1, 100.7, 150.0]
    for x in xs:
        ref = float(mpmath.gamma(mpmath.mpf(x)))
        assert abs(gamma(x) - ref) <= 1e-13 * abs(ref), x


def test_gamma_integers_exact():
    for n in range(1, 20):
        assert gamma(float(n)) == math.factorial(n - 1)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, math.inf, math.nan])
def test_gamma_domain(x):
    with pytest.raises(DomainError):
        gamma(x)


def test_find_root_simple():
    r = find_root(lambda x: x * x - 2.0, 0.0, 2.0)
    assert r.root == pytest.approx(math.sqrt(2.0), abs=1e-15)
    assert r.residual < 1e-15


def test_find_root_needs_sign_change():
    with pytest.raises(NumericError, match="no sign change"):
        find_root(lambda x: x * x + 1.0, -1.0, 1.0)


def test_critical_p0():
    r = solve_critical("p0")
    assert r.root == P0
    assert abs(gamma((r.root + 1) / 2) - SQRT_PI / 2) <= 1e-12
    # Independent check with mpmath's root finder.
    ref = mpmath.findroot(lambda p: mpmath.gamma((p + 1) / 2) - mpmath.sqrt(mpmath.pi) / 2, 1.85)
    assert r.root == pytest.approx(float(ref), abs=1e-13)


def test_critical_p1_and_alpha():
    assert solve_critical("p1").root == P1
    assert solve_critical("alpha").root == pytest.approx(P0 / (P0 - 1), rel=1e-15)
    assert abs(solve_critical("p1").root - 0.4756) <= 5e-4
    assert abs(solve_critical("alpha").root - 2.18006) <= 1e-4


def test_critical_p1_against_mpmath():
    def eq(p):
        g = mpmath.gamma
        return 1 - mpmath.sqrt(2) * (g((p + 1) / 2) / (mpmath.sqrt(mpmath.pi) * g(p / 2 + 1) ** 2)) ** (1 / p)

    assert P1 == pytest.approx(float(mpmath.findroot(eq, 0.47)), abs=1e-12)


def test_solve_critical_unknown():
    with pytest.raises(DomainError):
        solve_critical("p2")


@pytest.mark.parametrize("p, expected", [(2.0, 2.0), (4.0, 6.0), (1.0, 4.0 / math.pi)])
def test_pair_moment_examples(p, expected):
    assert steinhaus_pair_moment(p) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("p", [0.3, 1.0, 1.5, 2.0, 3.0, 4.0])
def test_pair_moment_vs_scipy(p):
    ref, _ = integrate.quad(lambda t: abs(1 + complex(math.cos(t), math.sin(t))) ** p, 0, 2 * math.pi, limit=200)
    assert steinhaus_pair_moment(p) == pytest.approx(ref / (2 * math.pi), rel=1e-9)
    assert pair_moment_quadrature(p) == pytest.approx(steinhaus_pair_moment(p), abs=1e-10)


def test_pair_moment_domain():
    with pytest.raises(DomainError):
        steinhaus_pair_moment(0.0)


def test_quadrature_examples():
    assert quadrature(lambda x: 1.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-14)
    assert quadrature(math.cos, 0.0, math.pi / 2) == pytest.approx(1.0, abs=1e-12)
    val = quadrature(lambda t: abs(1 + complex(math.cos(t), math.sin(t))), 0.0, 2 * math.pi) / (2 * math.pi)
    assert val == pytest.approx(4 / math.pi, abs=1e-11)


def test_quadrature_budget():
    with pytest.raises(NumericError):
        quadrature(lambda x: math.sin(1 / x) if x else 0.0, 0.0, 1.0, tol=1e-15, max_evals=200)
