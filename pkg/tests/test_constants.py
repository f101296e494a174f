from __future__ import annotations

import math

import mpmath
import pytest

from optconst.constants import (
    ConstantQuery,
    Family,
    Field,
    case_table_constant,
    critical_points,
    evaluate,
    khinchine_constant,
    mixed_littlewood_constant,
    multiple_constant,
)
from optconst.errors import DomainError, UsageError


def value(family, p, m=1, field="complex"):
    return evaluate(ConstantQuery(family, p, m, field)).value


def mp_gauss_complex(p):
    return float(mpmath.gamma((mpmath.mpf(p) + 2) / 2) ** (1 / mpmath.mpf(p)))


def mp_pair(p):
    p = mpmath.mpf(p)
    g = mpmath.gamma
    return float(mpmath.sqrt(2) * (g((p + 1) / 2) / (g((p + 2) / 2) * mpmath.sqrt(mpmath.pi))) ** (1 / p))


def test_steinhaus_lower_examples():
    assert value("steinhaus_lower", 2) == pytest.approx(1.0, abs=1e-15)
    assert value("steinhaus_lower", 1) == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-15)
    assert value("khinchine_lower_real", 1) == pytest.approx(2**-0.5, abs=1e-15)


def test_branch_labels_and_critical_points():
    p1 = critical_points()["p1"]
    below = khinchine_constant(ConstantQuery(Family.STEINHAUS_LOWER, 0.3))
    assert below.branch == "A~_p=pair"
    assert below.critical_points_used == (("p1", p1),)
    # The boundary belongs to the left branch.
    assert khinchine_constant(ConstantQuery(Family.STEINHAUS_LOWER, p1)).branch == "A~_p=pair"
    assert khinchine_constant(ConstantQuery(Family.STEINHAUS_LOWER, 1.0)).branch == "A~_p=gaussian"
    assert khinchine_constant(ConstantQuery(Family.STEINHAUS_LOWER, 3.0)).branch == "A~_p=1"
    p0 = critical_points()["p0"]
    assert khinchine_constant(ConstantQuery(Family.KHINCHINE_LOWER_REAL, p0)).branch == "A_p=2^(1/2-1/p)"


@pytest.mark.parametrize("p", [0.1, 0.3, 0.47, 0.5, 0.9, 1.0, 1.5, 1.99, 2.0, 2.5, 4.0, 10.0])
def test_steinhaus_lower_is_min_of_three(p):
    ref = min(mp_gauss_complex(p), mp_pair(p), 1.0)
    assert value("steinhaus_lower", p) == pytest.approx(ref, rel=1e-13)


def test_steinhaus_branches_cross_at_p1():
    p1 = critical_points()["p1"]
    assert mp_pair(p1) == pytest.approx(mp_gauss_complex(p1), rel=1e-12)


def test_real_lower_continuous_at_p0():
    p0 = critical_points()["p0"]
    left = 2 ** (0.5 - 1 / p0)
    right = math.sqrt(2) * (math.gamma((p0 + 1) / 2) / math.sqrt(math.pi)) ** (1 / p0)
    assert left == pytest.approx(right, rel=1e-12)
    assert value("khinchine_lower_real", p0) == pytest.approx(left, rel=1e-14)
    assert value("khinchine_lower_real", 3.0) == 1.0


def test_real_upper():
    assert value("khinchine_upper_real", 1.5) == 1.0
    ref = math.sqrt(2) * (math.gamma(2.0) / math.sqrt(math.pi)) ** (1 / 3)
    assert value("khinchine_upper_real", 3.0) == pytest.approx(ref, rel=1e-14)
    assert value("khinchine_upper_real", 4.0) == pytest.approx(3 ** 0.25, rel=1e-14)


def test_steinhaus_upper():
    assert value("steinhaus_upper", 1.0) == 1.0
    assert value("steinhaus_upper", 4.0) == pytest.approx(2**0.25, rel=1e-15)


@pytest.mark.parametrize("family", ["steinhaus_upper", "khinchine_upper_real"])
def test_upper_unbounded_at_inf(family):
    with pytest.raises(DomainError):
        value(family, "inf")


def test_multiple_examples():
    assert value("multiple_lower", 2, 5) == pytest.approx(1.0, abs=1e-14)
    assert value("multiple_lower", 1, 3) == pytest.approx((math.sqrt(math.pi) / 2) ** 3, rel=1e-14)
    # Gamma(3)^(2/4) = sqrt(2).
    assert value("multiple_upper", 4, 2) == pytest.approx(math.sqrt(2.0), rel=1e-14)
    assert value("multiple_lower", 1, 2, "real") == pytest.approx(0.5, rel=1e-14)


def test_multiple_rejects_base_family():
    with pytest.raises(UsageError):
        multiple_constant(ConstantQuery(Family.STEINHAUS_LOWER, 1.0))
    with pytest.raises(UsageError):
        evaluate(ConstantQuery(Family.STEINHAUS_LOWER, 1.0, m=2))
    with pytest.raises(UsageError):
        khinchine_constant(ConstantQuery(Family.MULTIPLE_LOWER, 1.0, m=2))


def test_mixed_littlewood_examples():
    assert mixed_littlewood_constant(2, math.inf, Field.COMPLEX).value == pytest.approx(2 / math.sqrt(math.pi), abs=1e-12)
    assert mixed_littlewood_constant(3, "inf").value == pytest.approx(4 / math.pi, abs=1e-12)
    assert mixed_littlewood_constant(2, math.inf, "real").value == math.sqrt(2)


def test_mixed_littlewood_complex_p2_is_one():
    assert mixed_littlewood_constant(4, 2.0).value == pytest.approx(1.0, abs=1e-14)


def test_mixed_littlewood_real_matches_case_table():
    alpha = critical_points()["alpha"]
    assert mixed_littlewood_constant(3, 4.0, "real").value == case_table_constant("ii", 3, 4.0).value
    assert mixed_littlewood_constant(3, 2.1, "real").value == case_table_constant("iv", 3, 2.1).value
    assert mixed_littlewood_constant(2, alpha, "real").branch.startswith("case ii")


@pytest.mark.parametrize("p", [2.0, 2.1, 3.0, 8.0])
def test_real_case_table_is_inverse_real_khinchine(p):
    # Both the (ii) and (iv) rows equal A_{p*}^{-(m-1)}.
    pstar = p / (p - 1)
    base = value("khinchine_lower_real", pstar)
    assert mixed_littlewood_constant(3, p, "real").value == pytest.approx(base**-2, rel=1e-12)


def test_mixed_littlewood_domain():
    with pytest.raises(DomainError):
        mixed_littlewood_constant(2, 1.5)
    with pytest.raises(DomainError):
        mixed_littlewood_constant(1, 4.0)


def test_case_table_examples():
    assert case_table_constant("i", 3).value == pytest.approx(2.0, rel=1e-15)
    assert case_table_constant("iii", 3).value == pytest.approx(2.0, rel=1e-15)
    assert case_table_constant("ii", 2, 4.0).value == pytest.approx(2**0.25, rel=1e-15)
    assert case_table_constant("iv", 2, 2.0).value == pytest.approx(1.0, abs=1e-14)


def test_case_table_ranges():
    with pytest.raises(DomainError, match="alpha"):
        case_table_constant("ii", 2, 2.1)
    with pytest.raises(DomainError, match="alpha"):
        case_table_constant("iv", 2, 3.0)
    with pytest.raises(UsageError):
        case_table_constant("v", 2)


def test_query_validation():
    with pytest.raises(UsageError):
        ConstantQuery("no_such_family")
    with pytest.raises(DomainError):
        ConstantQuery("steinhaus_lower", -1.0)
    with pytest.raises(UsageError):
        ConstantQuery("case_table", 2.0, 2)
    q = ConstantQuery("case-table", "inf", 3, case_id="i")
    assert evaluate(q).value == pytest.approx(2.0)
    assert ConstantQuery("steinhaus-lower").family is Family.STEINHAUS_LOWER
