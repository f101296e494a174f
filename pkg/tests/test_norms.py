from __future__ import annotations

import math

import numpy as np
import pytest

from optconst.errors import DomainError, ResourceLimitError, UnsupportedModeError, UsageError
from optconst.norms import ascent_lower_bound, certified_bounds, grid_norm, mixed_grid_norm, norm_bounds
from optconst.torus import apothem

from conftest import LITTLEWOOD, brute_grid_norm, random_tensor

# Exhaustive max over all 3^4 cube-root assignments: |x0(y0+y1) + x1(y0-y1)| peaks at sqrt(7).
LITTLEWOOD_M3 = math.sqrt(7.0)


def test_littlewood_grid_norms():
    assert grid_norm(LITTLEWOOD, 4) == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    assert grid_norm(LITTLEWOOD, 3) == pytest.approx(LITTLEWOOD_M3, abs=1e-12)
    assert brute_grid_norm(LITTLEWOOD, 3) == pytest.approx(LITTLEWOOD_M3, abs=1e-12)


def test_rank_one():
    E = np.zeros((3, 3))
    E[0, 0] = 1
    for M in (2, 3, 5):
        assert grid_norm(E, M) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("M", [2, 3, 4, 5])
def test_grid_norm_matches_brute_force(M, rng):
    for shape in [(3,), (2, 2), (1, 3), (3, 2), (2, 1, 2), (2, 2, 2)]:
        T = random_tensor(rng, shape)
        ref = brute_grid_norm(T, M)
        assert grid_norm(T, M) == pytest.approx(ref, rel=1e-13)
        assert grid_norm(T, M, reduce_phases=False) == pytest.approx(ref, rel=1e-13)


def test_grid_norm_thread_invariant(rng):
    T = random_tensor(rng, (3, 3, 3))
    a = grid_norm(T, 5, threads=1)
    assert grid_norm(T, 5, threads=4) == a
    assert grid_norm(T, 5, threads=8) == a


def test_grid_norm_budget():
    with pytest.raises(ResourceLimitError) as exc:
        grid_norm(np.ones((4, 4)), 8, budget=100)
    # Phase reduction pins one coordinate per slot: 8^3 * 8^3 points.
    assert exc.value.required == 8**6


def test_grid_norm_budget_from_env(monkeypatch):
    monkeypatch.setenv("OPTCONST_BUDGET", "10")
    with pytest.raises(ResourceLimitError):
        grid_norm(np.ones((3, 3)), 4)


def test_mixed_grid_norm_all_slots_is_grid_norm(rng):
    T = random_tensor(rng, (2, 3))
    assert mixed_grid_norm(T, [0, 1], 4) == grid_norm(T, 4)


def test_mixed_grid_norm_identity_l2():
    # Grid on slot 1; slot 0 in the ell_2 ball sees the dual ell_2 norm of y.
    assert mixed_grid_norm(np.eye(3), [1], 4, [2, "inf"]) == pytest.approx(math.sqrt(3), abs=1e-14)


def test_mixed_grid_norm_brute(rng):
    T = random_tensor(rng, (3, 2))
    q = 3.0  # dual of p = 1.5
    best = 0.0
    import itertools

    roots = np.exp(2j * np.pi * np.arange(5) / 5)
    for d in itertools.product(range(5), repeat=2):
        c = T @ roots[list(d)]
        best = max(best, (np.abs(c) ** q).sum() ** (1 / q))
    assert mixed_grid_norm(T, [1], 5, [1.5, "inf"]) == pytest.approx(best, rel=1e-13)


def test_mixed_grid_norm_errors(rng):
    T = random_tensor(rng, (2, 2, 2))
    with pytest.raises(UnsupportedModeError, match="ascent_lower_bound"):
        mixed_grid_norm(T, [0], 4, [math.inf, 2, 2])
    with pytest.raises(DomainError):
        mixed_grid_norm(T, [0, 1], 4, [2, math.inf, math.inf])
    with pytest.raises(UsageError):
        mixed_grid_norm(T, [], 4)
    with pytest.raises(UsageError):
        mixed_grid_norm(T, [3], 4)


def test_norm_bounds_examples():
    b = norm_bounds(LITTLEWOOD, [0, 1], 3)
    assert b.lower == pytest.approx(LITTLEWOOD_M3, abs=1e-12)
    assert b.upper == pytest.approx(4 * LITTLEWOOD_M3, abs=1e-12)
    b = norm_bounds(LITTLEWOOD, [0, 1], 4)
    assert b.lower == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    assert b.upper == pytest.approx(4 * math.sqrt(2), abs=1e-12)
    z = norm_bounds(np.zeros((2, 2)), [0, 1], 5)
    assert (z.lower, z.upper) == (0.0, 0.0)
    with pytest.raises(DomainError):
        norm_bounds(LITTLEWOOD, [0, 1], 2)


def test_certified_bounds():
    b = certified_bounds(LITTLEWOOD, None, 8)
    assert b.A == (1,)
    assert b.lower <= 2 * math.sqrt(2) + 1e-12 <= b.upper + 2e-12
    b1 = certified_bounds([3, 4j], [2], 8)
    assert b1.lower == b1.upper == pytest.approx(5.0)
    with pytest.raises(UnsupportedModeError):
        certified_bounds(LITTLEWOOD, [2, 2], 8)


def test_ascent_examples(rng):
    assert ascent_lower_bound(LITTLEWOOD, ["inf", "inf"], restarts=8) >= 2 * math.sqrt(2) - 1e-9
    E = np.zeros((2, 2))
    E[0, 0] = 1
    assert ascent_lower_bound(E) == pytest.approx(1.0)
    for _ in range(10):
        T = random_tensor(rng, (2, 3))
        assert ascent_lower_bound(T, restarts=3) <= norm_bounds(T, [0, 1], 6).upper + 1e-9


def test_ascent_finite_exponent():
    # Sup over the ell_2 ball of a linear functional on a 1-slot form is the ell_2 norm.
    assert ascent_lower_bound([3, 4], [2]) == pytest.approx(5.0)
    assert ascent_lower_bound([3, -4], [1]) == pytest.approx(4.0)


def test_homogeneity(rng):
    T = random_tensor(rng, (2, 3))
    c = 2.5 * np.exp(0.3j)
    assert grid_norm(T * c, 4) == pytest.approx(abs(c) * grid_norm(T, 4), rel=1e-13)
    assert mixed_grid_norm(T * c, [1], 4, [3, "inf"]) == pytest.approx(
        abs(c) * mixed_grid_norm(T, [1], 4, [3, "inf"]), rel=1e-13
    )


@pytest.mark.parametrize("M", [3, 4, 5])
def test_refinement_monotone(M, rng):
    for _ in range(10):
        T = random_tensor(rng, tuple(rng.integers(1, 4, size=2)))
        g, g2 = grid_norm(T, M), grid_norm(T, 2 * M)
        assert g <= g2 <= g / apothem(M) ** 2 + 1e-9
