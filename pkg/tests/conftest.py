"""Brute-force oracles shared by the tests.

Everything here is written without the package's grid walker: plain
itertools.product over all phase assignments and einsum contraction.
"""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np
import pytest


def brute_roots(M):
    return [cmath.exp(2j * math.pi * k / M) for k in range(M)]


def brute_values(a, M):
    """|sum a x^(0)...x^(m-1)| for every x in (T_M^{n_0}) x ... x (T_M^{n_{m-1}})."""
    a = np.asarray(a, dtype=complex)
    roots = brute_roots(M)
    total = sum(a.shape)
    out = []
    for digits in itertools.product(range(M), repeat=total):
        vals = a
        pos = 0
        for n in a.shape:
            x = np.array([roots[d] for d in digits[pos : pos + n]])
            vals = np.tensordot(vals, x, axes=([0], [0]))
            pos += n
        out.append(abs(complex(vals)))
    return np.array(out)


def brute_grid_norm(a, M):
    return float(brute_values(a, M).max())


def brute_discrete_average(a, M, p):
    return float(np.mean(brute_values(a, M) ** p) ** (1.0 / p))


def random_tensor(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


LITTLEWOOD = np.array([[1.0, 1.0], [1.0, -1.0]])


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
