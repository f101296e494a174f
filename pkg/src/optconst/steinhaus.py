"""Averages of Steinhaus chaos sums: exact on roots-of-unity grids, Monte
Carlo on the continuous torus."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any

import numpy as np

from ._grid import GridWalk, resolve_threads
from .errors import DomainError
from .tensor import ComplexTensor, as_tensor
from .torus import roots_of_unity

__all__ = [
    "MonteCarloEstimate",
    "discrete_average",
    "rademacher_average",
    "mc_average",
    "extremal_array",
    "translate",
]

MC_BLOCK = 1 << 15


def _check_p(p: float) -> float:
    p = float(p)
    if not p > 0.0 or math.isinf(p):
        raise DomainError(f"averages need a finite exponent p > 0, got {p!r}")
    return p


def discrete_average(
    a: Any,
    M: int,
    p: float,
    *,
    budget: int | None = None,
    threads: int = 0,
    reduce_phases: bool = True,
) -> float:
    """E_{m,M,p}(a): the p-th mean of |sum a w^(0)...w^(m-1)| over (T_M^N)^m.

    Returned as the 1/p-th root. Padding a rectangular array with zeros to a
    common N does not change the value, so the walk runs over the array's own
    shape. Rotating a whole slot by a root of unity permutes the grid and
    leaves every summand unchanged, so by default one representative per
    orbit is summed (``reduce_phases=False`` walks the full grid).
    """
    a = as_tensor(a)
    p = _check_p(p)
    if M < 2:
        raise DomainError(f"discrete average needs M >= 2, got {M}")
    walk = GridWalk(a.array, range(a.m), M, reduce_phases=reduce_phases, budget=budget)
    sums = walk.map_leaves(lambda v: float(np.sum(np.abs(v) ** p)), threads)
    return (math.fsum(sums) / walk.points) ** (1.0 / p)


def rademacher_average(a: Any, p: float) -> float:
    """(E|sum a r^(0)...r^(m-1)|^p)^(1/p) over independent +-1 signs, by direct enumeration."""
    a = as_tensor(a)
    p = _check_p(p)
    arr = a.array
    for j, n in enumerate(arr.shape):
        signs = 1.0 - 2.0 * ((np.arange(2**n)[:, None] >> np.arange(n)[::-1]) & 1)
        arr = np.moveaxis(np.tensordot(arr, signs, axes=([j], [1])), -1, j)
    return float(np.mean(np.abs(arr) ** p) ** (1.0 / p))


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int
    p: float
    raw_mean: float
    raw_std_error: float


def _block_stats(arr: np.ndarray, p: float, seed: int, block: int, size: int) -> tuple[int, float, float]:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))
    vals = np.broadcast_to(arr, (size,) + arr.shape)
    for j in range(arr.ndim):
        theta = rng.random((size, arr.shape[j])) * (2.0 * math.pi)
        z = np.cos(theta) + 1j * np.sin(theta)
        # Contract slot j (now axis 1) against this block's phases.
        out = vals[:, 0] * z[:, 0].reshape((size,) + (1,) * (vals.ndim - 2))
        for k in range(1, arr.shape[j]):
            out = out + vals[:, k] * z[:, k].reshape((size,) + (1,) * (vals.ndim - 2))
        vals = out
    x = np.abs(vals) ** p
    mean = float(x.mean())
    m2 = float(((x - mean) ** 2).sum())
    return size, mean, m2


def mc_average(
    a: Any,
    p: float,
    samples: int = 1_000_000,
    seed: int = 0,
    *,
    threads: int = 0,
) -> MonteCarloEstimate:
    """Monte Carlo estimate of (E|sum a e^(0)...e^(m-1)|^p)^(1/p) for Steinhaus e.

    Samples are split in blocks of ``MC_BLOCK``; block b draws from a Philox
    stream keyed by (seed, b), and block statistics are merged in block
    order, so the estimate depends only on (a, p, samples, seed). The standard
    error of the p-th-power mean is carried through the 1/p root by the
    delta method, which is only accurate to first order.
    """
    a = as_tensor(a)
    p = _check_p(p)
    if samples < 2:
        raise DomainError("Monte Carlo needs at least 2 samples")
    seed = int(seed) & 0xFFFF_FFFF_FFFF_FFFF
    sizes = [MC_BLOCK] * (samples // MC_BLOCK)
    if samples % MC_BLOCK:
        sizes.append(samples % MC_BLOCK)
    arr = a.array
    tasks = list(enumerate(sizes))
    workers = min(resolve_threads(threads), len(tasks))
    if workers <= 1:
        stats = [_block_stats(arr, p, seed, b, s) for b, s in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(lambda t: _block_stats(arr, p, seed, *t), tasks))
    # Chan et al. pairwise update, applied in block order.
    n, mean, m2 = 0, 0.0, 0.0
    for nb, mb, m2b in stats:
        total = n + nb
        delta = mb - mean
        mean += delta * nb / total
        m2 += m2b + delta * delta * n * nb / total
        n = total
    raw_se = math.sqrt(m2 / (n - 1) / n)
    rooted = mean ** (1.0 / p)
    se = rooted / (p * mean) * raw_se if mean > 0.0 else 0.0
    return MonteCarloEstimate(rooted, se, n, seed, p, mean, raw_se)


def extremal_array(kind: str, m: int, N: int) -> ComplexTensor:
    """Witness arrays for the optimal multiple Khinchine constants.

    ``pair_ones``: ones on {0, 1}^m and zeros elsewhere (needs N >= 2).
    ``uniform``: every entry N^(-m/2), so the ell_2 norm is 1.
    """
    if m < 1 or N < 1:
        raise DomainError("extremal arrays need m >= 1 and N >= 1")
    if kind == "pair_ones":
        if N < 2:
            raise DomainError("the pair-ones array needs N >= 2")
        arr = np.zeros((N,) * m, dtype=np.complex128)
        arr[(slice(0, 2),) * m] = 1.0
        return ComplexTensor(arr)
    if kind == "uniform":
        return ComplexTensor(np.full((N,) * m, float(N) ** (-m / 2.0), dtype=np.complex128))
    raise DomainError(f"unknown extremal array {kind!r}; expected pair_ones or uniform")


def translate(a: Any, s: Any, M: int, *, atol: float = 1e-12) -> ComplexTensor:
    """Multiply a[n_0, ..., n_{m-1}] by exp(i (s[0][n_0] + ... + s[m-1][n_{m-1}])).

    ``s`` holds one phase vector per slot, every phase taken from Omega_M.
    """
    a = as_tensor(a)
    if len(s) != a.m:
        raise DomainError(f"need {a.m} phase vectors, got {len(s)}")
    step = 2.0 * math.pi / M
    roots = roots_of_unity(M)
    out = a.array.copy()
    for j, phases in enumerate(s):
        phases = np.asarray(phases, dtype=np.float64)
        if phases.shape != (a.shape[j],):
            raise DomainError(f"slot {j} needs {a.shape[j]} phases, got shape {phases.shape}")
        k = np.rint(phases / step)
        if np.any(np.abs(phases - k * step) > atol) or np.any((k < 0) | (k >= M)):
            raise DomainError(f"slot {j} phases are not in Omega_{M}")
        # Multipliers come from the phase index, not from cos/sin of the float.
        factors = roots[k.astype(np.int64)]
        shape = [1] * a.m
        shape[j] = a.shape[j]
        out = out * factors.reshape(shape)
    return ComplexTensor(out)
