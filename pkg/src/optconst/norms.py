"""Certified bounds for sup-norms of complex multilinear forms.

``grid_norm`` and ``mixed_grid_norm`` are exact maxima over finite
roots-of-unity grids. Combined with the inradius of the M-gon they sandwich
the true sup-norm over products of unit balls (``norm_bounds``).
``ascent_lower_bound`` is a heuristic that only ever supplies lower bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from ._grid import GridWalk
from .errors import DomainError, UnsupportedModeError, UsageError
from .tensor import as_tensor, conjugate_exponent, lp_norm, parse_exponent
from .torus import GridSpec, apothem

__all__ = [
    "NormBounds",
    "grid_norm",
    "mixed_grid_norm",
    "norm_bounds",
    "certified_bounds",
    "ascent_lower_bound",
]


@dataclass(frozen=True)
class NormBounds:
    lower: float
    upper: float
    method: str
    grid: GridSpec
    A: tuple[int, ...]


def _domain_exponents(p: Iterable[Any] | None, m: int) -> tuple[float, ...]:
    if p is None:
        return (math.inf,) * m
    p = tuple(parse_exponent(v) for v in p)
    if len(p) != m:
        raise UsageError(f"need {m} domain exponents, got {len(p)}")
    if any(v < 1.0 for v in p):
        raise DomainError("domain exponents must lie in [1, inf]")
    return p


def grid_norm(
    T: Any,
    M: int,
    *,
    budget: int | None = None,
    threads: int = 0,
    reduce_phases: bool = True,
) -> float:
    """max |T(x_0, ..., x_{m-1})| over x_j in T_M^{n_j}, by exhaustive enumeration.

    Rotating one slot by a root of unity does not change |T|, so by default
    each slot's first coordinate is pinned to 1; ``reduce_phases=False``
    walks the full grid.
    """
    T = as_tensor(T)
    if M < 2:
        raise DomainError(f"grid norm needs M >= 2, got {M}")
    walk = GridWalk(
        T.array, range(T.m), M, reduce_phases=reduce_phases, budget=budget
    )
    return max(walk.map_leaves(lambda v: float(np.abs(v).max()), threads))


def mixed_grid_norm(
    T: Any,
    A: Iterable[int],
    M: int,
    p: Sequence[Any] | None = None,
    *,
    budget: int | None = None,
    threads: int = 0,
    reduce_phases: bool = True,
) -> float:
    """||T||_{A,M}: grid vectors on the slots in ``A``, unit ell_p balls elsewhere.

    At most one slot may lie outside ``A``. For each grid assignment that slot
    sees a linear functional, whose sup over the ell_p ball is the dual
    ell_{p*} norm of its coefficients.
    """
    T = as_tensor(T)
    A = tuple(sorted(set(int(a) for a in A)))
    if not A:
        raise UsageError("slot subset A must be non-empty")
    if A[0] < 0 or A[-1] >= T.m:
        raise UsageError(f"slot subset {A} out of range for a {T.m}-linear form")
    p = _domain_exponents(p, T.m)
    if any(not math.isinf(p[j]) for j in A):
        raise DomainError("slots in A must carry the exponent inf")
    if M < 2:
        raise DomainError(f"grid norm needs M >= 2, got {M}")
    rest = [j for j in range(T.m) if j not in A]
    if len(rest) >= 2:
        raise UnsupportedModeError(
            "exact mixed grid norms allow at most one slot outside A; "
            "use ascent_lower_bound for a heuristic lower bound"
        )
    if not rest:
        return grid_norm(T, M, budget=budget, threads=threads, reduce_phases=reduce_phases)
    q = conjugate_exponent(p[rest[0]])
    walk = GridWalk(
        T.array, A, M, free_slot=rest[0], reduce_phases=reduce_phases, budget=budget
    )
    return max(walk.map_leaves(lambda v: float(lp_norm(v, q, axis=1).max()), threads))


def norm_bounds(
    T: Any,
    A: Iterable[int],
    M: int,
    p: Sequence[Any] | None = None,
    *,
    budget: int | None = None,
    threads: int = 0,
) -> NormBounds:
    """||T||_{A,M} <= ||T|| <= r_M^{-|A|} ||T||_{A,M}."""
    if M < 3:
        raise DomainError(f"the norm sandwich needs M >= 3, got {M}")
    T = as_tensor(T)
    A = tuple(sorted(set(int(a) for a in A)))
    lower = mixed_grid_norm(T, A, M, p, budget=budget, threads=threads)
    upper = lower * apothem(M) ** (-len(A))
    method = "grid" if len(A) == T.m else "mixed-grid"
    return NormBounds(lower, upper, method, GridSpec(T.m, max(T.shape), M), A)


def certified_bounds(
    T: Any,
    p: Sequence[Any] | None,
    M: int,
    *,
    budget: int | None = None,
    threads: int = 0,
) -> NormBounds:
    """Sandwich for ||T|| over the product of ell_{p_j} balls.

    The free slot is the unique slot with finite exponent if there is one,
    otherwise the longest slot; all other slots go on the grid. Linear
    forms are handled exactly by the dual norm.
    """
    T = as_tensor(T)
    p = _domain_exponents(p, T.m)
    finite = [j for j in range(T.m) if not math.isinf(p[j])]
    if len(finite) >= 2:
        raise UnsupportedModeError(
            "certified bounds need all but at most one slot with exponent inf"
        )
    if T.m == 1:
        value = float(lp_norm(T.array, conjugate_exponent(p[0])))
        return NormBounds(value, value, "dual-norm", GridSpec(1, T.shape[0], max(M, 2)), ())
    free = finite[0] if finite else max(range(T.m), key=lambda j: (T.shape[j], -j))
    A = tuple(j for j in range(T.m) if j != free)
    return norm_bounds(T, A, M, p, budget=budget, threads=threads)


def _best_response(c: np.ndarray, p: float) -> tuple[np.ndarray, float]:
    """Unit vector of ell_p maximising |<c, x>| and the attained value."""
    mags = np.abs(c)
    safe = np.where(mags > 0, mags, 1.0)
    phase = np.where(mags > 0, (c.real / safe) - 1j * (c.imag / safe), 1.0)
    if math.isinf(p):
        return phase, float(mags.sum())
    if p == 1.0:
        x = np.zeros_like(c)
        k = int(np.argmax(mags))
        x[k] = phase[k]
        return x, float(mags[k])
    q = conjugate_exponent(p)
    norm = float((mags**q).sum() ** (1.0 / q))
    if norm == 0.0:
        x = np.zeros_like(c)
        x[0] = 1.0
        return x, 0.0
    return phase * (mags / norm) ** (q - 1.0), norm


def ascent_lower_bound(
    T: Any,
    p: Sequence[Any] | None = None,
    restarts: int = 8,
    seed: int = 0,
    *,
    max_sweeps: int = 500,
) -> float:
    """Lower bound on ||T|| by alternating maximisation over one slot at a time.

    Each slot is replaced by the maximiser of the linear functional left
    after fixing all other slots, so the objective never decreases. Starting
    points are random unit-modulus phases (scaled into the ell_p ball) drawn
    from a generator seeded with ``seed``.
    """
    T = as_tensor(T)
    if restarts < 1:
        raise DomainError("restarts must be >= 1")
    p = _domain_exponents(p, T.m)
    rng = np.random.default_rng(seed & 0xFFFF_FFFF_FFFF_FFFF)
    arr = T.array
    best = 0.0
    for _ in range(restarts):
        xs = []
        for j, n in enumerate(arr.shape):
            x = np.exp(2j * math.pi * rng.random(n))
            if not math.isinf(p[j]):
                x = x / n ** (1.0 / p[j])
            xs.append(x)
        value = 0.0
        for _ in range(max_sweeps):
            before = value
            for j in range(T.m):
                c = arr
                for k in reversed(range(T.m)):
                    if k != j:
                        c = np.tensordot(c, xs[k], axes=([k], [0]))
                xs[j], value = _best_response(c, p[j])
            if value - before <= 1e-15 * max(value, 1.0):
                break
        best = max(best, value)
    return best
