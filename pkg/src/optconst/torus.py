"""Roots-of-unity geometry: vertex sets, the inscribed radius of the regular
M-gon, and the Minkowski gauge of a product of M-gons."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError

__all__ = [
    "GridSpec",
    "roots_of_unity",
    "phase_set",
    "apothem",
    "gauge",
    "membership_oracle",
]


@dataclass(frozen=True)
class GridSpec:
    """The lattice (T_M^N)^m: m slots, vectors of length N, M-th roots of unity."""

    m: int
    N: int
    M: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.N < 1:
            raise DomainError(f"grid needs m >= 1 and N >= 1, got m={self.m}, N={self.N}")
        if self.M < 2:
            raise DomainError(f"grid needs M >= 2, got {self.M}")

    @property
    def cardinality(self) -> int:
        return self.M ** (self.N * self.m)

    def check_budget(self, budget: int) -> None:
        if self.cardinality > budget:
            raise ResourceLimitError(self.cardinality, budget)


def roots_of_unity(M: int) -> np.ndarray:
    """exp(2 pi i j / M) for j = 0..M-1, with exact values on the axes."""
    if M < 2:
        raise DomainError(f"roots of unity need M >= 2, got {M}")
    out = np.empty(M, dtype=np.complex128)
    for j in range(M):
        # Quarter turns are set exactly so that e.g. T_4 = {1, i, -1, -i}.
        if (4 * j) % M == 0:
            out[j] = (1, 1j, -1, -1j)[(4 * j // M) % 4]
        else:
            out[j] = cmath.exp(2j * math.pi * j / M)
    return out


def phase_set(M: int) -> np.ndarray:
    """Omega_M = {2 pi j / M : j = 0..M-1}."""
    if M < 2:
        raise DomainError(f"phase set needs M >= 2, got {M}")
    return 2.0 * math.pi * np.arange(M) / M


def apothem(M: int) -> float:
    """Inradius r_M of the regular M-gon inscribed in the unit circle."""
    if M < 2:
        raise DomainError(f"apothem needs M >= 2, got {M}")
    if M == 2:
        return 0.0
    return math.sqrt(0.5 + 0.5 * math.cos(2.0 * math.pi / M))


def _edge_normals(M: int) -> np.ndarray:
    return np.exp(-1j * (2 * np.arange(M) + 1) * math.pi / M)


def gauge(z: Sequence[complex] | complex, M: int) -> float:
    """Minkowski functional of D_M^N at ``z``.

    Each coordinate's gauge is its largest projection on an outward edge
    normal of the M-gon divided by cos(pi/M); the vector gauge is the max.
    """
    if M < 3:
        raise DomainError(f"the M-gon has empty interior for M={M}; gauge needs M >= 3")
    zs = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if not np.all(np.isfinite(zs)):
        raise DomainError("gauge argument must be finite")
    if zs.size == 0:
        return 0.0
    proj = (zs[:, None] * _edge_normals(M)[None, :]).real.max(axis=1)
    return float(max(proj.max(), 0.0) / math.cos(math.pi / M))


def membership_oracle(z: complex, t: float, M: int, *, slack: float = 1e-12) -> bool:
    """Whether ``z`` lies in the scaled polygon t * D_M.

    Independent of :func:`gauge`: walks the polygon's edges counter-clockwise
    and requires ``z`` to be on the left of (or on) every edge, using the
    cross product of the edge with the vector from its start to ``z``.
    """
    if M < 3:
        raise DomainError(f"polygon membership needs M >= 3, got {M}")
    if not t > 0.0:
        raise DomainError("scale t must be positive")
    z = complex(z)
    verts = [t * cmath.exp(2j * math.pi * k / M) for k in range(M)]
    for k in range(M):
        a, b = verts[k], verts[(k + 1) % M]
        ex, ey = b.real - a.real, b.imag - a.imag
        wx, wy = z.real - a.real, z.imag - a.imag
        if ex * wy - ey * wx < -slack * t * t:
            return False
    return True
