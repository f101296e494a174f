"""Mixed-radix walker over roots-of-unity grids.

The walker contracts a coefficient array with every assignment of M-th roots
of unity to a chosen list of "grid" slots, optionally leaving one "free" slot
uncontracted. Slots are contracted one at a time against the table of all
phase vectors of that slot, so the work per grid point is proportional to
the length of the last grid slot rather than to the full tensor size.

Assignments are produced in lexicographic order (first grid slot slowest,
within a slot the last coordinate fastest), in fixed-size blocks whose
boundaries depend only on the problem and ``CHUNK``. Workers receive whole
top-level blocks and the caller reduces per-block results in block order,
so outputs are bit-identical for any thread count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import ResourceLimitError
from .torus import roots_of_unity

CHUNK = 1 << 17
DEFAULT_BUDGET = 10**8
BUDGET_ENV = "OPTCONST_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        return max(1, int(float(raw)))
    return DEFAULT_BUDGET


def resolve_threads(threads: int) -> int:
    if threads and threads > 0:
        return threads
    return os.cpu_count() or 1


def phase_table(M: int, n: int, *, fix_first: bool = False) -> np.ndarray:
    """All vectors of T_M^n as rows, lexicographic in the phase indices.

    With ``fix_first`` the first coordinate is pinned to 1, which keeps one
    representative per orbit of the rotation z -> w z, w in T_M.
    """
    roots = roots_of_unity(M)
    free = n - 1 if fix_first else n
    if free == 0:
        idx = np.zeros((1, 0), dtype=np.int64)
    else:
        idx = np.indices((M,) * free).reshape(free, -1).T
    if fix_first:
        idx = np.hstack([np.zeros((idx.shape[0], 1), dtype=np.int64), idx])
    return roots[idx]


def phase_indices(M: int, n: int) -> np.ndarray:
    """Integer phase digits of every vector in T_M^n, same order as ``phase_table``."""
    return np.indices((M,) * n).reshape(n, -1).T


def _contract(partial: np.ndarray, table: np.ndarray) -> np.ndarray:
    # partial: (B, n, *rest); table: (R, n) -> (B * R, *rest)
    B, n = partial.shape[:2]
    rest = partial.shape[2:]
    R = table.shape[0]
    bcast = (1, R) + (1,) * len(rest)
    out = partial[:, None, 0] * table[:, 0].reshape(bcast)
    for k in range(1, n):
        out += partial[:, None, k] * table[:, k].reshape(bcast)
    return out.reshape((B * R,) + rest)


class GridWalk:
    """One enumeration problem: which slots run over the grid and which stays free."""

    def __init__(
        self,
        array: np.ndarray,
        grid_slots: Sequence[int],
        M: int,
        *,
        free_slot: int | None = None,
        reduce_phases: bool = False,
        budget: int | None = None,
    ):
        grid_slots = list(grid_slots)
        order = grid_slots + ([free_slot] if free_slot is not None else [])
        if sorted(order) != list(range(array.ndim)):
            raise ValueError("grid and free slots must partition the tensor slots")
        self.array = np.ascontiguousarray(np.transpose(array, order), dtype=np.complex128)
        self.M = M
        self.tables = [
            phase_table(M, array.shape[s], fix_first=reduce_phases) for s in grid_slots
        ]
        self.points = math.prod(t.shape[0] for t in self.tables)
        budget = default_budget() if budget is None else budget
        if self.points > budget:
            raise ResourceLimitError(self.points, budget)

    def _descend(self, partial: np.ndarray, level: int) -> Iterator[np.ndarray]:
        if level == len(self.tables):
            yield partial
            return
        table = self.tables[level]
        B = partial.shape[0]
        rest = math.prod(partial.shape[2:])
        rows = max(1, CHUNK // max(1, B * rest))
        for start in range(0, table.shape[0], rows):
            yield from self._descend(_contract(partial, table[start : start + rows]), level + 1)

    def _top_blocks(self) -> list[tuple[int, int]]:
        if not self.tables:
            return [(0, 1)]
        rest = math.prod(self.array.shape[1:])
        rows = max(1, CHUNK // max(1, rest))
        n0 = self.tables[0].shape[0]
        return [(s, min(s + rows, n0)) for s in range(0, n0, rows)]

    def _run_block(self, block: tuple[int, int], leaf: Callable[[np.ndarray], float]) -> list[float]:
        base = self.array[None]
        if not self.tables:
            return [leaf(base)]
        first = _contract(base, self.tables[0][block[0] : block[1]])
        return [leaf(x) for x in self._descend(first, 1)]

    def map_leaves(self, leaf: Callable[[np.ndarray], float], threads: int = 0) -> list[float]:
        """Apply ``leaf`` to every block of contracted values, in enumeration order.

        Each block is an array of shape ``(B,)`` (no free slot) or
        ``(B, n_free)``.
        """
        blocks = self._top_blocks()
        workers = min(resolve_threads(threads), len(blocks))
        if workers <= 1:
            chunks = [self._run_block(b, leaf) for b in blocks]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                chunks = list(pool.map(lambda b: self._run_block(b, leaf), blocks))
        return [v for chunk in chunks for v in chunk]

    def iter_values(self) -> Iterator[np.ndarray]:
        """Sequentially yield the contracted blocks themselves (single-threaded)."""
        base = self.array[None]
        if not self.tables:
            yield base
            return
        for block in self._top_blocks():
            first = _contract(base, self.tables[0][block[0] : block[1]])
            yield from self._descend(first, 1)
