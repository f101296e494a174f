"""Small named tensors used by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

import numpy as np

from .tensor import ComplexTensor


def littlewood_matrix() -> ComplexTensor:
    """T(x, y) = x0 y0 + x0 y1 + x1 y0 - x1 y1."""
    return ComplexTensor(np.array([[1.0, 1.0], [1.0, -1.0]]))


def identity_tensor(n: int = 3) -> ComplexTensor:
    """T(x, y) = sum_i x_i y_i on n coordinates."""
    return ComplexTensor(np.eye(n))


NAMED = {"littlewood2": littlewood_matrix, "identity3": identity_tensor}
