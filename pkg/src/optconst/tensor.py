"""Coefficient arrays of multilinear forms and nested mixed sequence norms.

Slots are numbered from 0 in the Python API. A tensor of shape
``(n_0, ..., n_{m-1})`` stores ``a[i_0, ..., i_{m-1}] = T(e_{i_0}, ..., e_{i_{m-1}})``
in row-major order, slot 0 varying slowest.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import DomainError, UsageError

__all__ = [
    "ComplexTensor",
    "MixedNormSpec",
    "as_tensor",
    "conjugate_exponent",
    "evaluate",
    "mixed_norm",
    "l2_norm",
    "lp_norm",
    "parse_exponent",
]


def parse_exponent(value: Any) -> float:
    """Read an exponent, accepting the literal ``"inf"`` for infinity."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "oo"):
            return math.inf
        value = float(text)
    value = float(value)
    if math.isnan(value):
        raise DomainError("exponent is NaN")
    return value


def conjugate_exponent(p: float) -> float:
    """Hoelder conjugate p/(p-1), with 1 <-> inf."""
    if p < 1.0:
        raise DomainError(f"conjugate exponent needs p >= 1, got {p!r}")
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def lp_norm(values: np.ndarray, t: float, axis: int = -1) -> np.ndarray:
    """The (formal, for t < 1) ell_t norm along ``axis`` of ``|values|``."""
    mags = np.abs(values)
    if math.isinf(t):
        return mags.max(axis=axis) if mags.shape[axis] else mags.sum(axis=axis)
    if t == 1.0:
        return mags.sum(axis=axis)
    if t == 2.0:
        return np.sqrt((mags * mags).sum(axis=axis))
    return (mags**t).sum(axis=axis) ** (1.0 / t)


class ComplexTensor:
    """Immutable complex coefficient array of an m-linear form."""

    __slots__ = ("_array",)

    def __init__(self, data: Any):
        arr = np.array(data, dtype=np.complex128)
        if arr.ndim == 0:
            raise UsageError("a tensor needs at least one slot")
        if any(n < 1 for n in arr.shape):
            raise UsageError(f"every slot needs positive length, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DomainError("tensor entries must be finite")
        arr.setflags(write=False)
        self._array = arr

    @classmethod
    def from_flat(
        cls, shape: Sequence[int], re: Sequence[float], im: Sequence[float] | None = None
    ) -> ComplexTensor:
        shape = tuple(int(n) for n in shape)
        count = math.prod(shape)
        if len(re) != count or (im is not None and len(im) != count):
            raise UsageError(f"shape {shape} needs {count} coefficients")
        flat = np.asarray(re, dtype=np.float64).astype(np.complex128)
        if im is not None:
            flat = flat + 1j * np.asarray(im, dtype=np.float64)
        return cls(flat.reshape(shape))

    @property
    def array(self) -> np.ndarray:
        return self._array

    @property
    def shape(self) -> tuple[int, ...]:
        return self._array.shape

    @property
    def m(self) -> int:
        return self._array.ndim

    @property
    def coefficients(self) -> np.ndarray:
        return self._array.reshape(-1)

    def scaled(self, c: complex) -> ComplexTensor:
        return ComplexTensor(self._array * c)

    def to_dict(self) -> dict[str, Any]:
        flat = self.coefficients
        return {
            "shape": list(self.shape),
            "re": [float(v) for v in flat.real],
            "im": [float(v) for v in flat.imag],
        }

    def to_json(self) -> str:
        # json renders floats with repr, the shortest round-trip decimal.
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> ComplexTensor:
        try:
            return cls.from_flat(doc["shape"], doc["re"], doc.get("im"))
        except KeyError as exc:
            raise UsageError(f"tensor document lacks field {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> ComplexTensor:
        return cls.from_dict(json.loads(text))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComplexTensor):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._array, other._array))

    def __hash__(self) -> int:
        return hash((self.shape, self._array.tobytes()))

    def __repr__(self) -> str:
        return f"ComplexTensor(shape={self.shape})"


def as_tensor(obj: Any) -> ComplexTensor:
    return obj if isinstance(obj, ComplexTensor) else ComplexTensor(obj)


def evaluate(T: Any, xs: Sequence[Any]) -> complex:
    """T(x_0, ..., x_{m-1}) by successive contraction of the slots."""
    T = as_tensor(T)
    if len(xs) != T.m:
        raise UsageError(f"{T.m}-linear form needs {T.m} vectors, got {len(xs)}")
    out = T.array
    for j, x in enumerate(xs):
        x = np.asarray(x, dtype=np.complex128)
        if x.shape != (T.shape[j],):
            raise UsageError(f"slot {j} needs a vector of length {T.shape[j]}, got {x.shape}")
        out = np.tensordot(out, x, axes=([0], [0]))
    return complex(out)


@dataclass(frozen=True)
class MixedNormSpec:
    """Nesting order and exponents of a mixed sequence norm.

    ``sigma[k]`` is the slot summed at nesting level ``k`` (level 0 outermost)
    and ``t[k]`` is the exponent used at that level. ``p`` holds the domain
    exponents of the form, only needed for the derived ``lam``.
    """

    sigma: tuple[int, ...]
    t: tuple[float, ...]
    p: tuple[float, ...] | None = None
    lam: float | None = field(init=False)

    def __post_init__(self) -> None:
        sigma = tuple(int(s) for s in self.sigma)
        t = tuple(parse_exponent(v) for v in self.t)
        if sorted(sigma) != list(range(len(sigma))):
            raise UsageError(f"sigma must be a permutation of 0..{len(sigma) - 1}, got {sigma}")
        if len(t) != len(sigma):
            raise UsageError("sigma and t must have the same length")
        if any(not v > 0.0 for v in t):
            raise DomainError("nested norm exponents must be positive")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "t", t)
        lam = None
        if self.p is not None:
            p = tuple(parse_exponent(v) for v in self.p)
            if len(p) != len(sigma):
                raise UsageError("p must have one exponent per slot")
            if any(v < 1.0 for v in p):
                raise DomainError("domain exponents must lie in [1, inf]")
            object.__setattr__(self, "p", p)
            s = sum(1.0 / v for v in p)
            if s < 1.0:
                lam = 1.0 / (1.0 - s)
        object.__setattr__(self, "lam", lam)

    @classmethod
    def identity(cls, t: Iterable[float], p: Iterable[float] | None = None) -> MixedNormSpec:
        t = tuple(t)
        return cls(tuple(range(len(t))), t, None if p is None else tuple(p))

    @property
    def m(self) -> int:
        return len(self.sigma)


def mixed_norm(T: Any, spec: MixedNormSpec) -> float:
    """Nested norm: innermost over slot sigma[-1] with t[-1], outward to sigma[0]."""
    T = as_tensor(T)
    if spec.m != T.m:
        raise UsageError(f"spec is for {spec.m} slots, tensor has {T.m}")
    arr = np.abs(np.transpose(T.array, spec.sigma))
    for t in reversed(spec.t):
        arr = lp_norm(arr, t, axis=-1)
    return float(arr)


def l2_norm(T: Any) -> float:
    T = as_tensor(T)
    mags = np.abs(T.coefficients)
    scale = float(mags.max())
    if scale == 0.0:
        return 0.0
    return scale * math.sqrt(math.fsum(((mags / scale) ** 2).tolist()))
