"""Entrywise vector algebra and the scalar Cauchy-Schwarz gap functions.

Vectors are plain 1-D ``numpy`` float arrays.  :func:`as_vector` is the single
validation gate: every public function funnels its arguments through it, so
empty or non-finite inputs are rejected in one place.

The tolerance policy used by every inequality report also lives here.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    ExponentOutOfRange,
    InvalidInput,
    NegativeBaseNonIntegerExponent,
    NegativeInput,
)

__all__ = [
    "Tolerance",
    "DEFAULT_TOLERANCE",
    "as_vector",
    "hadamard",
    "hadamard_power",
    "inner",
    "norm2",
    "norm_product",
    "f_func",
    "g_func",
    "f_x",
    "lagrange_rhs",
    "four_exp_margin",
    "is_integer_exponent",
]


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative slack used to decide whether a margin is acceptable.

    A margin passes when ``margin >= -(atol + rtol * max(|lhs|, |rhs|, 1))``.
    """

    atol: float = 1e-12
    rtol: float = 1e-9

    def slack(self, lhs, rhs):
        return self.atol + self.rtol * max(abs(lhs), abs(rhs), 1.0)

    def accepts(self, lhs, rhs):
        return (rhs - lhs) >= -self.slack(lhs, rhs)


DEFAULT_TOLERANCE = Tolerance()


def as_vector(v, name="v"):
    """Return ``v`` as a finite, non-empty 1-D float array."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise InvalidInput(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidInput(f"{name} must have at least one entry")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} has non-finite entries")
    return arr


def _pair(a, b, names=("a", "b")):
    a = as_vector(a, names[0])
    b = as_vector(b, names[1])
    if a.shape != b.shape:
        raise DimensionMismatch(
            f"{names[0]} has dim {a.size} but {names[1]} has dim {b.size}"
        )
    return a, b


def is_integer_exponent(p):
    return float(p).is_integer()


def hadamard(a, b):
    """Entrywise product ``a ⊙ b``."""
    a, b = _pair(a, b)
    return a * b


def hadamard_power(v, p):
    """Entrywise power ``v^p``.

    Non-integer exponents are only defined for non-negative vectors; we refuse
    negative entries instead of silently taking absolute values.
    """
    v = as_vector(v)
    if is_integer_exponent(p):
        out = np.power(v, int(p))
    else:
        if np.any(v < 0):
            raise NegativeBaseNonIntegerExponent(
                f"cannot raise negative entries to the non-integer power {p}"
            )
        out = np.power(v, float(p))
    if not np.all(np.isfinite(out)):
        raise InvalidInput(f"v^{p} has non-finite entries")
    return out


def inner(a, b):
    a, b = _pair(a, b)
    return float(np.dot(a, b))


def norm2(v):
    v = as_vector(v)
    return math.sqrt(float(np.dot(v, v)))


def norm_product(a, b):
    """``‖a‖·‖b‖`` computed as ``sqrt(⟨a,a⟩⟨b,b⟩)``.

    Taking one square root keeps ``norm_product(v, v) == ⟨v,v⟩`` exact (barring
    underflow of the product), so the equality cases of the inequalities give
    margins of exactly zero.
    """
    a, b = _pair(a, b)
    return math.sqrt(float(np.dot(a, a)) * float(np.dot(b, b)))


def f_func(v, w):
    """``‖v‖‖w‖ − ⟨v,w⟩`` (no absolute value on the inner product)."""
    v, w = _pair(v, w, ("v", "w"))
    return norm_product(v, w) - inner(v, w)


def g_func(v, w):
    """Area of the parallelogram spanned by ``v`` and ``w`` (the Grammian)."""
    v, w = _pair(v, w, ("v", "w"))
    nn = norm_product(v, w)
    ip = inner(v, w)
    return math.sqrt(max(nn * nn - ip * ip, 0.0))


def f_x(x, v, w):
    """``‖v‖^x ‖w‖^x − |⟨v,w⟩|^x`` for real ``x >= 1``."""
    if not x >= 1:
        raise ExponentOutOfRange(f"f_x needs x >= 1, got {x}")
    v, w = _pair(v, w, ("v", "w"))
    return norm_product(v, w) ** x - abs(inner(v, w)) ** x


def lagrange_rhs(v, w):
    """Right side of Lagrange's identity, ``½ Σ_i Σ_{j≠i} (v_i w_j − v_j w_i)²``."""
    v, w = _pair(v, w, ("v", "w"))
    vw = np.outer(v, w)
    cross = vw - vw.T
    # diagonal of ``cross`` is identically zero, so the j != i restriction is free
    return 0.5 * float(np.sum(cross * cross))


def four_exp_margin(a, b, c, d, x):
    """``a^x + b^x − c^x − d^x``; non-negative under the four-exponential lemma's hypotheses."""
    if min(a, b, c, d) < 0:
        raise NegativeInput("a, b, c, d must all be non-negative")
    if not x >= 1:
        raise ExponentOutOfRange(f"x must be >= 1, got {x}")
    return a**x + b**x - c**x - d**x
