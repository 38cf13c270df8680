"""Weak compositions, multinomials, and the multinomial sum-of-squares identity

    ‖v‖^{2k}‖w‖^{2k} − ⟨v,w⟩^{2k}
        = ½ Σ_{a,b} C(k;a) C(k;b) (Π v_i^{a_i} w_i^{b_i} − Π v_i^{b_i} w_i^{a_i})²

where ``a`` and ``b`` range over all weak compositions of ``k`` into ``n``
parts.  Both sides can be evaluated in floating point or exactly; exact mode
uses :class:`fractions.Fraction` inputs and integer arithmetic internally.
"""

import math
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, InvalidInput, SizeGuardExceeded, SumMismatch
from .report import make_report
from .vectors import as_vector, hadamard_power, inner, norm_product

__all__ = [
    "MAX_PAIRS",
    "compositions",
    "multinomial",
    "composition_pairs",
    "as_rational_vector",
    "sos_lhs",
    "sos_rhs",
    "verify_sos_identity",
    "chain_check",
]

MAX_PAIRS = 10**7


def compositions(n, k):
    """All weak compositions of ``k`` into ``n`` parts, in lexicographic order."""
    if n < 1 or k < 0:
        raise InvalidInput(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if n == 1:
        return [(k,)]
    return [(first,) + rest for first in range(k + 1) for rest in compositions(n - 1, k - first)]


def multinomial(k, parts):
    """``k! / Π a_i!`` as an exact integer."""
    if sum(parts) != k or any(a < 0 for a in parts):
        raise SumMismatch(f"parts {tuple(parts)} do not form a composition of {k}")
    result, remaining = 1, k
    for a in parts:
        result *= math.comb(remaining, a)
        remaining -= a
    return result


def _check_pair_count(n, k):
    count = math.comb(n + k - 1, n - 1) ** 2
    if count > MAX_PAIRS:
        raise SizeGuardExceeded(f"{count} composition pairs exceed the guard {MAX_PAIRS}")
    return count


def composition_pairs(n, k):
    """Yield ``(a, b, weight)`` for every term of the identity's double sum."""
    _check_pair_count(n, k)
    comps = compositions(n, k)
    weights = [multinomial(k, a) for a in comps]
    for a, wa in zip(comps, weights):
        for b, wb in zip(comps, weights):
            yield a, b, wa * wb


def _to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInput("exact mode needs finite entries")
    return Fraction(x)


def as_rational_vector(v):
    """Convert entries (ints, Fractions, decimal strings, floats) to Fractions."""
    out = [_to_fraction(x) for x in v]
    if not out:
        raise InvalidInput("vector must have at least one entry")
    return out


def _integer_scaled(v):
    # v = ints / denom with a common denominator
    denom = math.lcm(*(x.denominator for x in v))
    return [int(x * denom) for x in v], denom


def _exact_pair(v, w):
    v, w = as_rational_vector(v), as_rational_vector(w)
    if len(v) != len(w):
        raise DimensionMismatch(f"v has dim {len(v)} but w has dim {len(w)}")
    return v, w


def _float_pair(v, w):
    v, w = as_vector(v, "v"), as_vector(w, "w")
    if v.shape != w.shape:
        raise DimensionMismatch(f"v has dim {v.size} but w has dim {w.size}")
    return v, w


def _check_k(k):
    if int(k) != k or k < 1:
        raise InvalidInput(f"k must be a positive integer, got {k}")
    return int(k)


def sos_lhs(v, w, k, exact=False):
    """``‖v‖^{2k}‖w‖^{2k} − ⟨v,w⟩^{2k}``; a Fraction in exact mode, else a float."""
    k = _check_k(k)
    if exact:
        v, w = _exact_pair(v, w)
        (vi, dv), (wi, dw) = _integer_scaled(v), _integer_scaled(w)
        vv = sum(x * x for x in vi)
        ww = sum(x * x for x in wi)
        vw = sum(x * y for x, y in zip(vi, wi))
        return Fraction(vv**k * ww**k - vw ** (2 * k), dv ** (2 * k) * dw ** (2 * k))
    v, w = _float_pair(v, w)
    return inner(v, v) ** k * inner(w, w) ** k - inner(v, w) ** (2 * k)


def _monomials(x, comps):
    return [math.prod(xi**ai for xi, ai in zip(x, a)) for a in comps]


def sos_rhs(v, w, k, exact=False):
    """The weighted double sum of squares; a Fraction in exact mode, else a float."""
    k = _check_k(k)
    if exact:
        v, w = _exact_pair(v, w)
    else:
        v, w = _float_pair(v, w)
    n = len(v)
    _check_pair_count(n, k)
    comps = compositions(n, k)
    weights = [multinomial(k, a) for a in comps]

    if exact:
        (vi, dv), (wi, dw) = _integer_scaled(v), _integer_scaled(w)
        V, W = _monomials(vi, comps), _monomials(wi, comps)
        total = 0
        for ia, wa in enumerate(weights):
            for ib, wb in enumerate(weights):
                diff = V[ia] * W[ib] - V[ib] * W[ia]
                total += wa * wb * diff * diff
        return Fraction(total, 2 * dv ** (2 * k) * dw ** (2 * k))

    V = np.array(_monomials([float(x) for x in v], comps))
    W = np.array(_monomials([float(x) for x in w], comps))
    mixed = np.outer(V, W)
    diff = mixed - mixed.T
    weight = np.outer(np.array(weights, dtype=float), np.array(weights, dtype=float))
    return 0.5 * float(np.sum(weight * diff * diff))


def verify_sos_identity(v, w, k):
    """Exact ``lhs − rhs`` of the identity; zero for every rational input."""
    return sos_lhs(v, w, k, exact=True) - sos_rhs(v, w, k, exact=True)


def chain_check(v, w, k, tol=None):
    """Both links of the chain

        ‖v^{2k}‖‖w^{2k}‖ − ⟨v^{2k},w^{2k}⟩ ≤ ‖v^k‖²‖w^k‖² − ⟨v^k,w^k⟩² ≤ ‖v‖^{2k}‖w‖^{2k} − ⟨v,w⟩^{2k}

    returned as ``(left_report, right_report)``.
    """
    k = _check_k(k)
    v, w = _float_pair(v, w)
    v2k, w2k = hadamard_power(v, 2 * k), hadamard_power(w, 2 * k)
    vk, wk = hadamard_power(v, k), hadamard_power(w, k)
    left = norm_product(v2k, w2k) - inner(v2k, w2k)
    middle = inner(vk, vk) * inner(wk, wk) - inner(vk, wk) ** 2
    right = sos_lhs(v, w, k)
    inputs = {"k": k, "v": v, "w": w}
    return (
        make_report("chain-left", left, middle, inputs, tol),
        make_report("chain-right", middle, right, inputs, tol),
    )
