"""One checker per inequality, each returning an :class:`InequalityReport`.

Every checker evaluates both sides directly from its inputs and hands them to
:func:`~cs_forge.report.make_report`, which applies the shared tolerance
policy.  :data:`CHECKERS` maps the public checker names (as used on the
command line) to the callables.
"""

import itertools
import math
from dataclasses import dataclass
from functools import reduce
from typing import Callable, NamedTuple

import numpy as np

from .errors import (
    DimensionMismatch,
    ExponentOutOfRange,
    NegativeInput,
    NonPositiveEntries,
    NotAProjection,
    NotSquare,
    UnknownChecker,
)
from .linalg import (
    as_matrix,
    diag_vec,
    frobenius_inner,
    sym_eigenvalues,
    singular_values,
    trace_norm,
    vectorize,
)
from .multilinear import Permutation, matrix_view, product_tensor, realign, twirl
from .report import InequalityReport, make_report
from .sos import chain_check
from .vectors import (
    as_vector,
    f_x,
    hadamard,
    hadamard_power,
    inner,
    is_integer_exponent,
    norm_product,
)

__all__ = [
    "InequalityReport",
    "check_cs_original",
    "check_matrix_gen",
    "check_eig_gen",
    "check_svd_gen",
    "check_fx_projection",
    "check_fp_diag",
    "check_equal_tensors",
    "check_generalized",
    "generalized_lhs",
    "generalized_closed_form_p2",
    "TripartiteBlocks",
    "tripartite_lhs_explicit",
    "check_tripartite",
    "TRIPARTITE_SIGMA",
    "conjecture_sides",
    "check_conjecture",
    "Checker",
    "CHECKERS",
    "get_checker",
]

PROJECTION_ATOL = 1e-10
TRIPARTITE_SIGMA = Permutation((6, 5, 3, 4, 2, 1))


def _vec_pair(v, w, names=("v", "w")):
    v, w = as_vector(v, names[0]), as_vector(w, names[1])
    if v.shape != w.shape:
        raise DimensionMismatch(f"{names[0]} has dim {v.size} but {names[1]} has dim {w.size}")
    return v, w


def _square_pair(X, Y):
    X, Y = as_matrix(X, "X"), as_matrix(Y, "Y")
    if X.shape[0] != X.shape[1]:
        raise NotSquare(f"X must be square, got {X.shape}")
    if X.shape != Y.shape:
        raise DimensionMismatch(f"X has shape {X.shape} but Y has shape {Y.shape}")
    return X, Y


def _cs_gap(a, b):
    """``‖a‖‖b‖ − ⟨a,b⟩`` in the exact-on-equality arithmetic."""
    return norm_product(a, b) - inner(a, b)


# -- two-vector and matrix forms ----------------------------------------------


def check_cs_original(v, w, tol=None):
    """``‖v²‖‖w²‖ − ⟨v²,w²⟩ ≤ ‖v‖²‖w‖² − ⟨v,w⟩²``."""
    v, w = _vec_pair(v, w)
    lhs = _cs_gap(v * v, w * w)
    rhs = inner(v, v) * inner(w, w) - inner(v, w) ** 2
    return make_report("cs-original", lhs, rhs, {"v": v, "w": w}, tol)


def check_matrix_gen(X, Y, tol=None):
    """Diagonal vectors against Frobenius quantities: ``‖x‖‖y‖ − ⟨x,y⟩ ≤ ‖X‖_F‖Y‖_F − ⟨X,Y⟩_F``."""
    X, Y = _square_pair(X, Y)
    x, y = diag_vec(X), diag_vec(Y)
    lhs = _cs_gap(x, y)
    rhs = norm_product(vectorize(X), vectorize(Y)) - frobenius_inner(X, Y)
    return make_report("matrix-gen", lhs, rhs, {"X": X, "Y": Y}, tol)


def check_eig_gen(X, Y, tol=None):
    """Diagonals against eigenvalues sorted in opposite order.

    ``λ_X`` is taken descending and ``λ_Y`` ascending.
    """
    X, Y = _square_pair(X, Y)
    lam_x = sym_eigenvalues(X, "descending")
    lam_y = sym_eigenvalues(Y, "ascending")
    x, y = diag_vec(X), diag_vec(Y)
    lhs = _cs_gap(x, y)
    rhs = _cs_gap(lam_x.values, lam_y.values)
    return make_report("eig-gen", lhs, rhs, {"X": X, "Y": Y}, tol)


def check_svd_gen(X, Y, tol=None):
    """``‖x‖‖y‖ − ⟨σ_X,σ_Y⟩ ≤ ‖σ_X‖‖σ_Y‖ − ⟨x,y⟩``, both spectra descending."""
    X, Y = _square_pair(X, Y)
    sx, sy = singular_values(X).values, singular_values(Y).values
    x, y = diag_vec(X), diag_vec(Y)
    lhs = norm_product(x, y) - inner(sx, sy)
    rhs = norm_product(sx, sy) - inner(x, y)
    return make_report("svd-gen", lhs, rhs, {"X": X, "Y": Y}, tol)


def _check_projection(P, n):
    P = as_matrix(P, "P")
    if P.shape != (n, n):
        raise DimensionMismatch(f"P must be {n}x{n}, got {P.shape}")
    sym_err = float(np.linalg.norm(P - P.T))
    idem_err = float(np.linalg.norm(P @ P - P))
    if sym_err > PROJECTION_ATOL or idem_err > PROJECTION_ATOL:
        raise NotAProjection(
            f"P is not an orthogonal projection (‖P−Pᵀ‖_F={sym_err:.3g}, ‖P²−P‖_F={idem_err:.3g})"
        )
    return P


def check_fx_projection(x, v, w, P, tol=None):
    """``f_x(Pv, Pw) ≤ f_x(v, w)`` for an orthogonal projection ``P``."""
    if not x >= 1:
        raise ExponentOutOfRange(f"x must be >= 1, got {x}")
    v, w = _vec_pair(v, w)
    P = _check_projection(P, v.size)
    lhs = f_x(x, P @ v, P @ w)
    rhs = f_x(x, v, w)
    return make_report("fx-projection", lhs, rhs, {"x": x, "v": v, "w": w, "P": P}, tol)


def check_fp_diag(x, xs, ys, tol=None):
    """Hadamard products of ``p`` pairs against the product of per-pair terms."""
    if not x >= 1:
        raise ExponentOutOfRange(f"x must be >= 1, got {x}")
    xs = [as_vector(a, "xs") for a in xs]
    ys = [as_vector(b, "ys") for b in ys]
    if not xs or len(xs) != len(ys):
        raise DimensionMismatch(f"need p >= 1 pairs, got {len(xs)} and {len(ys)} vectors")
    n = xs[0].size
    if any(a.size != n for a in xs + ys):
        raise DimensionMismatch("all vectors must have the same dimension")
    hx = reduce(hadamard, xs)
    hy = reduce(hadamard, ys)
    lhs = f_x(x, hx, hy)
    rhs = math.prod(norm_product(a, b) ** x for a, b in zip(xs, ys)) - math.prod(
        abs(inner(a, b)) ** x for a, b in zip(xs, ys)
    )
    return make_report("fp-diag", lhs, rhs, {"x": x, "xs": np.array(xs), "ys": np.array(ys)}, tol)


def check_equal_tensors(p, x, y, tol=None):
    """``‖x^p‖‖y^p‖ − |⟨x^p,y^p⟩| ≤ ‖x‖^p‖y‖^p − |⟨x,y⟩|^p`` for integer ``p >= 1``."""
    if not (is_integer_exponent(p) and p >= 1):
        raise ExponentOutOfRange(f"p must be a positive integer, got {p}")
    p = int(p)
    x, y = _vec_pair(x, y, ("x", "y"))
    xp, yp = hadamard_power(x, p), hadamard_power(y, p)
    lhs = norm_product(xp, yp) - abs(inner(xp, yp))
    rhs = norm_product(x, y) ** p - abs(inner(x, y)) ** p
    return make_report("equal-tensors", lhs, rhs, {"p": p, "x": x, "y": y}, tol)


# -- tensor forms ------------------------------------------------------------


def _as_permutation(sigma, length):
    if isinstance(sigma, Permutation):
        return sigma
    if isinstance(sigma, str):
        return Permutation.parse(sigma, length)
    return Permutation(tuple(sigma))


def generalized_lhs(vectors, sigma):
    """``‖R_σ(T(v_1v_1ᵀ ⊗ ... ⊗ v_pv_pᵀ))‖_tr`` via the dense tensor pipeline."""
    vectors = [as_vector(v, "vector") for v in vectors]
    sigma = _as_permutation(sigma, 2 * len(vectors))
    X = product_tensor(vectors, vectors)
    return trace_norm(matrix_view(realign(twirl(X), sigma)))


def check_generalized(vectors, sigma, tol=None):
    """Realigned twirl of a product state: trace norm at most ``Π ‖v_j‖²``."""
    vectors = [as_vector(v, "vector") for v in vectors]
    sigma = _as_permutation(sigma, 2 * len(vectors))
    lhs = generalized_lhs(vectors, sigma)
    rhs = math.prod(inner(v, v) for v in vectors)
    inputs = {f"v{j}": v for j, v in enumerate(vectors, start=1)}
    inputs["sigma"] = str(sigma)
    return make_report("generalized", lhs, rhs, inputs, tol)


def generalized_closed_form_p2(v1, v2):
    """Closed form ``‖v1²‖‖v2²‖ − ⟨v1²,v2²⟩ + ⟨|v1|,|v2|⟩²`` of the ``p = 2``, ``σ = (1,3,4,2)`` left side.

    The off-diagonal blocks contribute ``|v1_i v2_i v1_j v2_j|``, hence the
    absolute values; for non-negative vectors this is ``⟨v1,v2⟩²``.
    """
    v1, v2 = _vec_pair(v1, v2, ("v1", "v2"))
    return _cs_gap(v1 * v1, v2 * v2) + inner(np.abs(v1), np.abs(v2)) ** 2


class TripartiteBlocks(NamedTuple):
    """Trace-norm contributions of the block families for ``σ = (6,5,3,4,2,1)``."""

    rank_one: float  # n blocks a_j b_jᵀ of size 2n−1
    paired: float  # n·C(n−1, 2) rank-one blocks of size 2
    diagonal: float  # n(n−1) blocks of size 1
    paired_signed: float  # ``paired`` with v_i x_i in place of |v_i x_i|
    paired_merged: float  # one (n−1)(n−2) block per i; equals ``paired`` only for n <= 3

    @property
    def total(self):
        return self.rank_one + self.paired + self.diagonal


def _triple(v, w, x):
    v, w, x = as_vector(v, "v"), as_vector(w, "w"), as_vector(x, "x")
    if not (v.shape == w.shape == x.shape):
        raise DimensionMismatch("v, w, x must have the same dimension")
    return v, w, x


def tripartite_lhs_explicit(v, w, x):
    """Block-by-block trace norm of ``R_σ(T(vvᵀ ⊗ wwᵀ ⊗ xxᵀ))`` for ``σ = (6,5,3,4,2,1)``.

    Every block is rank one, so each contributes the product of the norms of
    its two factors; no singular values are computed.  For every ``i`` and
    pair ``j < k`` avoiding ``i`` the entries ``v_i v_j w_k`` and ``v_i v_k w_j``
    (against ``x_i x_j w_k``, ``x_i x_k w_j``) form one 2×2 block.  Merging
    these per ``i`` into a single rank-one block is only valid for ``n <= 3``;
    that merged value is reported as ``paired_merged``.
    """
    v, w, x = _triple(v, w, x)
    n = v.size
    rank_one = 0.0
    for j in range(n):
        others = np.arange(n) != j
        a_j = np.concatenate([v[j] * v * w, w[j] * v[others] ** 2])
        b_j = np.concatenate([x[j] * x * w, w[j] * x[others] ** 2])
        rank_one += norm_product(a_j, b_j)

    paired = paired_signed = paired_merged = 0.0
    for i in range(n):
        rest = [j for j in range(n) if j != i]
        ys, zs = [], []
        for j, k in itertools.combinations(rest, 2):
            y = np.array([v[i] * v[j] * w[k], v[i] * v[k] * w[j]])
            z = np.array([x[i] * x[j] * w[k], x[i] * x[k] * w[j]])
            size = norm_product(y, z)
            paired += size
            paired_signed += math.copysign(size, v[i] * x[i])
            ys.append(y)
            zs.append(z)
        if ys:
            paired_merged += norm_product(np.concatenate(ys), np.concatenate(zs))

    vx = np.abs(v * x)
    diagonal = float(np.sum(w * w * vx * (np.sum(vx) - vx)))
    return TripartiteBlocks(rank_one, paired, diagonal, paired_signed, paired_merged)


def check_tripartite(v, w, x, tol=None):
    """Three-vector inequality from the ``p = 3`` realignment.

    ``lhs`` is the sum of the first two block families (with ``|v_i x_i|``);
    ``rhs = ‖v‖²‖w‖²‖x‖² + ‖v⊙w⊙x‖² − ⟨v⊙w, x⊙w⟩⟨v,x⟩``.  The report details
    also carry the signed and merged-block variants of the left side and the
    sharper right side ``Π‖·‖² − (diagonal family)``.
    """
    v, w, x = _triple(v, w, x)
    blocks = tripartite_lhs_explicit(v, w, x)
    norms = inner(v, v) * inner(w, w) * inner(x, x)
    vwx = v * w * x
    rhs = norms + inner(vwx, vwx) - inner(v * w, x * w) * inner(v, x)
    lhs = blocks.rank_one + blocks.paired
    details = {
        "rank_one": blocks.rank_one,
        "paired": blocks.paired,
        "diagonal": blocks.diagonal,
        "signed_lhs": blocks.rank_one + blocks.paired_signed,
        "merged_lhs": blocks.rank_one + blocks.paired_merged,
        "sharp_rhs": norms - blocks.diagonal,
    }
    return make_report("tripartite", lhs, rhs, {"v": v, "w": w, "x": x}, tol, details)


# -- non-integer exponents ----------------------------------------------------


def conjecture_sides(p, v, w):
    """``(‖v^p‖‖w^p‖ − ⟨v^p,w^p⟩, ‖v‖^p‖w‖^p − ⟨v,w⟩^p)`` for non-negative ``v, w``.

    No validation; callers guarantee equal dims and non-negative entries.
    """
    vp = v**p
    wp = w**p
    vv, ww, vw = float(v @ v), float(w @ w), float(v @ w)
    lhs = math.sqrt(float(vp @ vp) * float(wp @ wp)) - float(vp @ wp)
    rhs = math.sqrt(vv * ww) ** p - vw**p
    return lhs, rhs


def check_conjecture(p, v, w, strict=True, tol=None):
    """Conjectured ``‖v^p‖‖w^p‖ − ⟨v^p,w^p⟩ ≤ ‖v‖^p‖w‖^p − ⟨v,w⟩^p``.

    The statement is only conjectured for ``p >= 2`` and positive vectors, so
    the report's ``holds`` is a finding, not a verdict.  Any ``p > 0`` is
    accepted and recorded.  ``strict=False`` admits zero entries.
    """
    if not p > 0:
        raise ExponentOutOfRange(f"p must be positive, got {p}")
    v, w = _vec_pair(v, w)
    if strict:
        if np.any(v <= 0) or np.any(w <= 0):
            raise NonPositiveEntries("strict mode needs entrywise positive v and w")
    elif np.any(v < 0) or np.any(w < 0):
        raise NegativeInput("v and w must be entrywise non-negative")
    lhs, rhs = conjecture_sides(float(p), v, w)
    return make_report("conjecture", lhs, rhs, {"p": p, "v": v, "w": w}, tol)


# -- registry ------------------------------------------------------------------


@dataclass(frozen=True)
class Checker:
    name: str
    func: Callable
    params: tuple
    proven: bool
    summary: str


CHECKERS = {
    c.name: c
    for c in [
        Checker("cs-original", check_cs_original, ("v", "w"), True,
                "‖v²‖‖w²‖ − ⟨v²,w²⟩ ≤ ‖v‖²‖w‖² − ⟨v,w⟩²"),
        Checker("matrix-gen", check_matrix_gen, ("X", "Y"), True,
                "‖x‖‖y‖ − ⟨x,y⟩ ≤ ‖X‖_F‖Y‖_F − ⟨X,Y⟩_F with x, y the diagonals"),
        Checker("eig-gen", check_eig_gen, ("X", "Y"), True,
                "‖x‖‖y‖ − ⟨x,y⟩ ≤ ‖λ_X‖‖λ_Y‖ − ⟨λ_X,λ_Y⟩, opposite orders"),
        Checker("svd-gen", check_svd_gen, ("X", "Y"), True,
                "‖x‖‖y‖ − ⟨σ_X,σ_Y⟩ ≤ ‖σ_X‖‖σ_Y‖ − ⟨x,y⟩"),
        Checker("fx-projection", check_fx_projection, ("x", "v", "w", "P"), True,
                "f_x(Pv, Pw) ≤ f_x(v, w)"),
        Checker("fp-diag", check_fp_diag, ("x", "xs", "ys"), True,
                "Hadamard products of p pairs versus products of pair terms"),
        Checker("equal-tensors", check_equal_tensors, ("p", "x", "y"), True,
                "‖x^p‖‖y^p‖ − |⟨x^p,y^p⟩| ≤ ‖x‖^p‖y‖^p − |⟨x,y⟩|^p"),
        Checker("chain", chain_check, ("v", "w", "k"), True,
                "two-link chain through ‖v^k‖²‖w^k‖² − ⟨v^k,w^k⟩²"),
        Checker("generalized", check_generalized, ("vectors", "sigma"), True,
                "‖R_σ(T(⊗ v_j v_jᵀ))‖_tr ≤ Π ‖v_j‖²"),
        Checker("tripartite", check_tripartite, ("v", "w", "x"), True,
                "three-vector inequality from σ = (6,5,3,4,2,1)"),
        Checker("conjecture", check_conjecture, ("p", "v", "w"), False,
                "‖v^p‖‖w^p‖ − ⟨v^p,w^p⟩ ≤ ‖v‖^p‖w‖^p − ⟨v,w⟩^p (conjectured, p ≥ 2)"),
    ]
}


def get_checker(name):
    try:
        return CHECKERS[name]
    except KeyError:
        raise UnknownChecker(f"unknown checker {name!r}; known: {', '.join(CHECKERS)}") from None
