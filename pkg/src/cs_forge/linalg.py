"""Small dense real matrix algebra.

Frobenius norm and inner product, column-stacking vectorization, Kronecker
products, and spectra.  Spectra come from Jacobi rotations written here:

* symmetric eigenvalues use the cyclic two-sided Jacobi method;
* singular values use one-sided (Hestenes) Jacobi on the matrix itself, after
  splitting it into independent row/column blocks.

Matrices in this package are at most a few dozen rows, where Jacobi is
accurate and fast enough.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    InvalidInput,
    NotSquare,
    NotSymmetric,
)
from .vectors import as_vector, inner, norm2

__all__ = [
    "SpectrumVector",
    "as_matrix",
    "frobenius_norm",
    "frobenius_inner",
    "vectorize",
    "kron_mat",
    "kron_vec",
    "singular_values",
    "trace_norm",
    "sym_eigenvalues",
    "diag_vec",
    "SYMMETRY_ATOL",
]

MAX_SWEEPS = 100
OFF_DIAGONAL_RTOL = 1e-14
SYMMETRY_ATOL = 1e-12
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SpectrumVector:
    """Sorted eigenvalues or singular values.

    Behaves like a read-only 1-D array, so it can be passed straight to
    :func:`~cs_forge.vectors.inner` and friends.
    """

    values: np.ndarray
    kind: str  # "eigenvalues" | "singular_values"
    order: str  # "ascending" | "descending"

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, item):
        return self.values[item]

    def reversed(self):
        flipped = "ascending" if self.order == "descending" else "descending"
        return SpectrumVector(self.values[::-1].copy(), self.kind, flipped)


def _sorted_spectrum(values, kind, order):
    if order not in ("ascending", "descending"):
        raise ValueError(f"order must be 'ascending' or 'descending', got {order!r}")
    values = np.sort(np.asarray(values, dtype=float))
    if order == "descending":
        values = values[::-1].copy()
    values.setflags(write=False)
    return SpectrumVector(values, kind, order)


def as_matrix(A, name="A"):
    """Return ``A`` as a finite, non-empty 2-D float array."""
    arr = np.asarray(A, dtype=float)
    if arr.ndim != 2:
        raise InvalidInput(f"{name} must be two-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidInput(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} has non-finite entries")
    return arr


def vectorize(A):
    """Column-stacking ``vec(A) = (a11, ..., an1, a12, ...)``."""
    return as_matrix(A).reshape(-1, order="F")


def frobenius_norm(A):
    return norm2(vectorize(A))


def frobenius_inner(A, B):
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes {A.shape} and {B.shape} differ")
    return inner(vectorize(A), vectorize(B))


def kron_mat(A, B):
    return np.kron(as_matrix(A, "A"), as_matrix(B, "B"))


def kron_vec(x, y):
    """``x ⊗ y = (x1 y, x2 y, ...)``."""
    return np.kron(as_vector(x, "x"), as_vector(y, "y"))


def diag_vec(A):
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise NotSquare(f"diag needs a square matrix, got shape {A.shape}")
    return np.diag(A).copy()


# -- symmetric eigenvalues ---------------------------------------------------


def _rotation(theta):
    # t = tan of the rotation angle, smaller root for stability
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    return c, t * c


def _off_norm(a):
    off = a - np.diag(np.diag(a))
    return math.sqrt(float(np.sum(off * off)))


def jacobi_eigenvalues(A):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations (unsorted)."""
    a = np.array(A, dtype=float)
    n = a.shape[0]
    thresh = OFF_DIAGONAL_RTOL * math.sqrt(float(np.sum(a * a)))
    for sweep in range(MAX_SWEEPS + 1):
        off = _off_norm(a)
        if off <= thresh:
            return np.diag(a).copy()
        if sweep == MAX_SWEEPS:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                c, s = _rotation((a[q, q] - a[p, p]) / (2.0 * apq))
                col_p = a[:, p].copy()
                a[:, p] = c * col_p - s * a[:, q]
                a[:, q] = s * col_p + c * a[:, q]
                row_p = a[p, :].copy()
                a[p, :] = c * row_p - s * a[q, :]
                a[q, :] = s * row_p + c * a[q, :]
                a[p, q] = a[q, p] = 0.0
    raise ConvergenceFailure(
        f"Jacobi eigenvalue iteration did not converge in {MAX_SWEEPS} sweeps",
        sweeps=MAX_SWEEPS,
        residual=off,
    )


def sym_eigenvalues(A, order="ascending"):
    """Eigenvalues of a symmetric matrix, sorted as requested."""
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise NotSquare(f"eigenvalues need a square matrix, got shape {A.shape}")
    asym = float(np.max(np.abs(A - A.T)))
    if asym > SYMMETRY_ATOL:
        raise NotSymmetric(f"matrix is not symmetric (max |a_ij - a_ji| = {asym:.3g})")
    sym = 0.5 * (A + A.T)
    return _sorted_spectrum(jacobi_eigenvalues(sym), "eigenvalues", order)


# -- singular values -----------------------------------------------------------


def _hestenes_singular_values(A):
    """One-sided Jacobi: orthogonalize the columns, return their norms."""
    u = np.array(A, dtype=float)
    if u.shape[1] > u.shape[0]:
        u = u.T.copy()
    # work at unit scale so products of column norms neither underflow nor overflow
    scale = float(np.max(np.abs(u)))
    if scale == 0.0:
        return np.zeros(u.shape[1])
    u /= scale
    m, n = u.shape
    tol = 8.0 * m * _EPS
    # columns this small are rounding residue; rotating them never settles
    floor = (_EPS * math.sqrt(float(np.sum(u * u)))) ** 2
    for _ in range(MAX_SWEEPS):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                ui, uj = u[:, i], u[:, j]
                gamma = float(ui @ uj)
                if gamma == 0.0:
                    continue
                alpha = float(ui @ ui)
                beta = float(uj @ uj)
                if min(alpha, beta) <= floor:
                    continue
                if abs(gamma) <= tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                c, s = _rotation((beta - alpha) / (2.0 * gamma))
                ui_old = ui.copy()
                u[:, i] = c * ui_old - s * uj
                u[:, j] = s * ui_old + c * u[:, j]
        if not rotated:
            return scale * np.sqrt(np.sum(u * u, axis=0))
    raise ConvergenceFailure(
        f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps", sweeps=MAX_SWEEPS
    )


def _blocks(A):
    """Yield the submatrices of the independent row/column blocks of ``A``."""
    m, n = A.shape
    rows, cols = np.nonzero(A)
    if rows.size == 0:
        return
    graph = coo_matrix((np.ones(rows.size), (rows, cols + m)), shape=(m + n, m + n))
    _, labels = connected_components(graph, directed=False)
    row_labels, col_labels = labels[:m], labels[m:]
    for label in np.unique(labels[rows]):
        r = np.flatnonzero(row_labels == label)
        c = np.flatnonzero(col_labels == label)
        yield A[np.ix_(r, c)]


def singular_values(A):
    """Singular values of ``A`` in descending order (``min(m, n)`` of them)."""
    A = as_matrix(A)
    count = min(A.shape)
    parts = [_hestenes_singular_values(block) for block in _blocks(A)]
    values = np.concatenate(parts) if parts else np.zeros(0)
    values = np.concatenate([values, np.zeros(count - values.size)])
    return _sorted_spectrum(values, "singular_values", "descending")


def trace_norm(A):
    """Sum of singular values."""
    return float(np.sum(singular_values(A).values))
