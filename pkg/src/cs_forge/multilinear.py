"""Order-2p tensors standing for elements of ``(M_n)^{⊗p}``.

A :class:`MultiTensor` stores a dense array with ``2p`` axes of length ``n``.
Axes ``0..p-1`` are the row indices ``i_1..i_p`` of the ``p`` tensor factors
and axes ``p..2p-1`` are the column indices ``j_1..j_p``.  Flattening the row
axes and the column axes in C order gives exactly the Kronecker layout, so
:func:`matrix_view` of a product tensor equals the iterated ``np.kron`` of its
factors.

Slot numbering in :class:`Permutation` and :func:`realign` is 1-based to
match the usual one-line notation: slot ``m <= p`` is the row index of factor
``m`` and slot ``p + m`` its column index.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidInput,
    InvalidPermutation,
    ParseError,
    PermutationLengthMismatch,
    SizeGuardExceeded,
)
from .vectors import as_vector

__all__ = [
    "MAX_SIDE",
    "MultiTensor",
    "Permutation",
    "product_tensor",
    "from_matrix",
    "matrix_view",
    "twirl",
    "twirl_mask",
    "realign",
    "diag_positions",
    "diag_project",
]

# largest allowed n**p, i.e. the side length of the matrix view
MAX_SIDE = 1024


def _check_side(n, p):
    if n < 1 or p < 1:
        raise InvalidInput(f"need n >= 1 and p >= 1, got n={n}, p={p}")
    if n**p > MAX_SIDE:
        raise SizeGuardExceeded(f"n^p = {n}^{p} exceeds the dense guard {MAX_SIDE}")


@dataclass(frozen=True)
class MultiTensor:
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.ndim == 0 or data.ndim % 2:
            raise InvalidInput(f"tensor needs an even, positive number of axes, got {data.ndim}")
        n = data.shape[0]
        if any(s != n for s in data.shape):
            raise InvalidInput(f"all axes must have the same length, got shape {data.shape}")
        _check_side(n, data.ndim // 2)
        if not np.all(np.isfinite(data)):
            raise InvalidInput("tensor has non-finite entries")
        data = np.ascontiguousarray(data)
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def n(self):
        return self.data.shape[0]

    @property
    def p(self):
        return self.data.ndim // 2

    def __getitem__(self, index):
        return self.data[index]

    def __eq__(self, other):
        if not isinstance(other, MultiTensor):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))

    __hash__ = None


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``{1, ..., m}`` in one-line notation: ``image[k-1] = σ(k)``."""

    image: tuple

    def __post_init__(self):
        try:
            image = tuple(int(k) for k in self.image)
        except (TypeError, ValueError) as exc:
            raise InvalidPermutation(f"bad permutation image {self.image!r}") from exc
        if sorted(image) != list(range(1, len(image) + 1)):
            raise InvalidPermutation(
                f"{image} is not a bijection on 1..{len(image)} (one-line notation expected)"
            )
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, m):
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def parse(cls, text, length=None):
        """Parse ``"1,3,4,2"`` (commas or spaces) or ``"identity"``.

        ``length`` is required for ``"identity"`` and checked otherwise.
        """
        text = text.strip()
        if text.lower() in ("identity", "id"):
            if length is None:
                raise ParseError("'identity' needs an explicit permutation length")
            return cls.identity(length)
        tokens = text.replace(",", " ").split()
        try:
            image = tuple(int(tok) for tok in tokens)
        except ValueError as exc:
            raise InvalidPermutation(
                f"cannot parse permutation {text!r}; use one-line notation like 1,3,4,2"
            ) from exc
        perm = cls(image)
        if length is not None and len(perm) != length:
            raise PermutationLengthMismatch(f"expected a permutation of length {length}, got {len(perm)}")
        return perm

    @classmethod
    def all(cls, m):
        for image in itertools.permutations(range(1, m + 1)):
            yield cls(image)

    def __len__(self):
        return len(self.image)

    def __call__(self, k):
        return self.image[k - 1]

    def inverse(self):
        inv = [0] * len(self.image)
        for k, s in enumerate(self.image, start=1):
            inv[s - 1] = k
        return Permutation(tuple(inv))

    def is_identity(self):
        return self.image == tuple(range(1, len(self.image) + 1))

    def __str__(self):
        return ",".join(str(k) for k in self.image)


def product_tensor(vectors, covectors):
    """``v_1 w_1ᵀ ⊗ ... ⊗ v_p w_pᵀ`` as a :class:`MultiTensor`."""
    vectors = [as_vector(v, "vector") for v in vectors]
    covectors = [as_vector(w, "covector") for w in covectors]
    if not vectors or len(vectors) != len(covectors):
        raise DimensionMismatch(
            f"need p >= 1 vectors and as many covectors, got {len(vectors)} and {len(covectors)}"
        )
    n = vectors[0].size
    if any(v.size != n for v in vectors + covectors):
        raise DimensionMismatch("all vectors and covectors must have the same dimension")
    _check_side(n, len(vectors))
    data = np.ones(())
    for v in vectors + covectors:
        data = np.multiply.outer(data, v)
    return MultiTensor(data)


def from_matrix(M, n, p):
    """Inverse of :func:`matrix_view`."""
    M = np.asarray(M, dtype=float)
    if M.shape != (n**p, n**p):
        raise DimensionMismatch(f"expected a {n**p}x{n**p} matrix, got {M.shape}")
    return MultiTensor(M.reshape((n,) * (2 * p)))


def matrix_view(X):
    """The ``n^p × n^p`` matrix whose rows/columns follow the Kronecker ordering."""
    side = X.n**X.p
    return X.data.reshape(side, side)


@lru_cache(maxsize=64)
def _multiset_ids(n, p):
    # id of the sorted index tuple for every row (equivalently column) position
    tuples = np.indices((n,) * p).reshape(p, -1).T
    _, ids = np.unique(np.sort(tuples, axis=1), axis=0, return_inverse=True)
    return ids.ravel()


@lru_cache(maxsize=64)
def twirl_mask(n, p):
    """Boolean ``n^p × n^p`` mask of positions with equal row/column index multisets."""
    _check_side(n, p)
    ids = _multiset_ids(n, p)
    mask = ids[:, None] == ids[None, :]
    mask.setflags(write=False)
    return mask


def twirl(X):
    """Local diagonal unitary twirl: keep entries whose row and column multisets agree."""
    mask = twirl_mask(X.n, X.p).reshape(X.data.shape)
    return MultiTensor(np.where(mask, X.data, 0.0))


def realign(X, sigma):
    """Realignment map ``R_σ``.

    On rank-one inputs slot ``m`` of the result carries the vector that sat in
    slot ``σ(m)`` of the input; in general the output entry at slot tuple
    ``s`` is the input entry at ``r`` with ``r_{σ(m)} = s_m``.
    """
    if not isinstance(sigma, Permutation):
        sigma = Permutation(tuple(sigma))
    if len(sigma) != X.data.ndim:
        raise PermutationLengthMismatch(
            f"tensor has {X.data.ndim} slots but the permutation has length {len(sigma)}"
        )
    axes = [k - 1 for k in sigma.image]
    return MultiTensor(np.ascontiguousarray(X.data.transpose(axes)))


def diag_positions(n, p):
    """Flat positions of ``e_j^{⊗p}`` inside ``(R^n)^{⊗p}``."""
    stride = sum(n**m for m in range(p))
    return np.arange(n) * stride


def diag_project(x, n, p):
    """Orthogonal projection onto ``span{e_j^{⊗p}}``; other coordinates are zeroed."""
    x = as_vector(x, "x")
    if x.size != n**p:
        raise DimensionMismatch(f"expected a vector of dim {n}^{p} = {n**p}, got {x.size}")
    out = np.zeros_like(x)
    keep = diag_positions(n, p)
    out[keep] = x[keep]
    return out
