import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import realign_loops, twirl_monte_carlo, twirl_phase_average

from cs_forge.errors import (
    DimensionMismatch,
    InvalidInput,
    InvalidPermutation,
    ParseError,
    PermutationLengthMismatch,
    SizeGuardExceeded,
)
from cs_forge.linalg import kron_mat
from cs_forge.multilinear import (
    MultiTensor,
    Permutation,
    diag_positions,
    diag_project,
    from_matrix,
    matrix_view,
    product_tensor,
    realign,
    twirl,
    twirl_mask,
)


def random_tensor(rng, n, p):
    return MultiTensor(rng.standard_normal((n,) * (2 * p)))


def test_multitensor_validation():
    with pytest.raises(InvalidInput):
        MultiTensor(np.ones((2, 2, 2)))
    with pytest.raises(InvalidInput):
        MultiTensor(np.ones((2, 3)))
    with pytest.raises(SizeGuardExceeded):
        MultiTensor(np.zeros((4,) * 12))
    X = MultiTensor(np.ones((2, 2, 2, 2)))
    assert (X.n, X.p) == (2, 2)
    with pytest.raises(ValueError):
        X.data[0, 0, 0, 0] = 5


def test_permutation_parsing():
    assert Permutation.parse("1,3,4,2").image == (1, 3, 4, 2)
    assert Permutation.parse("1 3 4 2") == Permutation((1, 3, 4, 2))
    assert Permutation.parse("identity", 4).is_identity()
    assert str(Permutation((6, 5, 3, 4, 2, 1))) == "6,5,3,4,2,1"
    with pytest.raises(InvalidPermutation):
        Permutation.parse("(1 3 2)")
    with pytest.raises(InvalidPermutation):
        Permutation((1, 1, 2))
    with pytest.raises(ParseError):
        Permutation.parse("identity")
    with pytest.raises(PermutationLengthMismatch):
        Permutation.parse("2,1", length=4)


def test_permutation_inverse():
    for sigma in Permutation.all(4):
        inv = sigma.inverse()
        assert all(inv(sigma(k)) == k for k in range(1, 5))
    assert sum(1 for _ in Permutation.all(4)) == 24


def test_matrix_view_is_kronecker(rng):
    for n, p in [(2, 1), (2, 2), (3, 2), (2, 3)]:
        vs = [rng.standard_normal(n) for _ in range(p)]
        ws = [rng.standard_normal(n) for _ in range(p)]
        X = product_tensor(vs, ws)
        expected = np.ones((1, 1))
        for v, w in zip(vs, ws):
            expected = kron_mat(expected, np.outer(v, w))
        np.testing.assert_allclose(matrix_view(X), expected, atol=1e-13)
        assert from_matrix(matrix_view(X), n, p) == X


def test_product_tensor_errors():
    with pytest.raises(DimensionMismatch):
        product_tensor([[1, 2]], [[1, 2], [3, 4]])
    with pytest.raises(DimensionMismatch):
        product_tensor([[1, 2], [1, 2, 3]], [[1, 2], [3, 4]])


@pytest.mark.parametrize("n, p", [(2, 1), (2, 2), (3, 2), (2, 3)])
def test_twirl_matches_phase_quadrature(rng, n, p):
    X = random_tensor(rng, n, p)
    expected = twirl_phase_average(matrix_view(X), n, p)
    np.testing.assert_allclose(matrix_view(twirl(X)), expected, atol=1e-12)


def test_twirl_matches_random_phases(rng):
    X = random_tensor(rng, 2, 2)
    estimate = twirl_monte_carlo(matrix_view(X), 2, 2, rng, 20000)
    # averaging over random phases converges at the usual 1/sqrt(N) rate
    np.testing.assert_allclose(matrix_view(twirl(X)), estimate, atol=0.1)


def test_twirl_mask_is_multiset_equality():
    n, p = 3, 2
    mask = twirl_mask(n, p)
    tuples = list(itertools.product(range(n), repeat=p))
    for r, row in enumerate(tuples):
        for c, col in enumerate(tuples):
            assert mask[r, c] == (sorted(row) == sorted(col))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_twirl_is_idempotent_and_trace_preserving(n, p, seed):
    X = random_tensor(np.random.default_rng(seed), n, p)
    TX = twirl(X)
    assert twirl(TX) == TX
    assert np.trace(matrix_view(TX)) == pytest.approx(np.trace(matrix_view(X)), abs=1e-12)


@pytest.mark.parametrize("n, p", [(2, 1), (2, 2), (3, 2), (2, 3)])
def test_realign_matches_loops(rng, n, p):
    X = random_tensor(rng, n, p)
    perms = list(Permutation.all(2 * p))
    for idx in rng.choice(len(perms), size=min(10, len(perms)), replace=False):
        sigma = perms[idx]
        np.testing.assert_array_equal(realign(X, sigma).data, realign_loops(X.data, sigma.image))


def test_realign_moves_slot_vectors(rng):
    # slot m of the output carries the vector from input slot σ(m)
    n, p = 2, 2
    slots = [rng.standard_normal(n) for _ in range(2 * p)]
    X = product_tensor(slots[:p], slots[p:])
    sigma = Permutation((1, 3, 4, 2))
    moved = [slots[sigma(m) - 1] for m in range(1, 2 * p + 1)]
    np.testing.assert_allclose(realign(X, sigma).data, product_tensor(moved[:p], moved[p:]).data)


def test_standard_realignment_is_vec_outer_product(rng):
    # σ = (1,3,2,4) sends A ⊗ B to vec-style rank one matrix a bᵀ with a = A.ravel(), b = B.ravel()
    A, B = rng.standard_normal((2, 2)), rng.standard_normal((2, 2))
    X = from_matrix(kron_mat(A, B), 2, 2)
    R = matrix_view(realign(X, Permutation((1, 3, 2, 4))))
    np.testing.assert_allclose(R, np.outer(A.ravel(), B.ravel()), atol=1e-14)


def test_realign_composition(rng):
    X = random_tensor(rng, 2, 2)
    perms = list(Permutation.all(4))
    for _ in range(20):
        s, t = (perms[i] for i in rng.integers(0, 24, size=2))
        composed = Permutation(tuple(t(s(m)) for m in range(1, 5)))
        assert realign(realign(X, t), s) == realign(X, composed)
        assert realign(realign(X, s), s.inverse()) == X


def test_realign_length_mismatch():
    X = MultiTensor(np.ones((2, 2, 2, 2)))
    with pytest.raises(PermutationLengthMismatch):
        realign(X, Permutation((2, 1)))


def test_diag_projection():
    np.testing.assert_array_equal(diag_positions(2, 2), [0, 3])
    np.testing.assert_array_equal(diag_positions(3, 2), [0, 4, 8])
    x = np.arange(1.0, 9.0)
    np.testing.assert_array_equal(diag_project(x, 2, 3), [1, 0, 0, 0, 0, 0, 0, 8])
    with pytest.raises(DimensionMismatch):
        diag_project(x, 2, 2)


def test_diag_projection_of_tensor_power_is_hadamard_power(rng):
    from cs_forge.linalg import kron_vec

    v = rng.standard_normal(3)
    vvv = kron_vec(kron_vec(v, v), v)
    proj = diag_project(vvv, 3, 3)
    np.testing.assert_allclose(proj[diag_positions(3, 3)], v**3, atol=1e-14)
    np.testing.assert_allclose(diag_project(proj, 3, 3), proj)
