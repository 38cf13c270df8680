import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import compositions_brute, multinomial_factorials, sos_rhs_fraction

from cs_forge.errors import DimensionMismatch, InvalidInput, SizeGuardExceeded, SumMismatch
from cs_forge.sos import (
    chain_check,
    composition_pairs,
    compositions,
    multinomial,
    sos_lhs,
    sos_rhs,
    verify_sos_identity,
)
from cs_forge.vectors import lagrange_rhs


def test_small_compositions():
    assert compositions(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert compositions(1, 4) == [(4,)]
    assert compositions(3, 0) == [(0, 0, 0)]


@pytest.mark.parametrize("n, k", [(1, 3), (2, 4), (3, 3), (4, 2), (5, 1)])
def test_compositions_match_brute_force(n, k):
    comps = compositions(n, k)
    assert comps == compositions_brute(n, k)
    assert len(comps) == math.comb(n + k - 1, n - 1)


def test_compositions_reject_bad_arguments():
    with pytest.raises(InvalidInput):
        compositions(0, 2)
    with pytest.raises(InvalidInput):
        compositions(2, -1)


def test_multinomial():
    assert multinomial(4, (2, 1, 1)) == 12
    assert multinomial(3, (3, 0)) == 1
    with pytest.raises(SumMismatch):
        multinomial(3, (1, 1))
    for parts in compositions(4, 6):
        assert multinomial(6, parts) == multinomial_factorials(6, parts)


def test_multinomial_row_sums_to_power():
    # Σ_a C(k;a) = n^k
    for n, k in [(2, 5), (3, 4), (4, 3)]:
        assert sum(multinomial(k, a) for a in compositions(n, k)) == n**k


def test_composition_pairs_guard(monkeypatch):
    import cs_forge.sos as sos

    monkeypatch.setattr(sos, "MAX_PAIRS", 10)
    with pytest.raises(SizeGuardExceeded):
        list(composition_pairs(3, 2))
    assert len(list(composition_pairs(2, 1))) == 4


def test_k2_example_exact():
    # ‖(1,2)‖⁴‖(3,4)‖⁴ − 11⁴ = 25·625 − 14641
    assert sos_lhs([1, 2], [3, 4], 2, exact=True) == 984
    assert sos_rhs([1, 2], [3, 4], 2, exact=True) == 984
    assert verify_sos_identity([1, 2], [3, 4], 2) == 0


def test_exact_rhs_matches_definition(rng):
    for _ in range(20):
        n, k = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        v = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-9, 10, n), rng.integers(1, 7, n))]
        w = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-9, 10, n), rng.integers(1, 7, n))]
        assert sos_rhs(v, w, k, exact=True) == sos_rhs_fraction(v, w, k)


def test_decimal_strings_are_exact():
    assert verify_sos_identity(["0.1", "0.2"], ["0.3", "-0.7"], 3) == 0
    assert sos_lhs(["0.5"], ["0.25"], 1, exact=True) == 0


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.integers(-10, 10), min_size=n, max_size=n),
            st.lists(st.integers(-10, 10), min_size=n, max_size=n),
        )
    ),
    st.integers(1, 4),
)
def test_identity_exact(pair, k):
    assert verify_sos_identity(*pair, k) == 0


def test_float_mode_close(rng):
    for _ in range(50):
        n, k = int(rng.integers(1, 5)), int(rng.integers(1, 4))
        v, w = rng.standard_normal(n), rng.standard_normal(n)
        lhs, rhs = sos_lhs(v, w, k), sos_rhs(v, w, k)
        scale = (float(v @ v) * float(w @ w)) ** k
        assert abs(lhs - rhs) <= 1e-10 * max(scale, 1)


def test_k1_is_lagrange(rng):
    for _ in range(50):
        n = int(rng.integers(1, 9))
        v, w = rng.standard_normal(n), rng.standard_normal(n)
        assert sos_rhs(v, w, 1) == pytest.approx(lagrange_rhs(v, w), rel=1e-10, abs=1e-14)


def test_sos_errors():
    with pytest.raises(InvalidInput):
        sos_lhs([1], [1], 0)
    with pytest.raises(DimensionMismatch):
        sos_rhs([1, 2], [1], 2)
    with pytest.raises(InvalidInput):
        sos_rhs([float("nan")], [1], 1, exact=True)


def test_chain_holds(rng):
    for _ in range(200):
        n, k = int(rng.integers(1, 6)), int(rng.integers(1, 4))
        left, right = chain_check(rng.standard_normal(n), rng.standard_normal(n), k)
        assert left.holds and right.holds
        assert left.rhs == right.lhs


def test_chain_equality_case():
    left, right = chain_check(np.array([1.0, 2.0]), np.array([2.0, 4.0]), 2)
    assert left.margin == pytest.approx(0, abs=1e-9)
    assert right.rhs == pytest.approx(0, abs=1e-9)
