"""Reference implementations written independently of the package code.

They trade speed for directness: explicit index loops, Haar-style averaging
over phases, and numpy.linalg for spectra.
"""

import itertools
from fractions import Fraction
from math import factorial

import numpy as np


def realign_loops(data, image):
    """Entry-by-entry realignment: ``out[s] = data[r]`` with ``r[σ(m)] = s[m]``."""
    n, slots = data.shape[0], data.ndim
    out = np.zeros_like(data)
    for s in itertools.product(range(n), repeat=slots):
        r = [0] * slots
        for m, target in enumerate(image):
            r[target - 1] = s[m]
        out[s] = data[tuple(r)]
    return out


def twirl_phase_average(M, n, p):
    """Average of ``U^{⊗p} M U^{*⊗p}`` over diagonal ``U`` with (p+1)-th root-of-unity phases.

    Any entry whose row and column index multisets differ picks up a
    character with exponents in ``[-p, p]``, which the grid average kills
    exactly, so this is the continuous twirl computed by finite quadrature.
    """
    m = p + 1
    roots = np.exp(2j * np.pi * np.arange(m) / m)
    acc = np.zeros(M.shape, dtype=complex)
    count = 0
    for choice in itertools.product(range(m), repeat=n):
        d = roots[list(choice)]
        U = np.ones(1, dtype=complex)
        for _ in range(p):
            U = np.kron(U, d)
        acc += (U[:, None] * M) * U.conj()[None, :]
        count += 1
    return (acc / count).real


def twirl_monte_carlo(M, n, p, rng, samples):
    acc = np.zeros(M.shape, dtype=complex)
    for _ in range(samples):
        d = np.exp(2j * np.pi * rng.random(n))
        U = np.ones(1, dtype=complex)
        for _ in range(p):
            U = np.kron(U, d)
        acc += (U[:, None] * M) * U.conj()[None, :]
    return (acc / samples).real


def trace_norm_numpy(M):
    return float(np.sum(np.linalg.svd(M, compute_uv=False)))


def compositions_brute(n, k):
    return sorted(c for c in itertools.product(range(k + 1), repeat=n) if sum(c) == k)


def multinomial_factorials(k, parts):
    out = factorial(k)
    for a in parts:
        out //= factorial(a)
    return out


def sos_rhs_fraction(v, w, k):
    """Double sum of the identity with Fractions, straight from the definition."""
    v = [Fraction(x) for x in v]
    w = [Fraction(x) for x in w]
    comps = compositions_brute(len(v), k)
    total = Fraction(0)
    for a in comps:
        for b in comps:
            mono_ab = Fraction(1)
            mono_ba = Fraction(1)
            for vi, wi, ai, bi in zip(v, w, a, b):
                mono_ab *= vi**ai * wi**bi
                mono_ba *= vi**bi * wi**ai
            total += multinomial_factorials(k, a) * multinomial_factorials(k, b) * (mono_ab - mono_ba) ** 2
    return total / 2


def random_projection(rng, n):
    """Orthogonal projection onto a random subspace of random rank 0..n."""
    rank = int(rng.integers(0, n + 1))
    if rank == 0:
        return np.zeros((n, n))
    Q, _ = np.linalg.qr(rng.standard_normal((n, rank)))
    return Q @ Q.T
