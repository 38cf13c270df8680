# %% [markdown]
# ‖v‖^{2k}‖w‖^{2k} − ⟨v,w⟩^{2k} is a weighted sum of squares indexed by pairs of
# weak compositions of k.  With integer or rational inputs the identity can be
# checked with no rounding at all.

# %%
from fractions import Fraction

import numpy as np

from cs_forge import chain_check, compositions, multinomial, sos_lhs, sos_rhs, verify_sos_identity

print(compositions(3, 2))
print([multinomial(2, a) for a in compositions(3, 2)])

# %%
v, w = [1, 2], [3, 4]
print("k=2 exact:", sos_lhs(v, w, 2, exact=True), "=", sos_rhs(v, w, 2, exact=True))
print("difference with decimals:", verify_sos_identity(["0.1", "-2.5", "3"], ["1/3", "7", "0.25"], 3))

# %%
# k = 1 is Lagrange's identity.
print(sos_rhs([Fraction(1, 2), 3], [2, Fraction(-1, 5)], 1, exact=True))

# %%
# Term count grows like C(n+k-1, n-1)^2; floats are fine for a quick look.
rng = np.random.default_rng(3)
a, b = rng.standard_normal((2, 4))
for k in (1, 2, 3, 4):
    lhs, rhs = sos_lhs(a, b, k), sos_rhs(a, b, k)
    print(k, len(compositions(4, k)) ** 2, f"relative difference {(lhs - rhs) / lhs:.1e}")

# %%
# The identity gives a chain through the k-th Hadamard powers.
for report in chain_check(a, b, 3):
    print(report.to_text())
