# %% [markdown]
# Squaring entries can only shrink the Cauchy-Schwarz gap:
#     ‖v²‖‖w²‖ − ⟨v²,w²⟩  <=  ‖v‖²‖w‖² − ⟨v,w⟩²
# This script evaluates both sides, then the matrix versions built on
# diagonals, eigenvalues and singular values.

# %%
import numpy as np

from cs_forge import (
    check_cs_original,
    check_eig_gen,
    check_equal_tensors,
    check_fx_projection,
    check_matrix_gen,
    check_svd_gen,
    f_x,
    g_func,
)

r = check_cs_original([1, 1], [1, 2])
print(r.to_text())  # lhs = sqrt(34) - 5, rhs = 1

# %%
# For x = 2 the gap f_x is the squared area of the parallelogram.
v, w = np.array([1.0, 2.0]), np.array([3.0, 4.0])
print("f_2 =", f_x(2, v, w), " g^2 =", g_func(v, w) ** 2)

# %%
# A projection never increases f_x. Project onto the first axis:
P = np.diag([1.0, 0.0])
for x in (1, 1.5, 2, 3):
    print(check_fx_projection(x, v, w, P).to_text())

# %%
# Integer powers of both vectors, checked at p = 1, 2, 3.
for p in (1, 2, 3):
    print(check_equal_tensors(p, [0.3, -1.2, 2.0], [1.0, 0.5, -0.4]).to_text())

# %%
# Matrix forms: diagonals against Frobenius data, eigenvalues and singular values.
rng = np.random.default_rng(0)
X, Y = rng.standard_normal((2, 4, 4))
print(check_matrix_gen(X, Y).to_text())
print(check_svd_gen(X, Y).to_text())
print(check_eig_gen(X + X.T, Y + Y.T).to_text())

# %%
# Margins over many random draws, smallest first: all stay non-negative.
margins = sorted(check_svd_gen(*rng.standard_normal((2, 3, 3))).margin for _ in range(2000))
print("smallest svd-gen margins:", np.round(margins[:5], 6))
