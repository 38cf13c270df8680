# %% [markdown]
# Tensor form: twirl a product of rank-one projectors, permute its 2p index
# slots, and take the trace norm.  The result never exceeds Π ‖v_j‖².

# %%
import itertools

import numpy as np

from cs_forge import (
    TRIPARTITE_SIGMA,
    Permutation,
    check_tripartite,
    generalized_closed_form_p2,
    generalized_lhs,
    matrix_view,
    product_tensor,
    realign,
    tripartite_lhs_explicit,
    twirl,
)

v1, v2 = np.array([1.0, 1.0]), np.array([1.0, 2.0])
X = product_tensor([v1, v2], [v1, v2])
print(matrix_view(X))
print(matrix_view(twirl(X)))  # entries with different row/column multisets vanish

# %%
# Realigning with σ = (1,3,4,2) brings back the two-vector inequality.
R = realign(twirl(X), Permutation((1, 3, 4, 2)))
print(np.round(matrix_view(R), 3))
print("trace norm:", generalized_lhs([v1, v2], "1,3,4,2"), " closed form:", generalized_closed_form_p2(v1, v2))

# %%
# Only two values appear across all 24 permutations for p = 2.
rng = np.random.default_rng(1)
a, b = rng.standard_normal((2, 3))
values = sorted({round(generalized_lhs([a, b], s), 10) for s in Permutation.all(4)})
print(values, "bound:", (a @ a) * (b @ b))

# %%
# p = 3 with σ = (6,5,3,4,2,1): the realigned matrix is block diagonal and every
# block has rank one, so its trace norm is a sum of products of norms.
v, w, x = rng.standard_normal((3, 3))
blocks = tripartite_lhs_explicit(v, w, x)
print(blocks.rank_one, blocks.paired, blocks.diagonal)
print("blocks:", blocks.total, " dense pipeline:", generalized_lhs([v, w, x], TRIPARTITE_SIGMA))
report = check_tripartite(v, w, x)
print(report.to_text())

# %%
# Across all 720 permutations at n = 2 the trace norm takes the trivial value
# or one of the role-swapped block totals.
vs = rng.standard_normal((3, 2))
seen = sorted({round(generalized_lhs(vs, s), 8) for s in Permutation.all(6)})
roles = sorted({round(tripartite_lhs_explicit(*r).total, 8) for r in itertools.permutations(vs)})
print("seen:", seen)
print("block totals:", roles, "trivial:", round(float(np.prod([u @ u for u in vs])), 8))
