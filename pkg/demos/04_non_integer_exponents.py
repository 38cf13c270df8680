# %% [markdown]
# With a real exponent p the inequality
#     ‖v^p‖‖w^p‖ − ⟨v^p,w^p⟩  <=  ‖v‖^p‖w‖^p − ⟨v,w⟩^p
# is conjectured for p >= 2 and positive vectors.  Below 2 it can fail.

# %%
import numpy as np

from cs_forge import (
    ScanConfig,
    counterexamples_p01,
    envelope,
    example_p12,
    example_p12_coefficient,
    extremal_pair,
    run_scan,
    search_counterexample,
)
from cs_forge.inequalities import conjecture_sides

# 0 < p < 1: two fixed pairs disagree on the direction.
for r in counterexamples_p01([0.25, 0.5, 0.75]):
    print(r.name, r.input_digest.split()[0], f"{r.margin:+.5f}")

# %%
# 1 < p < 2: a small perturbation of (1,1) already breaks it.
for eps in (0.1, 0.01, 0.001):
    r = example_p12(1.5, eps)
    print(eps, r.margin, example_p12_coefficient(1.5) * eps**2)

# %%
# Random search finds bigger violations in that range.
found = search_counterexample(3, p_range=(1.0, 2.0), seed=0, restarts=50)
print(f"p={found.p:.4f} diff={found.diff:.5f}", np.round(found.v, 4), np.round(found.w, 4))

# %%
# For p >= 2 a scan finds no violation.
s = run_scan(ScanConfig(seed=1, trials=20000, n=4, p_range=(2.0, 10.0))).summary
print("min diff for p >= 2:", s.conjecture_min_diff, "violations:", s.conjecture_violations)

# %%
# The largest differences sit on a curve attained by two overlapping 0/1 vectors.
for n in (2, 3, 4, 5):
    v, w = extremal_pair(n)
    lhs, rhs = conjecture_sides(3.0, v, w)
    print(n, rhs - lhs, envelope(n, 3.0))
