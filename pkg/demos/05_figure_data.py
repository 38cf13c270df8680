# %% [markdown]
# Write the p-versus-difference scatter as CSV.  Plotting is left to any tool
# that reads CSV.
#
#     python demos/05_figure_data.py out.csv [n] [trials]

# %%
import sys

from cs_forge import ScanConfig, emit_figure_data

path = sys.argv[1] if len(sys.argv) > 1 else "figure_n2.csv"
n = int(sys.argv[2]) if len(sys.argv) > 2 else 2
trials = int(sys.argv[3]) if len(sys.argv) > 3 else 10_000

cfg = ScanConfig(seed=7, trials=trials, n=n, p_range=(0.0, 5.0))
with open(path, "w", newline="\n") as fh:
    rows = emit_figure_data(cfg, fh, include_envelope=True)
print(f"wrote {rows} rows to {path}")
