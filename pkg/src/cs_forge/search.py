"""Seeded Monte Carlo scans of the non-integer exponent inequality.

For unit vectors ``v, w`` and an exponent ``p`` the scanned quantity is

    diff = (‖v‖^p‖w‖^p − ⟨v,w⟩^p) − (‖v^p‖‖w^p‖ − ⟨v^p,w^p⟩)

which is conjectured to be non-negative for ``p >= 2`` and positive vectors.

Randomness: trial ``t`` of a scan with seed ``s`` draws from its own Philox
stream keyed by ``(s, t)``.  Trials are therefore independent of each other
and of how a scan is split up, and a given config always reproduces the same
rows.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import DegenerateDraw, ExponentOutOfRange, InvalidInput
from .inequalities import conjecture_sides
from .report import format_real, make_report
from .vectors import DEFAULT_TOLERANCE, as_vector, is_integer_exponent

__all__ = [
    "NONNEG",
    "GAUSSIAN",
    "CONJECTURE_FLOOR",
    "ScanConfig",
    "ScanRow",
    "ScanSummary",
    "ScanResult",
    "trial_rng",
    "sample_unit_vector",
    "run_scan",
    "envelope",
    "extremal_pair",
    "example_p12",
    "example_p12_coefficient",
    "counterexamples_p01",
    "SearchResult",
    "search_counterexample",
    "emit_figure_data",
]

GAUSSIAN = "gaussian_unit_sphere"
NONNEG = "nonneg_gaussian_unit_sphere"
DISTRIBUTIONS = (GAUSSIAN, NONNEG)

# diffs below this for p >= 2 are reported as conjecture violations
CONJECTURE_FLOOR = -1e-9
ENVELOPE_SLACK = 1e-9
MAX_DRAW_RETRIES = 100
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ScanConfig:
    """Parameters of a scan.

    ``p`` is drawn uniformly from the half-open interval ``(p_min, p_max]``
    unless ``p_grid`` is given, in which case trial ``t`` uses
    ``p_grid[t % len(p_grid)]``.
    """

    seed: int = 0
    trials: int = 10_000
    n: int = 2
    p_range: tuple = (0.0, 5.0)
    p_grid: Optional[tuple] = None
    vector_distribution: str = NONNEG

    def __post_init__(self):
        if not 0 <= int(self.seed) <= _MASK64:
            raise InvalidInput("seed must be an unsigned 64-bit integer")
        if int(self.trials) < 1:
            raise InvalidInput("trials must be >= 1")
        if int(self.n) < 1:
            raise InvalidInput("n must be >= 1")
        lo, hi = (float(x) for x in self.p_range)
        if not (0 <= lo <= hi and hi > 0 and math.isfinite(hi)):
            raise InvalidInput(f"p_range must satisfy 0 <= p_min <= p_max, p_max > 0; got {self.p_range}")
        object.__setattr__(self, "p_range", (lo, hi))
        if self.p_grid is not None:
            grid = tuple(float(p) for p in self.p_grid)
            if not grid or any(not (p > 0 and math.isfinite(p)) for p in grid):
                raise InvalidInput("p_grid must be a non-empty list of positive exponents")
            object.__setattr__(self, "p_grid", grid)
        if self.vector_distribution not in DISTRIBUTIONS:
            raise InvalidInput(f"vector_distribution must be one of {DISTRIBUTIONS}")
        if self.vector_distribution == GAUSSIAN and not (
            self.p_grid is not None and all(is_integer_exponent(p) for p in self.p_grid)
        ):
            raise InvalidInput("signed Gaussian vectors are only allowed with an integer p_grid")


class ScanRow(NamedTuple):
    p: float
    diff: float
    trial_index: int


@dataclass(frozen=True)
class ScanSummary:
    min_diff: float
    argmin_trial: int
    argmin_p: float
    argmin_v: np.ndarray
    argmin_w: np.ndarray
    negative_count: int  # diff < -(tolerance slack)
    conjecture_trials: int  # trials with p >= 2
    conjecture_min_diff: Optional[float]
    conjecture_violations: int  # p >= 2 and diff < CONJECTURE_FLOOR
    envelope_violations: Optional[int]  # diff > envelope + slack; None when n < 2
    envelope_violations_p_gt_1: Optional[int]

    @property
    def flagged(self):
        return self.conjecture_violations > 0

    def to_dict(self):
        return {
            "min_diff": self.min_diff,
            "argmin_trial": self.argmin_trial,
            "argmin_p": self.argmin_p,
            "argmin_v": [float(x) for x in self.argmin_v],
            "argmin_w": [float(x) for x in self.argmin_w],
            "negative_count": self.negative_count,
            "conjecture_trials": self.conjecture_trials,
            "conjecture_min_diff": self.conjecture_min_diff,
            "conjecture_violations": self.conjecture_violations,
            "envelope_violations": self.envelope_violations,
            "envelope_violations_p_gt_1": self.envelope_violations_p_gt_1,
            "flagged": self.flagged,
        }


@dataclass(frozen=True)
class ScanResult:
    config: ScanConfig
    p: np.ndarray = field(repr=False)
    diff: np.ndarray = field(repr=False)
    summary: ScanSummary

    def __len__(self):
        return self.p.size

    @property
    def rows(self):
        return [ScanRow(float(p), float(d), t) for t, (p, d) in enumerate(zip(self.p, self.diff))]


def trial_rng(seed, trial):
    """Independent generator for one trial, keyed by ``(seed, trial)``."""
    key = (int(seed) & _MASK64) | ((int(trial) & _MASK64) << 64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_unit_vector(rng, n, dist=NONNEG):
    """Uniform draw from the unit sphere (or its non-negative orthant)."""
    if n < 1:
        raise InvalidInput("n must be >= 1")
    if dist not in DISTRIBUTIONS:
        raise InvalidInput(f"unknown distribution {dist!r}")
    for _ in range(MAX_DRAW_RETRIES):
        x = rng.standard_normal(n)
        if dist == NONNEG:
            x = np.abs(x)
        nrm = math.sqrt(float(x @ x))
        if nrm > 0:
            return x / nrm
    raise DegenerateDraw(f"{MAX_DRAW_RETRIES} consecutive zero draws")


def _draw_trial(cfg, t):
    rng = trial_rng(cfg.seed, t)
    if cfg.p_grid is not None:
        p = cfg.p_grid[t % len(cfg.p_grid)]
    else:
        lo, hi = cfg.p_range
        p = hi - (hi - lo) * rng.random()
    v = sample_unit_vector(rng, cfg.n, cfg.vector_distribution)
    w = sample_unit_vector(rng, cfg.n, cfg.vector_distribution)
    return p, v, w


def envelope(n, p):
    """Observed upper boundary ``1 − (⌊(n+1)/2⌋·⌈(n+1)/2⌉)^{(1−p)/2}`` of the scan."""
    if n < 2:
        raise InvalidInput("envelope needs n >= 2")
    if not p > 0:
        raise ExponentOutOfRange("envelope needs p > 0")
    return 1.0 - (((n + 1) // 2) * ((n + 2) // 2)) ** ((1.0 - p) / 2.0)


def extremal_pair(n):
    """Unit vectors attaining the envelope: supports of sizes ⌊(n+1)/2⌋ and ⌈(n+1)/2⌉ sharing one index."""
    if n < 2:
        raise InvalidInput("extremal_pair needs n >= 2")
    a, b = (n + 1) // 2, (n + 2) // 2
    v = np.zeros(n)
    w = np.zeros(n)
    v[:a] = 1.0 / math.sqrt(a)
    w[n - b:] = 1.0 / math.sqrt(b)
    return v, w


def run_scan(cfg, tol=None):
    tol = DEFAULT_TOLERANCE if tol is None else tol
    ps = np.empty(cfg.trials)
    diffs = np.empty(cfg.trials)
    best = (math.inf, -1, None, None, None)
    negative = 0
    for t in range(cfg.trials):
        p, v, w = _draw_trial(cfg, t)
        lhs, rhs = conjecture_sides(p, v, w)
        diff = rhs - lhs
        ps[t] = p
        diffs[t] = diff
        if diff < -tol.slack(lhs, rhs):
            negative += 1
        if diff < best[0]:
            best = (diff, t, p, v, w)

    in_range = ps >= 2
    conj = diffs[in_range]
    env_bad = env_bad_gt1 = None
    if cfg.n >= 2:
        top = 1.0 - (((cfg.n + 1) // 2) * ((cfg.n + 2) // 2)) ** ((1.0 - ps) / 2.0)
        over = diffs > top + ENVELOPE_SLACK
        env_bad = int(np.count_nonzero(over))
        env_bad_gt1 = int(np.count_nonzero(over & (ps > 1)))
    summary = ScanSummary(
        min_diff=float(best[0]),
        argmin_trial=best[1],
        argmin_p=float(best[2]),
        argmin_v=best[3],
        argmin_w=best[4],
        negative_count=negative,
        conjecture_trials=int(conj.size),
        conjecture_min_diff=float(conj.min()) if conj.size else None,
        conjecture_violations=int(np.count_nonzero(conj < CONJECTURE_FLOOR)),
        envelope_violations=env_bad,
        envelope_violations_p_gt_1=env_bad_gt1,
    )
    return ScanResult(cfg, ps, diffs, summary)


def emit_figure_data(cfg, sink, include_envelope=False):
    """Write ``p,diff`` (optionally ``,envelope``) CSV rows to a text sink; return the row count."""
    if include_envelope and cfg.n < 2:
        raise InvalidInput("the envelope column needs n >= 2")
    result = run_scan(cfg)
    sink.write("p,diff,envelope\n" if include_envelope else "p,diff\n")
    for p, d in zip(result.p, result.diff):
        line = f"{format_real(p)},{format_real(d)}"
        if include_envelope:
            line += "," + format_real(envelope(cfg.n, p))
        sink.write(line + "\n")
    return len(result)


# -- explicit counterexamples ---------------------------------------------------


def _conjecture_report(name, p, v, w, tol):
    lhs, rhs = conjecture_sides(float(p), v, w)
    return make_report(name, lhs, rhs, {"p": p, "v": v, "w": w}, tol)


def example_p12_coefficient(p):
    """Second-order coefficient of the margin in ``eps``: ``p·2^p/8 − p²/4``."""
    return p * 2.0**p / 8.0 - p * p / 4.0


def example_p12(p, eps, tol=None):
    """Margin for ``v = (1,1)``, ``w = (1, 1+eps)``; negative for small ``eps`` when ``1 < p < 2``."""
    if not 1 < p < 2:
        raise ExponentOutOfRange(f"p must lie in (1, 2), got {p}")
    if not eps >= 0:
        raise InvalidInput(f"eps must be non-negative, got {eps}")
    v = np.array([1.0, 1.0])
    w = np.array([1.0, 1.0 + eps])
    return _conjecture_report("example-p12", p, v, w, tol)


P01_PAIRS = (
    ("p01-pair1", (1.0, 1.0), (1.0, 2.0)),
    ("p01-pair2", (1.0, 1.0), (0.0, 1.0)),
)


def counterexamples_p01(grid=None, tol=None):
    """Reports for both fixed pairs on a grid in ``(0, 1)``.

    The first pair has RHS > LHS and the second RHS < LHS at every grid point,
    so neither direction of the inequality holds for ``0 < p < 1``.
    """
    if grid is None:
        grid = (np.arange(20) + 0.5) / 20
    reports = []
    for p in grid:
        if not 0 < p < 1:
            raise ExponentOutOfRange(f"grid points must lie in (0, 1), got {p}")
        for name, v, w in P01_PAIRS:
            reports.append(_conjecture_report(name, float(p), np.array(v), np.array(w), tol))
    return reports


class SearchResult(NamedTuple):
    diff: float
    p: float
    v: np.ndarray
    w: np.ndarray
    restart: int
    evaluations: int


def search_counterexample(
    n,
    p_range=(1.0, 2.0),
    seed=0,
    restarts=1000,
    initial_step=0.25,
    min_step=1e-6,
    stale_limit=20,
    decay=0.5,
    max_steps=2000,
):
    """Hill-climb on ``(v, w, p)`` towards the most negative ``diff``.

    Each restart starts from a random non-negative unit pair and ``p`` in
    ``p_range``; the step size is multiplied by ``decay`` after
    ``stale_limit`` proposals without improvement.
    """
    lo, hi = (float(x) for x in p_range)
    if not 0 < lo < hi:
        raise InvalidInput(f"p_range must satisfy 0 < p_min < p_max, got {p_range}")
    n = int(n)
    if n < 1:
        raise InvalidInput("n must be >= 1")

    def score(p, v, w):
        lhs, rhs = conjecture_sides(p, v, w)
        return rhs - lhs

    def nudge(x, step, rng):
        y = np.abs(x + step * rng.standard_normal(x.size))
        nrm = math.sqrt(float(y @ y))
        return x if nrm == 0 else y / nrm

    best = None
    evaluations = 0
    for r in range(restarts):
        rng = trial_rng(seed, r)
        p = lo + (hi - lo) * rng.random()
        v = sample_unit_vector(rng, n)
        w = sample_unit_vector(rng, n)
        cur = score(p, v, w)
        evaluations += 1
        step, stale = initial_step, 0
        for _ in range(max_steps):
            if step < min_step:
                break
            p_new = min(max(p + step * rng.standard_normal() * (hi - lo), lo), hi)
            v_new, w_new = nudge(v, step, rng), nudge(w, step, rng)
            cand = score(p_new, v_new, w_new)
            evaluations += 1
            if cand < cur:
                p, v, w, cur = p_new, v_new, w_new, cand
                stale = 0
            else:
                stale += 1
                if stale >= stale_limit:
                    step *= decay
                    stale = 0
        if best is None or cur < best.diff:
            best = SearchResult(cur, p, v, w, r, 0)
    return best._replace(evaluations=evaluations)
