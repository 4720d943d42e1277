"""Monte Carlo studies of the coefficient estimators.

Replicate r of a study draws its own substream derived from (master seed, r)
via `numpy.random.SeedSequence` spawn keys, so results are identical no
matter how replicates are scheduled or chunked across workers.  "Standard
error" is the root mean squared error about the population grid value
G_i(J), matching the estimand of the grid estimator.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .coefficients import coefficient, gini0
from .distributions import Distribution, parse_distribution
from .empirical import Grid

__all__ = [
    "substream",
    "StudyConfig",
    "CellResult",
    "StudyResult",
    "ghat_matrix",
    "se_study",
    "ci_study",
    "sample_size_for_se",
]

Z_95 = 1.959963984540054  # two-sided 95% normal quantile


def substream(master_seed: int, *key: int) -> np.random.Generator:
    """Generator for one replicate, keyed by (master seed, *key).

    Independent of scheduling: the stream depends only on the key, never on
    which worker or chunk draws it.
    """
    return np.random.default_rng(
        np.random.SeedSequence(master_seed, spawn_key=tuple(int(k) for k in key)))


@dataclass(frozen=True)
class StudyConfig:
    """What to simulate: model, estimator indices, sample sizes, replicates."""

    model_spec: str
    indices: tuple[int, ...] = (1, 2, 3)
    n_values: tuple[int, ...] = (25, 100)
    replicates: int = 1000
    J: int = 1000
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.replicates < 2:
            raise ValueError("need at least 2 replicates")
        if any(n < 2 for n in self.n_values):
            raise ValueError("sample sizes must be >= 2")
        if any(i not in (0, 1, 2, 3) for i in self.indices):
            raise ValueError("estimator indices must be in {0, 1, 2, 3}")

    def model(self) -> Distribution:
        return parse_distribution(self.model_spec)


@dataclass(frozen=True)
class CellResult:
    """One (model, index, n) cell of a study."""

    index: int
    n: int
    true_value: float
    mean_estimate: float
    bias: float
    root_n_se: float          # sqrt(n) * RMSE about the true grid value
    coverage: float | None = None
    ci_width: float | None = None


@dataclass(frozen=True)
class StudyResult:
    config: StudyConfig
    cells: tuple[CellResult, ...] = field(default=())

    def cell(self, index: int, n: int) -> CellResult:
        for c in self.cells:
            if c.index == index and c.n == n:
                return c
        raise KeyError(f"no cell for index={index}, n={n}")

    def csv(self) -> str:
        lines = ["index,n,true,mean,bias,sqrt_n_se,coverage,ci_width"]
        for c in self.cells:
            cov = "" if c.coverage is None else f"{c.coverage:.4f}"
            wid = "" if c.ci_width is None else f"{c.ci_width:.4f}"
            lines.append(f"{c.index},{c.n},{c.true_value:.6f},{c.mean_estimate:.6f},"
                         f"{c.bias:.6f},{c.root_n_se:.6f},{cov},{wid}")
        return "\n".join(lines) + "\n"


def ghat_matrix(sorted_rows: np.ndarray, indices, grid: Grid) -> dict[int, np.ndarray]:
    """Grid coefficient estimates for every row of a (reps, n) sorted matrix.

    Vectorizes the Type 8 quantile interpolation across rows: the plotting
    positions depend only on n, so the interpolation weights are shared.
    """
    reps, n = sorted_rows.shape
    pk = (np.arange(1, n + 1) - 1 / 3) / (n + 1 / 3)
    pj = grid.midpoints

    def interp(p):
        idx = np.clip(np.searchsorted(pk, p) - 1, 0, n - 2)
        span = pk[idx + 1] - pk[idx]
        w = np.clip((p - pk[idx]) / span, 0.0, 1.0)
        w = np.where(p <= pk[0], 0.0, np.where(p >= pk[-1], 1.0, w))
        idx = np.where(p >= pk[-1], n - 2, idx)
        return sorted_rows[:, idx] * (1 - w) + sorted_rows[:, idx + 1] * w

    need_hi = any(i in (2, 3) for i in indices)
    lo = interp(pj / 2) if any(i in (1, 2, 3) for i in indices) else None
    hi = interp(1 - pj / 2) if need_hi else None

    out: dict[int, np.ndarray] = {}
    for i in indices:
        if i == 0:
            shares = np.cumsum(sorted_rows, axis=1)
            totals = shares[:, -1:]
            if np.any(totals <= 0):
                raise ValueError("all-zero sample encountered; Gini undefined")
            L = shares / totals
            area = (L.sum(axis=1) - L[:, -1] / 2) / n  # trapezoids incl. leading zero
            out[0] = 1 - 2 * area
        elif i == 1:
            med = interp(np.array([0.5]))
            out[1] = 1 - 2 * np.mean(pj * lo / med, axis=1)
        elif i == 2:
            out[2] = 1 - 2 * np.mean(pj * lo / hi, axis=1)
        else:
            out[3] = 1 - 2 * np.mean(2 * pj * lo / (lo + hi), axis=1)
    return out


def _true_values(model: Distribution, indices, J: int) -> dict[int, float]:
    return {i: (gini0(model, J) if i == 0 else coefficient(model, i, J)) for i in indices}


def _simulate_chunk(args):
    model_spec, n, seed, rep_indices, indices, J = args
    model = parse_distribution(model_spec)
    rows = np.empty((len(rep_indices), n))
    for k, r in enumerate(rep_indices):
        rows[k] = model.sample(n, substream(seed, n, r))
    return ghat_matrix(rows, indices, Grid(J))


def _all_estimates(config: StudyConfig, n: int) -> dict[int, np.ndarray]:
    """Per-replicate estimates for one n, chunked (and optionally parallel)."""
    reps = config.replicates
    chunk = 512
    tasks = [(config.model_spec, n, config.seed, list(range(s, min(s + chunk, reps))),
              tuple(config.indices), config.J)
             for s in range(0, reps, chunk)]
    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(_simulate_chunk, tasks))
    else:
        parts = [_simulate_chunk(t) for t in tasks]
    return {i: np.concatenate([p[i] for p in parts]) for i in config.indices}


def se_study(config: StudyConfig) -> StudyResult:
    """sqrt(n) * RMSE of the grid estimators, per (index, n) cell."""
    model = config.model()
    true = _true_values(model, config.indices, config.J)
    cells = []
    for n in config.n_values:
        estimates = _all_estimates(config, n)
        for i in config.indices:
            g = estimates[i]
            err = g - true[i]
            cells.append(CellResult(
                index=i, n=n, true_value=true[i],
                mean_estimate=float(g.mean()),
                bias=float(g.mean() - true[i]),
                root_n_se=float(math.sqrt(n) * np.sqrt(np.mean(err ** 2))),
            ))
    return StudyResult(config=config, cells=tuple(cells))


def ci_study(config: StudyConfig, sigma: dict[int, float]) -> StudyResult:
    """Coverage and width of the intervals Ghat_i +/- 1.96 sigma_i / sqrt(n).

    ``sigma`` maps estimator index to its asymptotic SE (from the influence
    module, or external constants).  Width is deterministic.
    """
    model = config.model()
    indices = tuple(i for i in config.indices if i != 0)
    true = _true_values(model, indices, config.J)
    cells = []
    for n in config.n_values:
        estimates = _all_estimates(
            StudyConfig(config.model_spec, indices, (n,), config.replicates,
                        config.J, config.seed, config.workers), n)
        for i in indices:
            g = estimates[i]
            half = Z_95 * sigma[i] / math.sqrt(n)
            covered = np.abs(g - true[i]) <= half
            err = g - true[i]
            cells.append(CellResult(
                index=i, n=n, true_value=true[i],
                mean_estimate=float(g.mean()),
                bias=float(g.mean() - true[i]),
                root_n_se=float(math.sqrt(n) * np.sqrt(np.mean(err ** 2))),
                coverage=float(np.mean(covered)),
                ci_width=2 * half,
            ))
    return StudyResult(config=config, cells=tuple(cells))


def sample_size_for_se(target_se: float, index: int) -> int:
    """Smallest n with SE[Ghat_index] <= target, from the empirical rules.

    The sqrt(n)-scaled standard errors are bounded by 0.55 for index 1 and
    0.43 for indices 2 and 3 across the catalogue, giving n = (bound/c)^2.
    """
    if target_se <= 0:
        raise ValueError("target standard error must be > 0")
    if index == 1:
        bound = 0.55
    elif index in (2, 3):
        bound = 0.43
    else:
        raise ValueError("sample size rules exist for indices 1, 2, 3 only")
    return math.ceil((bound / target_se) ** 2)
