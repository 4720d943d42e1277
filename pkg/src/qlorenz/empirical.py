"""Distribution-free estimation from income samples.

Quantiles use the Hyndman-Fan Type 8 estimator: linear interpolation of the
order statistics at plotting positions (k - 1/3)/(n + 1/3), clamped to the
extreme order statistics outside that range.  Inequality curve estimates are
plug-in substitutions of these sample quantiles; coefficient estimates
average curve shortfalls over a midpoint grid in (0, 1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "Sample",
    "Grid",
    "hf8_quantile",
    "empirical_lorenz",
    "empirical_curve",
    "gini_hat",
    "read_income_csv",
    "ZeroIncomeError",
]


class ZeroIncomeError(ValueError):
    """All incomes are zero (or a required quantile estimate is zero)."""


class Sample:
    """A sorted sample of n >= 2 finite, non-negative incomes."""

    __slots__ = ("values", "_plot_pos")

    def __init__(self, values):
        x = np.asarray(values, dtype=float).ravel()
        if x.size < 2:
            raise ValueError("need at least 2 observations")
        if not np.all(np.isfinite(x)):
            raise ValueError("incomes must be finite")
        if np.any(x < 0):
            raise ValueError("incomes must be non-negative")
        self.values = np.sort(x)
        self._plot_pos = None

    def __repr__(self):
        return f"Sample(n={self.n})"

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def total(self) -> float:
        return float(self.values.sum())

    def plotting_positions(self) -> np.ndarray:
        """Type 8 positions p_[k] = (k - 1/3)/(n + 1/3), k = 1..n."""
        if self._plot_pos is None:
            k = np.arange(1, self.n + 1)
            self._plot_pos = (k - 1 / 3) / (self.n + 1 / 3)
        return self._plot_pos


@dataclass(frozen=True)
class Grid:
    """Midpoint grid p_j = (j - 1/2)/J, j = 1..J, strictly inside (0, 1)."""

    J: int = 1000
    midpoints: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.J < 2:
            raise ValueError("grid size J must be >= 2")
        object.__setattr__(self, "midpoints", (np.arange(1, self.J + 1) - 0.5) / self.J)


def _check_open_prob(p):
    p = np.asarray(p, dtype=float)
    if not np.all((p > 0) & (p < 1)):
        raise ValueError("probability must lie strictly in (0, 1)")
    return p


def hf8_quantile(sample: Sample, p):
    """Type 8 sample quantile at p (scalar or array), p in (0, 1).

    Clamps to x_(1) below the first plotting position and to x_(n) above the
    last, so estimates stay inside the sample range.
    """
    p = _check_open_prob(p)
    out = np.interp(p, sample.plotting_positions(), sample.values)
    return float(out) if out.ndim == 0 else out


def empirical_lorenz(sample: Sample):
    """Empirical Lorenz polygon vertices: (i/n, cumulative share), i = 0..n."""
    total = sample.total
    if total <= 0:
        raise ZeroIncomeError("all incomes are zero; Lorenz shares undefined")
    n = sample.n
    shares = np.concatenate([[0.0], np.cumsum(sample.values) / total])
    return np.arange(n + 1) / n, shares


def empirical_curve(sample: Sample, index: int, p):
    """Plug-in estimate of the inequality curve L_index at p, index in {1, 2, 3}."""
    if index not in (1, 2, 3):
        raise ValueError("curve index must be 1, 2, or 3")
    p = _check_open_prob(p)
    lo = hf8_quantile(sample, p / 2)
    if index == 1:
        med = hf8_quantile(sample, 0.5)
        denom = med
    else:
        hi = hf8_quantile(sample, 1 - p / 2)
        denom = hi if index == 2 else (lo + hi) / 2
    if np.any(np.asarray(denom) == 0):
        raise ZeroIncomeError("upper quantile estimate is zero; curve ratio undefined")
    # index 3 has denominator (lo + hi)/2, so p*lo/denom covers all three cases
    out = p * lo / denom
    return float(out) if np.asarray(out).ndim == 0 else out


def gini_hat(sample: Sample, index: int, grid: Grid | None = None) -> float:
    """Grid estimator of the inequality coefficient, index in {0, 1, 2, 3}.

    index 0 is twice the area between the diagonal and the piecewise-linear
    empirical Lorenz polygon (exact trapezoid area, no grid needed); indices
    1-3 average 2*(p_j - Lhat_index(p_j)) over the grid midpoints.
    """
    if index == 0:
        _, shares = empirical_lorenz(sample)
        # exact area under the polygon via the trapezoid rule (exact here)
        area = (shares[:-1] + shares[1:]).sum() / (2 * sample.n)
        return 1.0 - 2.0 * area
    grid = grid or Grid()
    pj = grid.midpoints
    values = empirical_curve(sample, index, pj)
    return float(np.mean(2 * (pj - values)))


def read_income_csv(path) -> Sample:
    """Read one income per line; optional header; '#' comment lines ignored.

    Negative or non-numeric entries are reported with their line number.
    """
    values = []
    with open(Path(path), "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            token = line.split(",")[0].strip()
            try:
                value = float(token)
            except ValueError:
                if lineno == 1:
                    continue  # header
                raise ValueError(f"{path}:{lineno}: non-numeric income {token!r}") from None
            if value < 0:
                raise ValueError(f"{path}:{lineno}: negative income {value!r}")
            if not np.isfinite(value):
                raise ValueError(f"{path}:{lineno}: non-finite income {token!r}")
            values.append(value)
    if len(values) < 2:
        raise ValueError(f"{path}: need at least 2 incomes, found {len(values)}")
    return Sample(values)
