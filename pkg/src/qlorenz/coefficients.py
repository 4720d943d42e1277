"""Population coefficients of inequality.

G_i = 2 * integral of (p - L_i(p)) dp, approximated on the midpoint grid
p_j = (j - 1/2)/J as G_i(J) = (2/J) * sum_j (p_j - L_i(p_j)).  G_0 (the Gini
coefficient) needs a finite mean; under the heavy-tail extension it is set
to exactly 1 and flagged.

`prop1_oracle` is an independent Monte Carlo route: with V the larger of two
incomes drawn from the sub-median population, m the median, and W the
symmetric upper quantile of V,

    G_1 = E[(m - V)/m],  G_2 = E[(W - V)/W],  G_3 = E[(W - V)/(V + W)].
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curves import curve_value, lorenz_value
from .distributions import (ChiSquare, Distribution, Lognormal, ParetoII,
                            Uniform, Weibull)
from .empirical import Grid

__all__ = [
    "coefficient",
    "gini0",
    "all_coefficients",
    "prop1_oracle",
    "OracleEstimate",
    "CoefficientReport",
    "rank_table",
    "RankReport",
    "spearman",
    "average_ranks",
    "REFERENCE_MODELS",
]

#: The 14-model reference catalogue used throughout for comparisons.
REFERENCE_MODELS: tuple[tuple[str, Distribution], ...] = (
    ("Uniform", Uniform()),
    ("ChiSquare(0.5)", ChiSquare(0.5)),
    ("ChiSquare(1)", ChiSquare(1)),
    ("ChiSquare(3)", ChiSquare(3)),
    ("ChiSquare(5)", ChiSquare(5)),
    ("Lognormal", Lognormal()),
    ("Pareto(0.5)", ParetoII(0.5)),
    ("Pareto(1)", ParetoII(1.0)),
    ("Pareto(1.5)", ParetoII(1.5)),
    ("Pareto(2)", ParetoII(2.0)),
    ("Weibull(0.25)", Weibull(0.25)),
    ("Weibull(0.5)", Weibull(0.5)),
    ("Weibull(1)", Weibull(1.0)),
    ("Weibull(4)", Weibull(4.0)),
)


def coefficient(model: Distribution, index: int, J: int = 1000) -> float:
    """G_index(J) for index in {1, 2, 3} via the midpoint grid rule."""
    if index not in (1, 2, 3):
        raise ValueError("coefficient index must be 1, 2, or 3 (use gini0 for 0)")
    pj = Grid(J).midpoints
    return float(np.mean(2 * (pj - curve_value(model, index, pj))))


def gini0(model: Distribution, J: int = 1000) -> float:
    """Gini coefficient G_0(J); exactly 1.0 under the heavy-tail extension."""
    if math.isinf(model.mean()):
        return 1.0
    pj = Grid(J).midpoints
    return float(np.mean(2 * (pj - lorenz_value(model, pj))))


def all_coefficients(model: Distribution, J: int = 1000) -> "CoefficientReport":
    """G_0..G_3 for one model, with the heavy-tail extension flagged."""
    extended = math.isinf(model.mean())
    return CoefficientReport(
        model_spec=model.spec(),
        g=(gini0(model, J),
           coefficient(model, 1, J),
           coefficient(model, 2, J),
           coefficient(model, 3, J)),
        J=J,
        g0_extended=extended,
    )


@dataclass(frozen=True)
class CoefficientReport:
    model_spec: str
    g: tuple[float, float, float, float]
    J: int
    g0_extended: bool = False

    def csv_row(self) -> str:
        flag = "extended" if self.g0_extended else ""
        return ",".join([self.model_spec] + [f"{v:.6f}" for v in self.g] + [flag])


@dataclass(frozen=True)
class OracleEstimate:
    value: float
    se: float
    reps: int

    def agrees_with(self, other: float, k: float = 3.0) -> bool:
        return abs(self.value - other) <= k * self.se


def prop1_oracle(model: Distribution, index: int, reps: int,
                 rng: np.random.Generator) -> OracleEstimate:
    """Monte Carlo estimate of G_index (index in {1, 2, 3}) with its standard error."""
    if index not in (1, 2, 3):
        raise ValueError("oracle index must be 1, 2, or 3")
    if reps < 1:
        raise ValueError("reps must be >= 1")
    # V = max(Y1, Y2) with Y ~ X | X <= median, i.e. Y = Q(U/2)
    u = np.maximum(rng.random(reps), rng.random(reps))
    v = model.quantile(u / 2)
    if index == 1:
        m = model.quantile(0.5)
        vals = (m - v) / m
    else:
        w = model.quantile(1 - u / 2)
        vals = (w - v) / w if index == 2 else (w - v) / (v + w)
    value = float(np.mean(vals))
    se = float(np.std(vals, ddof=1) / math.sqrt(reps)) if reps > 1 else float("inf")
    return OracleEstimate(value=value, se=se, reps=reps)


# ---------------------------------------------------------------------------
# rankings and Spearman correlation
# ---------------------------------------------------------------------------

def average_ranks(values, round_decimals: int | None = 3) -> np.ndarray:
    """Ranks (1 = smallest) with ties sharing the average rank.

    Values are rounded to ``round_decimals`` first (3 by default, matching
    tables printed to 3 dp, which is what creates ties like 4.5).
    """
    x = np.asarray(values, dtype=float)
    if round_decimals is not None:
        x = np.round(x, round_decimals)
    order = np.argsort(x, kind="stable")
    ranks = np.empty(x.size)
    sorted_x = x[order]
    i = 0
    while i < x.size:
        j = i
        while j + 1 < x.size and sorted_x[j + 1] == sorted_x[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2 + 1  # average of ranks i+1..j+1
        i = j + 1
    return ranks


def spearman(a, b, round_decimals: int | None = 3) -> float:
    """Spearman correlation: exact-rank formula on averaged ranks."""
    ra = average_ranks(a, round_decimals)
    rb = average_ranks(b, round_decimals)
    n = ra.size
    if n < 2:
        raise ValueError("need at least 2 observations")
    d2 = float(np.sum((ra - rb) ** 2))
    return 1.0 - 6.0 * d2 / (n * (n * n - 1))


@dataclass(frozen=True)
class RankReport:
    names: tuple[str, ...]
    coefficients: np.ndarray            # shape (n_models, 4): G0..G3
    ranks: np.ndarray                   # same shape, average ranks per column
    correlations: tuple[float, float, float]  # Spearman of G0 with G1, G2, G3
    extended: tuple[bool, ...] = field(default=())

    def csv(self) -> str:
        lines = ["model,G0,R0,G1,R1,G2,R2,G3,R3"]
        for i, name in enumerate(self.names):
            cells = []
            for j in range(4):
                cells.append(f"{self.coefficients[i, j]:.3f}")
                rank = self.ranks[i, j]
                cells.append(f"{rank:g}")
            lines.append(",".join([name] + cells))
        lines.append("spearman_G0_vs,,%.4f,,%.4f,,%.4f," % self.correlations)
        return "\n".join(lines) + "\n"


def rank_table(models=None, J: int = 1000, coefficients=None, names=None,
               round_decimals: int | None = 3) -> RankReport:
    """Per-index rankings and Spearman correlations of G_0 against G_1..G_3.

    Either pass ``models`` (computed with grid size J) or a precomputed
    ``coefficients`` matrix of shape (n, 4).
    """
    extended: tuple[bool, ...] = ()
    if coefficients is None:
        if models is None:
            models = REFERENCE_MODELS
        names = tuple(name for name, _ in models)
        reports = [all_coefficients(model, J) for _, model in models]
        coefficients = np.array([r.g for r in reports])
        extended = tuple(r.g0_extended for r in reports)
    else:
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.ndim != 2 or coefficients.shape[1] != 4:
            raise ValueError("coefficients must have shape (n_models, 4)")
        names = tuple(names) if names else tuple(f"model{i}" for i in range(len(coefficients)))
    if len(coefficients) < 2:
        raise ValueError("need at least 2 models to rank")
    ranks = np.column_stack([average_ranks(coefficients[:, j], round_decimals)
                             for j in range(4)])
    corr = tuple(spearman(coefficients[:, 0], coefficients[:, j], round_decimals)
                 for j in (1, 2, 3))
    return RankReport(names=names, coefficients=coefficients, ranks=ranks,
                      correlations=corr, extended=extended)
