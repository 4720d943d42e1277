"""Median-preserving income transfers.

The poverty-line levy: incomes below b are raised to b; the required amount
per capita, d = b - C(F;p0)/p0 with b the p0-quantile, is charged to every
income above the (1-p0)-quantile c.  The transferred income distribution has
atoms at b and c; its quantile function is the four-branch form

    Q_Y(p) = b            for p < F(b)
           = Q(p)         for F(b) <= p < F(c)
           = c            for F(c) <= p < F(c+d)
           = Q(p) - d     for p >= F(c+d).

Such a transfer keeps the median fixed and can only lower every inequality
coefficient.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import Distribution, HeavyTailError
from .empirical import Grid

__all__ = [
    "TransferSpec",
    "TransferredDistribution",
    "levy_amount",
    "transferred_quantile",
    "transfer_effect",
    "TransferEffect",
    "verify_median_preserving",
]


@dataclass(frozen=True)
class TransferSpec:
    """Levy parameters: poverty line b, levy threshold c, per-capita levy d."""

    b: float
    c: float
    d: float
    p0: float

    def __post_init__(self):
        if not (0 < self.b < self.c):
            raise ValueError("need 0 < b < c")
        if self.d <= 0:
            raise ValueError("levy amount d must be > 0")
        if not (0 < self.p0 < 0.5):
            raise ValueError("p0 must lie in (0, 0.5)")


def levy_amount(model: Distribution, p0: float) -> TransferSpec:
    """Build the levy spec for poverty line b = x_{p0} and threshold c = x_{1-p0}.

    d = b - C(F;p0)/p0, the per-capita shortfall of the poorest share p0.
    """
    if not (0 < p0 < 0.5):
        raise ValueError("p0 must lie in (0, 0.5)")
    if math.isinf(model.mean()):
        raise HeavyTailError("levy sizing uses cumulative income; model mean is infinite")
    b = float(model.quantile(p0))
    c = float(model.quantile(1 - p0))
    d = b - float(model.cumulative_income(p0)) / p0
    return TransferSpec(b=b, c=c, d=d, p0=p0)


@dataclass(frozen=True)
class TransferredDistribution:
    """Income distribution after applying a levy transfer to a base model."""

    base: Distribution
    spec: TransferSpec

    def quantile(self, p):
        return transferred_quantile(self, p)

    def median(self) -> float:
        return float(self.quantile(0.5))

    def cumulative_income(self, p):
        """C(F_Y; p), piecewise from the base model's cumulative income."""
        p = np.asarray(p, dtype=float)
        base, s = self.base, self.spec
        Fb = float(base.cdf(s.b))
        Fc = float(base.cdf(s.c))
        Fcd = float(base.cdf(s.c + s.d))
        Cb = float(base.cumulative_income(Fb))
        Cc = float(base.cumulative_income(Fc))
        Ccd = float(base.cumulative_income(Fcd))

        out = np.where(p <= Fb, p * s.b, 0.0)
        mid = (p > Fb) & (p <= Fc)
        out = np.where(mid, Fb * s.b + base.cumulative_income(np.clip(p, 0, 1)) - Cb, out)
        flat = (p > Fc) & (p <= Fcd)
        base_at_c = Fb * s.b + Cc - Cb
        out = np.where(flat, base_at_c + s.c * (p - Fc), out)
        top = p > Fcd
        base_at_cd = base_at_c + s.c * (Fcd - Fc)
        out = np.where(top,
                       base_at_cd + base.cumulative_income(np.clip(p, 0, 1)) - Ccd
                       - s.d * (p - Fcd),
                       out)
        return float(out) if out.ndim == 0 else out


def transferred_quantile(t: TransferredDistribution, p):
    """Quantile function of the transferred income; non-decreasing in p."""
    p = np.asarray(p, dtype=float)
    if not np.all((p >= 0) & (p < 1)):
        raise ValueError("probability must lie in [0, 1)")
    base, s = t.base, t.spec
    Fb = float(base.cdf(s.b))
    Fc = float(base.cdf(s.c))
    Fcd = float(base.cdf(s.c + s.d))
    q = base.quantile(np.clip(p, 0, 1))
    out = np.where(p < Fb, s.b,
                   np.where(p < Fc, q,
                            np.where(p < Fcd, s.c, q - s.d)))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class TransferEffect:
    """Coefficient changes G_i(F) - G_i(F_Y) at one levy size p0."""

    p0: float
    before: tuple[float, float, float, float]
    after: tuple[float, float, float, float]

    @property
    def absolute(self) -> tuple[float, ...]:
        return tuple(b - a for b, a in zip(self.before, self.after))

    @property
    def relative(self) -> tuple[float, ...]:
        return tuple((b - a) / b if b != 0 else 0.0 for b, a in zip(self.before, self.after))


def transfer_effect(model: Distribution, p0: float, J: int = 1000) -> TransferEffect:
    """Before/after coefficients for the levy at p0, on the grid of size J."""
    from .coefficients import all_coefficients  # local import to avoid a cycle

    spec = levy_amount(model, p0)
    t = TransferredDistribution(model, spec)
    pj = Grid(J).midpoints
    before = all_coefficients(model, J).g

    # transferred curves from the piecewise quantile function
    lo = transferred_quantile(t, pj / 2)
    hi = transferred_quantile(t, 1 - pj / 2)
    med = t.median()
    g1 = float(np.mean(2 * (pj - pj * lo / med)))
    g2 = float(np.mean(2 * (pj - pj * lo / hi)))
    g3 = float(np.mean(2 * (pj - 2 * pj * lo / (lo + hi))))
    mu = model.mean()  # the levy is budget balanced, so the mean is preserved
    g0 = float(np.mean(2 * (pj - t.cumulative_income(pj) / mu)))
    return TransferEffect(p0=p0, before=before, after=(g0, g1, g2, g3))


def verify_median_preserving(model: Distribution, transferred,
                             grid: Grid | None = None, tol: float = 1e-9) -> dict:
    """Check the defining properties of a median-preserving transfer.

    ``transferred`` is anything with a ``quantile(p)`` method (for instance a
    :class:`TransferredDistribution`).  The median must be unchanged and the
    transferred quantiles must satisfy Q_Y(p) >= Q(p) below the median and
    Q_Y(p) <= Q(p) above it (equivalent to the CDF conditions on either side
    of the median).
    """
    grid = grid or Grid()
    pj = grid.midpoints
    qy = np.asarray(transferred.quantile(pj), dtype=float)
    qx = np.asarray(model.quantile(pj), dtype=float)
    below = pj < 0.5
    above = pj > 0.5
    med_y = float(transferred.quantile(0.5))
    median_ok = abs(med_y - model.median()) <= tol * max(1.0, model.median())
    lower_ok = bool(np.all(qy[below] >= qx[below] - tol * np.maximum(1.0, qx[below])))
    upper_ok = bool(np.all(qy[above] <= qx[above] + tol * np.maximum(1.0, qx[above])))
    return {
        "median_preserved": median_ok,
        "raises_below_median": lower_ok,
        "lowers_above_median": upper_ok,
        "ok": median_ok and lower_ok and upper_ok,
    }
