"""Population inequality curves.

For a model F with quantile function x_p:

* L0(p) = C(F;p)/mu        -- the Lorenz curve (needs a finite mean),
* L1(p) = p x_{p/2}/x_{1/2},
* L2(p) = p x_{p/2}/x_{1-p/2},
* L3(p) = 2p x_{p/2}/(x_{p/2} + x_{1-p/2}).

All are scale invariant, increase from 0 to 1, and satisfy L_i(p) <= p.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .distributions import Distribution, HeavyTailError
from .empirical import Grid

__all__ = ["CurveTable", "curve_value", "lorenz_value", "curve_table"]


@dataclass(frozen=True)
class CurveTable:
    """Sampled points (p, value) of one inequality curve."""

    index: int
    p: np.ndarray
    values: np.ndarray
    model_spec: str = ""

    def to_csv(self) -> str:
        lines = ["p,value"]
        lines += [f"{pi:.10g},{vi:.10g}" for pi, vi in zip(self.p, self.values)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({
            "index": self.index,
            "model": self.model_spec,
            "points": [[float(pi), float(vi)] for pi, vi in zip(self.p, self.values)],
        })


def curve_value(model: Distribution, index: int, p):
    """L_index(p) for index in {1, 2, 3}; p scalar or array in (0, 1)."""
    if index not in (1, 2, 3):
        raise ValueError("curve index must be 1, 2, or 3")
    p = np.asarray(p, dtype=float)
    if not np.all((p > 0) & (p < 1)):
        raise ValueError("probability must lie strictly in (0, 1)")
    lo = model.quantile(p / 2)
    if index == 1:
        out = p * lo / model.quantile(0.5)
    elif index == 2:
        out = p * lo / model.quantile(1 - p / 2)
    else:
        hi = model.quantile(1 - p / 2)
        out = 2 * p * lo / (lo + hi)
    return float(out) if np.asarray(out).ndim == 0 else out


def lorenz_value(model: Distribution, p, extend_heavy_tail: bool = False):
    """Lorenz curve L0(p) = C(F;p)/mu.

    With an infinite mean this raises :class:`HeavyTailError` unless
    ``extend_heavy_tail`` is set, in which case the curve is extended by 0
    on (0, 1) (and the coefficient becomes 1).
    """
    p = np.asarray(p, dtype=float)
    if not np.all((p >= 0) & (p <= 1)):
        raise ValueError("probability must lie in [0, 1]")
    mu = model.mean()
    if math.isinf(mu):
        if not extend_heavy_tail:
            raise HeavyTailError(
                f"{model!r} has infinite mean; Lorenz curve undefined "
                "(pass extend_heavy_tail=True for the 0-extension)")
        out = np.where(p == 1.0, 1.0, 0.0)
        return float(out) if out.ndim == 0 else out
    out = model.cumulative_income(p) / mu
    return float(out) if np.asarray(out).ndim == 0 else out


def curve_table(model: Distribution, index: int, grid: Grid | None = None,
                extend_heavy_tail: bool = False) -> CurveTable:
    """Evaluate a curve on the grid midpoints, with (0,0) and (1,1) endpoints added."""
    grid = grid or Grid()
    pj = grid.midpoints
    if index == 0:
        vals = lorenz_value(model, pj, extend_heavy_tail=extend_heavy_tail)
    else:
        vals = curve_value(model, index, pj)
    p = np.concatenate([[0.0], pj, [1.0]])
    v = np.concatenate([[0.0], np.asarray(vals), [1.0]])
    return CurveTable(index=index, p=p, values=v, model_spec=model.spec())
