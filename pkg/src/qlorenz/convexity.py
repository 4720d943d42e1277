"""Numerical convexity verification of the inequality curves.

Central second differences approximate L_i''(p) on a grid; a golden-section
refinement localizes the minimum.  Closed-form second derivatives of L_1 are
available for the exponential, Pareto (both types), Weibull, and lognormal
families as analytic oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .curves import curve_value
from .distributions import (Distribution, Exponential, Lognormal, ParetoI,
                            ParetoII, Weibull)

__all__ = [
    "second_difference",
    "analytic_L1_second",
    "lognormal_convexity_condition",
    "convexity_sweep",
    "ConvexityReport",
]

_GOLDEN = (math.sqrt(5) - 1) / 2


def second_difference(model: Distribution, index: int, p, h: float = 1e-4):
    """Central second difference (L(p-h) - 2 L(p) + L(p+h)) / h^2."""
    p = np.asarray(p, dtype=float)
    if h <= 0:
        raise ValueError("step h must be > 0")
    if np.any(p - h <= 0) or np.any(p + h >= 1):
        raise ValueError("step too large: need 0 < p-h and p+h < 1")
    out = (curve_value(model, index, p - h) - 2 * curve_value(model, index, p)
           + curve_value(model, index, p + h)) / h ** 2
    return float(out) if np.asarray(out).ndim == 0 else out


def analytic_L1_second(model: Distribution, p):
    """Closed-form L_1''(p) for the families where one is known.

    Raises TypeError for unsupported families (uniform, chi-square, beta).
    """
    p = np.asarray(p, dtype=float)
    if not np.all((p > 0) & (p < 1)):
        raise ValueError("p must lie strictly in (0, 1)")
    if isinstance(model, Exponential):
        out = (4 - p) / ((p - 2) ** 2 * math.log(2))
    elif isinstance(model, Weibull):
        b = model.beta
        L = np.log(2 / (2 - p))
        out = (math.log(2) ** (-1 / b) / (b * (p - 2) ** 2) * L ** (1 / b - 1)
               * (4 - p - p / L + p / (b * L)))
    elif isinstance(model, ParetoI):
        a = model.a
        c1 = (2 - p) ** (-1 / a) / a
        out = c1 * (1 / (1 - p / 2) + (1 + 1 / a) * p / (p - 2) ** 2)
    elif isinstance(model, ParetoII):
        a = model.a
        # (1-p/2)^{-1/a} / [a^2 (p-2)^2 (2^{1/a}-1)] * [p + a(4-p)]
        out = ((1 - p / 2) ** (-1 / a) / (a ** 2 * (p - 2) ** 2 * (2 ** (1 / a) - 1))
               * (p + a * (4 - p)))
    elif isinstance(model, Lognormal):
        z = special.ndtri(p / 2)
        phi = np.exp(-z * z / 2) / math.sqrt(2 * math.pi)
        L1 = p * np.exp(z)
        out = L1 * (1 / (p * phi) + (1 + z) / (4 * phi ** 2))
    else:
        raise TypeError(f"no closed-form L1'' for {type(model).__name__}")
    return float(out) if out.ndim == 0 else out


def lognormal_convexity_condition(p):
    """Sign condition for lognormal L_1 convexity: 4 phi(z_{p/2}) + p (1 + z_{p/2}) > 0."""
    p = np.asarray(p, dtype=float)
    z = special.ndtri(p / 2)
    phi = np.exp(-z * z / 2) / math.sqrt(2 * math.pi)
    return 4 * phi + p * (1 + z)


@dataclass(frozen=True)
class ConvexityReport:
    model_spec: str
    index: int
    min_second_derivative: float
    argmin_p: float
    argmin_parameter: float | None
    convex: bool
    tolerance: float

    def summary_row(self) -> str:
        par = "" if self.argmin_parameter is None else f"{self.argmin_parameter:g}"
        return (f"{self.model_spec},{self.index},{self.min_second_derivative:.6g},"
                f"{self.argmin_p:.4f},{par},{int(self.convex)}")


def _refine_min(f, lo: float, hi: float, iterations: int = 60) -> tuple[float, float]:
    """Golden-section minimization of f on [lo, hi]."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def convexity_sweep(model_factory, index: int, p_grid=None, parameter_grid=None,
                    h: float = 1e-4, tolerance: float = 1e-6) -> ConvexityReport:
    """Minimize the second difference of L_index over a (p, parameter) grid.

    ``model_factory`` is either a Distribution (fixed model; parameter_grid
    ignored) or a callable mapping a parameter value to a Distribution.  The
    grid minimum is polished by golden-section refinement in p.
    """
    if p_grid is None:
        p_grid = np.arange(0.005, 0.9951, 0.005)
    p_grid = np.asarray(p_grid, dtype=float)

    if callable(model_factory) and not isinstance(model_factory, Distribution):
        if parameter_grid is None:
            raise ValueError("parameter_grid required with a model factory")
        candidates = [(float(a), model_factory(float(a))) for a in parameter_grid]
    else:
        candidates = [(None, model_factory)]

    best = (math.inf, math.nan, None, None)
    for par, model in candidates:
        # shrink the step near the endpoints so p +/- h stays inside (0, 1)
        hs = np.minimum(h, np.minimum(p_grid, 1 - p_grid) / 2)
        vals = np.array([second_difference(model, index, pi, float(hi))
                         for pi, hi in zip(p_grid, hs)])
        k = int(np.argmin(vals))
        if vals[k] < best[0]:
            best = (float(vals[k]), float(p_grid[k]), par, model)

    _, p_at, par_at, model_at = best
    lo = max(p_at - 0.01, 2 * h)
    hi = min(p_at + 0.01, 1 - 2 * h)
    p_ref, v_ref = _refine_min(lambda p: second_difference(model_at, index, p, h), lo, hi)
    if v_ref > best[0]:
        p_ref, v_ref = best[1], best[0]
    return ConvexityReport(
        model_spec=model_at.spec(),
        index=index,
        min_second_derivative=v_ref,
        argmin_p=p_ref,
        argmin_parameter=par_at,
        convex=v_ref >= -tolerance,
        tolerance=tolerance,
    )
