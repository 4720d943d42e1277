"""Parametric catalogue of income distributions.

Every model exposes the same quantile machinery: ``cdf``, ``density``,
``quantile``, ``quantile_density`` (the sparsity index 1/f(x_p)), ``mean``,
``cumulative_income`` (partial first moment as a function of the population
share p), and inverse-transform ``sample``.  All numeric methods accept
scalars or numpy arrays.

Models are immutable; construction validates parameters.  Heavy-tailed
Pareto models with shape a <= 1 report ``mean() == inf`` and raise
:class:`HeavyTailError` where a finite mean is required.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

__all__ = [
    "HeavyTailError",
    "Distribution",
    "Uniform",
    "Exponential",
    "ChiSquare",
    "Lognormal",
    "ParetoI",
    "ParetoII",
    "Weibull",
    "Beta",
    "parse_distribution",
    "cumulative_income_by_quadrature",
]


class HeavyTailError(ArithmeticError):
    """An operation required a finite mean but the model has mu = +inf."""


def _require_positive(**params):
    for name, value in params.items():
        if not (value > 0) or not math.isfinite(value):
            raise ValueError(f"parameter {name!r} must be finite and > 0, got {value!r}")


def _check_prob(p, open_interval=False):
    p = np.asarray(p, dtype=float)
    lo_ok = (p > 0) if open_interval else (p >= 0)
    hi_ok = (p < 1) if open_interval else (p <= 1)
    if not np.all(lo_ok & hi_ok):
        kind = "(0, 1)" if open_interval else "[0, 1]"
        raise ValueError(f"probability must lie in {kind}")
    return p


def _scalarize(x):
    """Return a python float for 0-d results, else the array."""
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


@dataclass(frozen=True)
class Distribution:
    """Continuous distribution on [0, +inf) with strictly increasing CDF on its support."""

    #: lower endpoint of the support; upper endpoint via :meth:`upper_support`.
    def lower_support(self) -> float:
        return 0.0

    def upper_support(self) -> float:
        return math.inf

    # -- core primitives supplied by each family --------------------------
    def _cdf(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def _quantile(self, p):  # pragma: no cover - abstract
        raise NotImplementedError

    def _density(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def _quantile_density(self, p):  # pragma: no cover - abstract
        raise NotImplementedError

    # -- public surface ----------------------------------------------------
    def cdf(self, x):
        """P(X <= x); 0 below the support."""
        x = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(x)):
            raise ValueError("cdf argument must be finite")
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(x <= self.lower_support(), 0.0, self._cdf(x))
        return _scalarize(np.clip(out, 0.0, 1.0))

    def density(self, x):
        """Density f(x); 0 outside the support."""
        x = np.asarray(x, dtype=float)
        inside = (x > self.lower_support()) & (x < self.upper_support())
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(inside, self._density(np.where(inside, x, self.lower_support() + 0.5)), 0.0)
        return _scalarize(out)

    def quantile(self, p):
        """x_p = F^{-1}(p).

        quantile(0) is the lower support endpoint; quantile(1) is +inf for
        infinite support (and the upper endpoint otherwise).
        """
        p = _check_prob(p)
        hi = self.upper_support()
        interior = self._quantile(np.clip(p, 1e-300, 1 - 1e-16))
        out = np.where(p == 0.0, self.lower_support(), np.where(p == 1.0, hi, interior))
        return _scalarize(out)

    def quantile_density(self, p):
        """q(p) = dQ/dp = 1/f(x_p), for p strictly inside (0, 1)."""
        p = _check_prob(p, open_interval=True)
        return _scalarize(self._quantile_density(p))

    def mean(self) -> float:
        """Population mean; +inf for heavy-tailed models."""
        raise NotImplementedError

    def median(self) -> float:
        return float(self.quantile(0.5))

    def cumulative_income(self, p):
        """C(F; p) = integral of x dF(x) up to the p-th quantile.

        Equals ``integral of Q(u) du over (0, p)``; C(F; 1) is the mean.
        Raises :class:`HeavyTailError` at p = 1 when the mean is infinite.
        """
        p = _check_prob(p)
        if np.any(p == 1.0) and math.isinf(self.mean()):
            raise HeavyTailError(f"{self!r} has infinite mean; cumulative income diverges at p=1")
        return _scalarize(self._cumulative_income(p))

    def _cumulative_income(self, p):
        return cumulative_income_by_quadrature(self, p)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """n i.i.d. draws by inverse transform, returned sorted ascending."""
        if n < 1:
            raise ValueError("sample size must be >= 1")
        u = rng.random(int(n))
        x = self._quantile(np.clip(u, 1e-300, 1 - 1e-16))
        x.sort()
        return x

    def scaled(self, c: float) -> "Distribution":
        """Same family with the scale multiplied by c (families with a scale only)."""
        raise TypeError(f"{type(self).__name__} has no scale parameter")

    def spec(self) -> str:
        """Round-trippable spec string (see :func:`parse_distribution`)."""
        raise NotImplementedError


def cumulative_income_by_quadrature(model: Distribution, p, tol: float = 1e-10):
    """C(F; p) by adaptive quadrature of the quantile function on (0, p).

    Generic fallback and independent cross-check for the closed forms.
    """
    orig_ndim = np.asarray(p).ndim
    p = np.atleast_1d(np.asarray(p, dtype=float))
    out = np.empty_like(p)
    for i, pi in enumerate(p):
        if pi == 0.0:
            out[i] = 0.0
            continue
        val, _ = integrate.quad(lambda u: float(model._quantile(np.asarray(u))),
                                0.0, pi, epsabs=tol, epsrel=1e-12, limit=200)
        out[i] = val
    return out if orig_ndim else float(out[0])


@dataclass(frozen=True)
class Uniform(Distribution):
    """Uniform on [0, sigma]."""

    sigma: float = 1.0

    def __post_init__(self):
        _require_positive(sigma=self.sigma)

    def upper_support(self) -> float:
        return self.sigma

    def _cdf(self, x):
        return np.clip(x / self.sigma, 0.0, 1.0)

    def _density(self, x):
        return np.where(x <= self.sigma, 1.0 / self.sigma, 0.0)

    def _quantile(self, p):
        return self.sigma * p

    def _quantile_density(self, p):
        return np.full_like(np.asarray(p, dtype=float), self.sigma)

    def mean(self) -> float:
        return self.sigma / 2

    def _cumulative_income(self, p):
        return self.sigma * p * p / 2

    def scaled(self, c):
        return Uniform(self.sigma * c)

    def spec(self) -> str:
        return f"uniform:sigma={self.sigma:g}"


@dataclass(frozen=True)
class Exponential(Distribution):
    """Exponential with scale sigma: 1 - F(x) = exp(-x/sigma)."""

    sigma: float = 1.0

    def __post_init__(self):
        _require_positive(sigma=self.sigma)

    def _cdf(self, x):
        return -np.expm1(-x / self.sigma)

    def _density(self, x):
        return np.exp(-x / self.sigma) / self.sigma

    def _quantile(self, p):
        return -self.sigma * np.log1p(-p)

    def _quantile_density(self, p):
        return self.sigma / (1 - p)

    def mean(self) -> float:
        return self.sigma

    def _cumulative_income(self, p):
        # integral of -sigma*log(1-u) on (0,p)
        return self.sigma * (p + (1 - p) * np.log1p(-p))

    def scaled(self, c):
        return Exponential(self.sigma * c)

    def spec(self) -> str:
        return f"exponential:sigma={self.sigma:g}"


@dataclass(frozen=True)
class ChiSquare(Distribution):
    """Chi-square with k > 0 degrees of freedom (gamma with shape k/2, scale 2)."""

    k: float

    def __post_init__(self):
        _require_positive(k=self.k)

    def _cdf(self, x):
        return special.gammainc(self.k / 2, x / 2)

    def _density(self, x):
        a = self.k / 2
        return np.exp((a - 1) * np.log(x) - x / 2 - a * math.log(2) - special.gammaln(a))

    def _quantile(self, p):
        return 2 * special.gammaincinv(self.k / 2, p)

    def _quantile_density(self, p):
        return 1.0 / self._density(self._quantile(p))

    def mean(self) -> float:
        return float(self.k)

    def _cumulative_income(self, p):
        # x f_k(x) = k f_{k+2}(x), so the partial mean is k * P(k/2 + 1, x_p/2)
        x = self._quantile(np.clip(p, 0.0, 1 - 1e-16))
        out = self.k * special.gammainc(self.k / 2 + 1, x / 2)
        return np.where(p == 1.0, self.k, out)

    def spec(self) -> str:
        return f"chisq:k={self.k:g}"


@dataclass(frozen=True)
class Lognormal(Distribution):
    """Standard lognormal: log X ~ N(0, 1)."""

    def _cdf(self, x):
        return special.ndtr(np.log(x))

    def _density(self, x):
        z = np.log(x)
        return np.exp(-z * z / 2) / (x * math.sqrt(2 * math.pi))

    def _quantile(self, p):
        return np.exp(special.ndtri(p))

    def _quantile_density(self, p):
        z = special.ndtri(p)
        return np.exp(z) / (np.exp(-z * z / 2) / math.sqrt(2 * math.pi))

    def mean(self) -> float:
        return math.exp(0.5)

    def _cumulative_income(self, p):
        z = special.ndtri(np.clip(p, 1e-300, 1 - 1e-16))
        out = math.exp(0.5) * special.ndtr(z - 1)
        return np.where(p == 0.0, 0.0, np.where(p == 1.0, math.exp(0.5), out))

    def spec(self) -> str:
        return "lognormal"


@dataclass(frozen=True)
class ParetoI(Distribution):
    """Type I Pareto: 1 - F(x) = (x/sigma)^{-a} on [sigma, +inf)."""

    a: float
    sigma: float = 1.0

    def __post_init__(self):
        _require_positive(a=self.a, sigma=self.sigma)

    def lower_support(self) -> float:
        return self.sigma

    def _cdf(self, x):
        return 1 - (x / self.sigma) ** (-self.a)

    def _density(self, x):
        return (self.a / self.sigma) * (x / self.sigma) ** (-self.a - 1)

    def _quantile(self, p):
        return self.sigma * (1 - p) ** (-1 / self.a)

    def _quantile_density(self, p):
        return self.sigma / (self.a * (1 - p) ** (1 / self.a + 1))

    def mean(self) -> float:
        return self.sigma * self.a / (self.a - 1) if self.a > 1 else math.inf

    def _cumulative_income(self, p):
        a = self.a
        if a == 1.0:
            return -self.sigma * np.log1p(-p)
        return self.sigma * a / (a - 1) * (1 - (1 - p) ** ((a - 1) / a))

    def scaled(self, c):
        return ParetoI(self.a, self.sigma * c)

    def spec(self) -> str:
        return f"paretoI:a={self.a:g},sigma={self.sigma:g}"


@dataclass(frozen=True)
class ParetoII(Distribution):
    """Type II Pareto (Lomax): 1 - F(x) = (1 + x/sigma)^{-a}."""

    a: float
    sigma: float = 1.0

    def __post_init__(self):
        _require_positive(a=self.a, sigma=self.sigma)

    def _cdf(self, x):
        return -np.expm1(-self.a * np.log1p(x / self.sigma))

    def _density(self, x):
        return (self.a / self.sigma) * (1 + x / self.sigma) ** (-self.a - 1)

    def _quantile(self, p):
        return self.sigma * np.expm1(-np.log1p(-p) / self.a)

    def _quantile_density(self, p):
        return self.sigma / (self.a * (1 - p) ** (1 / self.a + 1))

    def mean(self) -> float:
        return self.sigma / (self.a - 1) if self.a > 1 else math.inf

    def _cumulative_income(self, p):
        a = self.a
        if a == 1.0:
            return self.sigma * (-np.log1p(-p) - p)
        xp = np.expm1(-np.log1p(-p) / a)  # unit-scale quantile
        return self.sigma / (a - 1) * (p - a * (1 - p) * xp)

    def scaled(self, c):
        return ParetoII(self.a, self.sigma * c)

    def spec(self) -> str:
        return f"paretoII:a={self.a:g},sigma={self.sigma:g}"


@dataclass(frozen=True)
class Weibull(Distribution):
    """Weibull with shape beta and scale sigma: 1 - F(x) = exp(-(x/sigma)^beta)."""

    beta: float
    sigma: float = 1.0

    def __post_init__(self):
        _require_positive(beta=self.beta, sigma=self.sigma)

    def _cdf(self, x):
        return -np.expm1(-((x / self.sigma) ** self.beta))

    def _density(self, x):
        t = (x / self.sigma) ** self.beta
        return self.beta / self.sigma * (x / self.sigma) ** (self.beta - 1) * np.exp(-t)

    def _quantile(self, p):
        return self.sigma * (-np.log1p(-p)) ** (1 / self.beta)

    def _quantile_density(self, p):
        t = -np.log1p(-p)
        return self.sigma * t ** (1 / self.beta - 1) / (self.beta * (1 - p))

    def mean(self) -> float:
        return self.sigma * math.gamma(1 + 1 / self.beta)

    def _cumulative_income(self, p):
        t = -np.log1p(-np.clip(p, 0.0, 1 - 1e-16))
        out = self.mean() * special.gammainc(1 + 1 / self.beta, t)
        return np.where(p == 1.0, self.mean(), out)

    def scaled(self, c):
        return Weibull(self.beta, self.sigma * c)

    def spec(self) -> str:
        return f"weibull:beta={self.beta:g},sigma={self.sigma:g}"


@dataclass(frozen=True)
class Beta(Distribution):
    """Beta(alpha, beta) on [0, 1].

    For strongly U-shaped parameterizations the upper quantiles sit within
    ~1e-60 of 1, so the upper tail is tracked through the complementary
    coordinate 1 - x (mirrored incomplete-beta inverse) to avoid rounding
    x to 1.0 and silently dropping tail mass.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        _require_positive(alpha=self.alpha, beta=self.beta)

    def upper_support(self) -> float:
        return 1.0

    def _cdf(self, x):
        return special.betainc(self.alpha, self.beta, np.clip(x, 0.0, 1.0))

    def _density(self, x):
        lo = (self.alpha - 1) * np.log(x)
        hi = (self.beta - 1) * np.log1p(-x)
        return np.exp(lo + hi - special.betaln(self.alpha, self.beta))

    def _quantile(self, p):
        return special.betaincinv(self.alpha, self.beta, p)

    def _quantile_complement(self, p):
        """1 - x_p, accurate when x_p is extremely close to 1."""
        return special.betaincinv(self.beta, self.alpha, 1 - np.asarray(p, dtype=float))

    def _log_x_and_1mx(self, p):
        p = np.asarray(p, dtype=float)
        omx = self._quantile_complement(p)
        x = self._quantile(p)
        # log(x): direct where x is small, via the complement where x ~ 1
        with np.errstate(divide="ignore"):
            log_x = np.where(omx < 0.5, np.log1p(-np.minimum(omx, 0.5)), np.log(np.maximum(x, 1e-300)))
            log_omx = np.where(omx < 0.5, np.log(np.maximum(omx, 1e-300)), np.log1p(-np.minimum(x, 0.5)))
        return log_x, log_omx

    def _quantile_density(self, p):
        log_x, log_omx = self._log_x_and_1mx(p)
        log_f = (self.alpha - 1) * log_x + (self.beta - 1) * log_omx - special.betaln(self.alpha, self.beta)
        return np.exp(-log_f)

    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    def _cumulative_income(self, p):
        # I_x(a+1, b) = I_x(a, b) - x^a (1-x)^b / (a B(a, b)), evaluated in logs
        p = np.asarray(p, dtype=float)
        pc = np.clip(p, 1e-300, 1 - 1e-16)
        log_x, log_omx = self._log_x_and_1mx(pc)
        drop = np.exp(self.alpha * log_x + self.beta * log_omx
                      - math.log(self.alpha) - special.betaln(self.alpha, self.beta))
        out = self.mean() * (pc - drop)
        return np.where(p == 0.0, 0.0, np.where(p == 1.0, self.mean(), out))

    def spec(self) -> str:
        return f"beta:alpha={self.alpha:g},beta={self.beta:g}"


# ---------------------------------------------------------------------------
# spec-string parsing:  family:key=value,...   e.g. paretoII:a=2,sigma=100000
# ---------------------------------------------------------------------------

_FAMILIES = {
    "uniform": (Uniform, {"sigma"}),
    "exponential": (Exponential, {"sigma"}),
    "exp": (Exponential, {"sigma"}),
    "chisq": (ChiSquare, {"k"}),
    "chi2": (ChiSquare, {"k"}),
    "lognormal": (Lognormal, set()),
    "lognorm": (Lognormal, set()),
    "paretoi": (ParetoI, {"a", "sigma"}),
    "paretoii": (ParetoII, {"a", "sigma"}),
    "pareto": (ParetoII, {"a", "sigma"}),  # catalogue Pareto rows are Type II
    "weibull": (Weibull, {"beta", "sigma"}),
    "beta": (Beta, {"alpha", "beta"}),
}


def parse_distribution(text: str) -> Distribution:
    """Parse a distribution spec string, case-insensitively.

    Format: ``family`` or ``family:key=value,...``; e.g.
    ``paretoII:a=2,sigma=100000``, ``weibull:beta=0.5``, ``chisq:k=3``,
    ``beta:alpha=0.1,beta=0.05``.  Unknown families or keys are errors.
    """
    text = text.strip()
    m = re.fullmatch(r"([A-Za-z0-9_]+)\s*(?::\s*(.*))?", text)
    if not m:
        raise ValueError(f"malformed distribution spec: {text!r}")
    family = m.group(1).lower()
    if family not in _FAMILIES:
        known = ", ".join(sorted(set(_FAMILIES)))
        raise ValueError(f"unknown distribution family {m.group(1)!r} (known: {known})")
    cls, allowed = _FAMILIES[family]
    kwargs = {}
    body = m.group(2)
    if body:
        for item in body.split(","):
            if not item.strip():
                continue
            if "=" not in item:
                raise ValueError(f"malformed parameter {item!r} in spec {text!r}")
            key, _, value = item.partition("=")
            key = key.strip().lower()
            if key not in allowed:
                raise ValueError(f"unknown parameter {key!r} for family {family!r}")
            try:
                kwargs[key] = float(value)
            except ValueError:
                raise ValueError(f"non-numeric value {value!r} for parameter {key!r}") from None
    return cls(**kwargs)
