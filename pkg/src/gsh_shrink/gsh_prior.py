"""The generalized secant hyperbolic (GSH) distribution of Vaughan (2002).

Symmetric around zero, with a scale parameter ``tau`` and a shape parameter
``t > -pi`` that tunes the kurtosis: t = -pi/2 recovers the hyperbolic
secant distribution, t -> 0 the logistic, and t -> infinity approaches the
uniform.  The parametrisation is standardised so the variance is tau^2 for
every t.  Density:

    g(theta) = (c1/tau) * exp(z) / (exp(2z) + 2a exp(z) + 1),   z = c2*theta/tau

with, for -pi < t < 0:
    a = cos(t),  c2 = sqrt((pi^2 - t^2)/3),  c1 = (sin(t)/t) * c2
and for t > 0:
    a = cosh(t), c2 = sqrt((pi^2 + t^2)/3),  c1 = (sinh(t)/t) * c2.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from .numerics import SeededRng

#: |t| below this is routed to the logistic-limit constants; the raw
#: formulas hit 0/0 in sin(t)/t there.
T_LOGISTIC_EPS = 1e-6

#: Half-range of the numeric CDF grid, in units of tau.
_CDF_HALF_RANGE = 60.0
#: Grid points over the full range |theta| <= 60*tau.
_CDF_GRID_POINTS = 4097
#: Abscissa tolerance of the inverse-CDF bisection.
_QUANTILE_TOL = 1e-12


def gsh_constants(t: float) -> tuple[float, float, float]:
    """Derived constants (a, c1, c2) of the GSH density for shape t > -pi."""
    if not np.isfinite(t) or t <= -np.pi:
        raise ValueError(f"shape parameter t must be finite and > -pi, got {t!r}")
    if abs(t) < T_LOGISTIC_EPS:
        # logistic limit: sin(t)/t and sinh(t)/t -> 1
        c2 = np.pi / np.sqrt(3.0)
        return 1.0, c2, c2
    if t < 0:
        a = np.cos(t)
        c2 = np.sqrt((np.pi**2 - t * t) / 3.0)
        c1 = (np.sin(t) / t) * c2
    else:
        a = np.cosh(t)
        c2 = np.sqrt((np.pi**2 + t * t) / 3.0)
        c1 = (np.sinh(t) / t) * c2
    return float(a), float(c1), float(c2)


@dataclass(frozen=True)
class GshParams:
    """Scale tau, shape t, and the derived density constants."""

    tau: float
    t: float
    a: float
    c1: float
    c2: float

    @classmethod
    def make(cls, tau: float, t: float) -> "GshParams":
        if not np.isfinite(tau) or tau <= 0:
            raise ValueError(f"tau must be finite and > 0, got {tau!r}")
        a, c1, c2 = gsh_constants(t)
        return cls(tau=float(tau), t=float(t), a=a, c1=c1, c2=c2)


@dataclass(frozen=True)
class ShrinkagePrior:
    """Point mass at zero with weight alpha, GSH slab with weight 1 - alpha."""

    alpha: float
    gsh: GshParams

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha!r}")


def gsh_log_density(theta, p: GshParams):
    """log g(theta); overflow-safe for |c2*theta/tau| up to ~700.

    The denominator log is computed as 2*max(z, 0) + log1p(2a e^{-|z|} +
    e^{-2|z|}).  The log1p argument stays above -1 because the denominator
    equals (e^z + a)^2 + (1 - a^2) > 0 when |a| <= 1 and is a sum of
    positive terms when a >= 1.
    """
    th = np.asarray(theta, dtype=float)
    z = p.c2 * th / p.tau
    e = np.exp(-np.abs(z))
    log_den = 2.0 * np.maximum(z, 0.0) + np.log1p((2.0 * p.a + e) * e)
    out = np.log(p.c1 / p.tau) + z - log_den
    return out if out.ndim else float(out)


def gsh_density(theta, p: GshParams):
    """g(theta), the GSH density."""
    out = np.exp(gsh_log_density(theta, p))
    return out if np.ndim(out) else float(out)


def gsh_kurtosis(t: float) -> float:
    """Kurtosis coefficient beta(t); strictly decreasing in t, always > 9/5.

    beta -> infinity as t -> -pi, beta(0) = 21/5, and beta -> 9/5 as
    t -> infinity.
    """
    if not np.isfinite(t) or t <= -np.pi:
        raise ValueError(f"shape parameter t must be finite and > -pi, got {t!r}")
    pi2 = np.pi**2
    if abs(t) < T_LOGISTIC_EPS:
        return 4.2
    if t < 0:
        return float((21.0 * pi2 - 9.0 * t * t) / (5.0 * pi2 - 5.0 * t * t))
    return float((21.0 * pi2 + 9.0 * t * t) / (5.0 * pi2 + 5.0 * t * t))


class _CdfTable:
    """Numeric half-line CDF on a monotone grid with analytic exponential tails.

    The half-mass accumulated on [0, 60*tau] plus the analytic tail beyond
    is normalised to exactly 1/2, so F(0) = 1/2 and F(theta) + F(-theta) = 1
    by construction.
    """

    def __init__(self, p: GshParams):
        self.p = p
        self.hi = _CDF_HALF_RANGE * p.tau
        half_points = (_CDF_GRID_POINTS + 1) // 2
        x = np.linspace(0.0, self.hi, half_points)
        dens = np.exp(gsh_log_density(x, p))
        # shape-preserving cubic fit of the density; its antiderivative is
        # a monotone piecewise cubic accumulation of the grid mass
        self._cum = PchipInterpolator(x, dens).antiderivative()
        grid_total = float(self._cum(self.hi))
        # leading-order tail mass: integral of (c1/tau) e^{-c2 theta/tau}
        tail_hi = (p.c1 / p.c2) * np.exp(-p.c2 * self.hi / p.tau)
        self.scale = 0.5 / (grid_total + tail_hi)
        self.grid_mass = grid_total * self.scale

    def _interp(self, y):
        return self._cum(y) * self.scale

    def half_mass(self, y: np.ndarray) -> np.ndarray:
        """Mass of [0, y] for y >= 0."""
        y = np.asarray(y, dtype=float)
        inside = np.minimum(y, self.hi)
        out = self._interp(inside)
        tail = y > self.hi
        if np.any(tail):
            p = self.p
            out = np.where(
                tail,
                0.5 - self.scale * (p.c1 / p.c2) * np.exp(-p.c2 * y / p.tau),
                out,
            )
        return out

    def quantile_half(self, q: np.ndarray) -> np.ndarray:
        """Inverse of half_mass for q in [0, 1/2): bisection to 1e-12."""
        # a uniform draw of exactly 0 maps to q = 1/2; cap just below so
        # the analytic tail inverse stays finite
        q = np.minimum(np.asarray(q, dtype=float), np.nextafter(0.5, 0.0))
        out = np.empty_like(q)
        in_tail = q > self.grid_mass
        if np.any(in_tail):
            p = self.p
            qt = q[in_tail]
            out[in_tail] = (p.tau / p.c2) * np.log(
                self.scale * p.c1 / (p.c2 * (0.5 - qt))
            )
        body = ~in_tail
        if np.any(body):
            qb = q[body]
            lo = np.zeros_like(qb)
            hi = np.full_like(qb, self.hi)
            while np.max(hi - lo) > _QUANTILE_TOL:
                mid = 0.5 * (lo + hi)
                below = self._interp(mid) < qb
                lo = np.where(below, mid, lo)
                hi = np.where(below, hi, mid)
            out[body] = 0.5 * (lo + hi)
        return out


@functools.lru_cache(maxsize=128)
def _cdf_table(tau: float, t: float) -> _CdfTable:
    return _CdfTable(GshParams.make(tau, t))


def gsh_cdf(theta, p: GshParams):
    """F(theta) on a monotone grid; F(0) = 1/2 exactly by symmetry."""
    table = _cdf_table(p.tau, p.t)
    th = np.asarray(theta, dtype=float)
    out = 0.5 + np.sign(th) * table.half_mass(np.abs(th))
    return out if out.ndim else float(out)


def gsh_sample(rng: SeededRng, p: GshParams, count: int) -> np.ndarray:
    """i.i.d. GSH draws by numeric inverse CDF; deterministic given the seed."""
    if count < 0:
        raise ValueError("count must be >= 0")
    if count == 0:
        return np.zeros(0)
    table = _cdf_table(p.tau, p.t)
    u = rng.generator().random(count)
    v = u - 0.5
    return np.sign(v) * table.quantile_half(np.abs(v))
