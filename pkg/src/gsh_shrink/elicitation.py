"""Data-driven hyperparameter selection for the spike-and-GSH prior.

The noise level comes from the median absolute deviation of the finest
detail coefficients; the spike weight grows with the resolution level as
alpha(j) = 1 - (j - J0 + 1)^(-gamma); and the slab shape t is obtained by
inverting the kurtosis map at the sample kurtosis of the detail
coefficients.  The slab scale is fixed at tau = 1 and the shrinkage level
around zero is controlled through alpha alone.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dwt import WaveletDecomposition
from .numerics import DegenerateInputError

#: Normal consistency constant: the 0.75 quantile of the standard normal.
MAD_SCALE = 0.6745

#: Kurtosis at the logistic limit t = 0.
LOGISTIC_KURTOSIS = 4.2

#: Lower pole of the kurtosis map; sample kurtosis at or below this has no
#: finite preimage and is routed to t_max.
KURTOSIS_FLOOR = 9.0 / 5.0

#: Minimum detail-level size for a per-level kurtosis estimate; smaller
#: levels fall back to the pooled estimate.
MIN_LEVEL_SIZE = 30


@dataclass(frozen=True)
class ElicitationConfig:
    """Knobs of the elicitation step.

    gamma is the spike-weight exponent (2 in the absence of other
    information), primary_level the coarsest shrunk level J0, and
    [t_min, t_max] the admissible range of the slab shape.  With
    ``pool_levels`` one t is shared across all detail levels; otherwise t
    is per level with a pooled fallback for short levels.
    """

    gamma: float = 2.0
    primary_level: int = 4
    t_min: float = -np.pi + 1e-3
    t_max: float = 50.0
    pool_levels: bool = True

    def __post_init__(self) -> None:
        if self.gamma <= 0:
            raise ValueError("gamma must be > 0")
        if self.primary_level < 0:
            raise ValueError("primary_level must be >= 0")
        if not (-np.pi < self.t_min < self.t_max):
            raise ValueError("need -pi < t_min < t_max")


@dataclass(frozen=True)
class ElicitedHyperparams:
    """Everything the per-level shrinkage rules need."""

    sigma_hat: float
    alpha_by_level: dict[int, float]
    t_value: float
    tau: float = 1.0
    t_by_level: dict[int, float] = field(default_factory=dict)

    def level_t(self, j: int) -> float:
        return self.t_by_level.get(j, self.t_value)


def estimate_sigma(finest_detail) -> float:
    """Robust noise scale: median(|d|) / 0.6745 over the finest detail level."""
    d = np.asarray(finest_detail, dtype=float)
    if d.size == 0:
        raise ValueError("finest detail level is empty")
    return float(np.median(np.abs(d)) / MAD_SCALE)


def alpha_level(j: int, cfg: ElicitationConfig) -> float:
    """Spike weight alpha(j) = 1 - (j - J0 + 1)^(-gamma); zero at j = J0."""
    if j < cfg.primary_level:
        raise ValueError(
            f"level {j} is coarser than the primary level {cfg.primary_level}"
        )
    return 1.0 - (j - cfg.primary_level + 1.0) ** (-cfg.gamma)


def sample_kurtosis(coeffs) -> float:
    """Biased moment-ratio kurtosis: m4 / m2^2 with 1/n central moments."""
    d = np.asarray(coeffs, dtype=float)
    if d.size < 4:
        raise ValueError(f"need at least 4 values, got {d.size}")
    centered = d - d.mean()
    m2 = np.mean(centered**2)
    if m2 == 0.0:
        raise DegenerateInputError("constant vector has undefined kurtosis")
    m4 = np.mean(centered**4)
    return float(m4 / m2**2)


def elicit_t(beta_hat: float, cfg: ElicitationConfig = ElicitationConfig()) -> float:
    """Invert the kurtosis map at the sample kurtosis, clamped to [t_min, t_max].

    beta_hat >= 4.2 maps to the negative branch, beta_hat < 4.2 to the
    positive one; 4.2 itself returns exactly 0 (the logistic limit) and
    values at or below the 9/5 pole return t_max.
    """
    if not np.isfinite(beta_hat):
        raise ValueError(f"kurtosis estimate must be finite, got {beta_hat!r}")
    if beta_hat <= KURTOSIS_FLOOR + 1e-6:
        return cfg.t_max
    num = 5.0 * beta_hat - 21.0
    den = 5.0 * beta_hat - 9.0
    if abs(num) < 1e-12:
        return 0.0
    if beta_hat >= LOGISTIC_KURTOSIS:
        t = -np.pi * np.sqrt(num / den)
    else:
        t = np.pi * np.sqrt(-num / den)
    return float(np.clip(t, cfg.t_min, cfg.t_max))


def elicit_all(decomp: WaveletDecomposition,
               cfg: ElicitationConfig = ElicitationConfig()) -> ElicitedHyperparams:
    """Run the full elicitation on a decomposition.

    Raises :class:`DegenerateInputError` when the detail coefficients carry
    no variation (e.g. the decomposition of a constant signal).
    """
    levels = decomp.levels
    if not levels:
        raise ValueError("decomposition has no detail levels")
    if levels[0] != cfg.primary_level:
        raise ValueError(
            f"decomposition starts at level {levels[0]} but the "
            f"configuration says J0 = {cfg.primary_level}"
        )
    sigma_hat = estimate_sigma(decomp.finest_detail)
    pooled = np.concatenate([decomp.details[j] for j in levels])
    t_pooled = elicit_t(sample_kurtosis(pooled), cfg)

    t_by_level: dict[int, float] = {}
    for j in levels:
        if cfg.pool_levels or decomp.details[j].size < MIN_LEVEL_SIZE:
            t_by_level[j] = t_pooled
        else:
            try:
                t_by_level[j] = elicit_t(sample_kurtosis(decomp.details[j]), cfg)
            except DegenerateInputError:
                t_by_level[j] = t_pooled

    alpha_by_level = {j: alpha_level(j, cfg) for j in levels}
    return ElicitedHyperparams(
        sigma_hat=sigma_hat,
        alpha_by_level=alpha_by_level,
        t_value=t_pooled,
        tau=1.0,
        t_by_level=t_by_level,
    )
