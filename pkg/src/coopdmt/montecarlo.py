"""Monte Carlo outage estimation, SNR sweeps and diversity-exponent fits.

Trials are drawn in fixed-size chunks; chunk ``c`` of sweep point ``k``
uses its own counter-based stream keyed by ``(seed, k, c)``, so an estimate
depends only on ``(config, profile, trials, seed)`` and never on how many
worker threads evaluate the chunks.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .fading import LinkSnrProfile, sample_batch, substream
from .protocols import ProtocolConfig, outage

__all__ = [
    "OutageEstimate",
    "SweepResult",
    "ExponentFit",
    "estimate_outage",
    "sweep",
    "estimate_exponent",
    "default_workers",
    "confidence_interval",
]

CHUNK = 1 << 16
Z95 = 1.959963984540054
WILSON_BELOW = 30
LOW_CONFIDENCE_BELOW = 20
WORKERS_ENV = "COOPDMT_WORKERS"


def default_workers() -> int:
    """Worker threads: ``$COOPDMT_WORKERS`` if set, else the available cores."""
    env = os.environ.get(WORKERS_ENV)
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"{WORKERS_ENV} must be a positive integer")
        return n
    return os.cpu_count() or 1


def confidence_interval(outages: int, trials: int, z: float = Z95):
    """95% interval: Wilson for small outage counts, normal approximation otherwise."""
    p = outages / trials
    if outages < WILSON_BELOW:
        denom = 1.0 + z * z / trials
        centre = (p + z * z / (2 * trials)) / denom
        half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
        lo, hi = centre - half, centre + half
    else:
        half = z * math.sqrt(p * (1 - p) / trials)
        lo, hi = p - half, p + half
    return max(0.0, min(lo, p)), min(1.0, max(hi, p))


@dataclass(frozen=True)
class OutageEstimate:
    trials: int
    outages: int
    p_hat: float
    ci_low: float
    ci_high: float
    seed: int
    snr_db: float
    rate_bpcu: float

    def __post_init__(self):
        if self.trials < 1 or not 0 <= self.outages <= self.trials:
            raise ValueError("need 0 <= outages <= trials and trials >= 1")
        if not self.ci_low <= self.p_hat <= self.ci_high:
            raise ValueError("confidence interval must contain the estimate")

    @property
    def low_confidence(self) -> bool:
        """Too few outages for the interval to be trusted."""
        return self.outages < LOW_CONFIDENCE_BELOW

    @property
    def std_error(self) -> float:
        return math.sqrt(self.p_hat * (1 - self.p_hat) / self.trials)

    @classmethod
    def from_counts(cls, outages, trials, seed=0, snr_db=float("nan"), rate_bpcu=float("nan")):
        lo, hi = confidence_interval(outages, trials)
        return cls(int(trials), int(outages), outages / trials, lo, hi, int(seed),
                   float(snr_db), float(rate_bpcu))


@dataclass(frozen=True)
class SweepResult:
    protocol: str
    estimates: tuple

    def __post_init__(self):
        object.__setattr__(self, "estimates", tuple(self.estimates))
        snr = [e.snr_db for e in self.estimates]
        if any(b <= a for a, b in zip(snr, snr[1:])):
            raise ValueError("SNR grid must be strictly increasing")

    @property
    def snr_db(self) -> np.ndarray:
        return np.array([e.snr_db for e in self.estimates])

    @property
    def p_hat(self) -> np.ndarray:
        return np.array([e.p_hat for e in self.estimates])


@dataclass(frozen=True)
class ExponentFit:
    """Least-squares line ``-log10 p = slope * log10(rho) + intercept``."""

    slope: float
    intercept: float
    snr_db: np.ndarray
    residuals: np.ndarray

    def __float__(self):
        return self.slope


def _count_chunk(config, profile, seed, point, chunk, size):
    rng = substream(seed, point, chunk)
    batch = sample_batch(config.topology, profile, rng, size)
    return int(np.count_nonzero(outage(batch, config, profile.rho)))


def estimate_outage(config: ProtocolConfig, profile: LinkSnrProfile, trials: int, seed: int,
                    *, point: int = 0, workers: int | None = None) -> OutageEstimate:
    """Outage probability of ``config`` under ``profile`` from ``trials`` draws."""
    if int(trials) != trials or trials < 1:
        raise ValueError("trials must be a positive integer")
    trials = int(trials)
    sizes = [min(CHUNK, trials - lo) for lo in range(0, trials, CHUNK)]
    workers = default_workers() if workers is None else workers
    if config.rate_bpcu == 0:
        count = 0
    elif workers <= 1 or len(sizes) == 1:
        count = sum(_count_chunk(config, profile, seed, point, c, s) for c, s in enumerate(sizes))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            count = sum(pool.map(lambda cs: _count_chunk(config, profile, seed, point, *cs),
                                 enumerate(sizes)))
    return OutageEstimate.from_counts(count, trials, seed, profile.base_snr_db, config.rate_bpcu)


def sweep(config: ProtocolConfig, profile_base: LinkSnrProfile, snr_grid_db, trials: int,
          seed: int, *, workers: int | None = None) -> SweepResult:
    """One estimate per SNR point, each from its own family of streams."""
    grid = [float(x) for x in snr_grid_db]
    if not grid:
        raise ValueError("SNR grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("SNR grid must be strictly increasing")
    est = [estimate_outage(config, profile_base.with_snr(db), trials, seed, point=k, workers=workers)
           for k, db in enumerate(grid)]
    return SweepResult(config.protocol.value, est)


def estimate_exponent(result: SweepResult, min_outages: int = 50) -> ExponentFit:
    """Slope of ``-log10 p_hat`` against ``log10 rho`` over well-populated points."""
    used = [e for e in result.estimates if e.outages >= min_outages and e.outages > 0]
    if len(used) < 2:
        raise ValueError(f"need at least 2 points with >= {min_outages} outages, got {len(used)}")
    x = np.array([e.snr_db for e in used]) / 10.0
    y = -np.log10([e.p_hat for e in used])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return ExponentFit(float(slope), float(intercept), x * 10.0, resid)
