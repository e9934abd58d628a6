"""Monte Carlo estimators: SINR sample sets, empirical CDFs, rates.

Realizations are independent and indexed; run_mc maps realization
indices to per-index RNG streams (see rng.realization_stream), so the
result is deterministic in (seed, n, config, model) and identical for
any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple, Union

import numpy as np

from . import kernels
from .channel import FadingModel
from .geometry import DistanceSequence, NetworkConfig

__all__ = [
    "Estimate",
    "RateParams",
    "SinrSampleSet",
    "EmpiricalCdf",
    "sinr_sample",
    "run_mc",
    "mean_shannon_rate",
    "outage_rate",
    "ks_distance",
    "ks_two_sample_critical",
    "ks_one_sample_critical",
]

_MODEL_CODE = {
    FadingModel.NON_FADING: kernels.MODEL_NFD,
    FadingModel.RAYLEIGH: kernels.MODEL_FD,
    FadingModel.PARTIAL_FADING: kernels.MODEL_PFD,
}


class Estimate(NamedTuple):
    """Point estimate with its standard error."""

    value: float
    se: float


@dataclass(frozen=True)
class RateParams:
    """Beamforming gain alpha and target SINR eta, both linear."""

    alpha: float
    eta: float = 0.0

    def __post_init__(self):
        if self.alpha <= 0.0:
            raise ValueError("alpha must be positive")
        if self.eta < 0.0:
            raise ValueError("eta must be nonnegative")


def sinr_sample(
    dists: DistanceSequence,
    powers: np.ndarray,
    mu: float,
    delta: float = 0.0,
    compensate: bool = True,
) -> float:
    """One SINR value from a distance sequence and matching power list.

    powers[0] scales the desired link; the rest scale the interferers.
    The sequence's analytic tail mean joins the interference when
    compensate is set.
    """
    powers = np.asarray(powers, dtype=float)
    if powers.shape != (len(dists),):
        raise ValueError("powers length must match the distance sequence")
    if delta < 0.0:
        raise ValueError("delta must be nonnegative")
    w = dists.d ** (-mu)
    den = float(np.cumsum(powers[1:] * w[1:])[-1]) if len(dists) > 1 else 0.0
    if compensate:
        den += dists.tail_mean
    den += delta
    if den == 0.0:
        raise ZeroDivisionError("degenerate SINR: no interference, no tail, no noise")
    return float(powers[0] * w[0]) / den


@dataclass(frozen=True)
class SinrSampleSet:
    """SINR samples for one (config, model) pair."""

    samples: np.ndarray
    cfg: NetworkConfig
    model: FadingModel

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", s)
        if s.ndim != 1 or s.size == 0:
            raise ValueError("samples must be a nonempty 1-d array")
        if np.any(s <= 0.0):
            raise ValueError("SINR samples must be positive")

    @property
    def n(self) -> int:
        return self.samples.size

    def cdf(self) -> "EmpiricalCdf":
        return EmpiricalCdf(self.samples)

    def mean(self) -> Estimate:
        s = self.samples
        return Estimate(float(s.mean()), float(s.std(ddof=1) / math.sqrt(s.size)))

    def mean_inverse(self) -> Estimate:
        inv = 1.0 / self.samples
        return Estimate(float(inv.mean()), float(inv.std(ddof=1) / math.sqrt(inv.size)))


def _batch(cfg: NetworkConfig, model: FadingModel, start: int, count: int) -> np.ndarray:
    pol = cfg.truncation
    delta_scaled = cfg.delta / (math.pi * cfg.lam) ** (0.5 * cfg.mu)
    return kernels.sinr_batch(
        cfg.mu, pol.k_min, pol.tail_rel_tol, pol.compensate,
        _MODEL_CODE[model], delta_scaled, cfg.seed, start, count,
    )


def run_mc(cfg: NetworkConfig, model: FadingModel, n: int, workers: int = 1) -> SinrSampleSet:
    """n independent SINR realizations, deterministic in (cfg.seed, n).

    workers > 1 splits the index range over processes; the merge is by
    index order, so the samples are identical to a serial run.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if workers <= 1 or n < 4 * workers:
        samples = _batch(cfg, model, 0, n)
    else:
        bounds = np.linspace(0, n, workers + 1, dtype=int)
        jobs = [(cfg, model, int(lo), int(hi - lo)) for lo, hi in zip(bounds, bounds[1:])]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_batch_star, jobs))
        samples = np.concatenate(parts)
    return SinrSampleSet(samples=samples, cfg=cfg, model=model)


def _batch_star(job):
    cfg, model, start, count = job
    return _batch(cfg, model, start, count)


def mean_shannon_rate(sample_set: SinrSampleSet, alpha: float) -> Estimate:
    """Average rate E[log2(1 + alpha*Q)] with standard error."""
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    r = np.log2(1.0 + alpha * sample_set.samples)
    return Estimate(float(r.mean()), float(r.std(ddof=1) / math.sqrt(r.size)))


def outage_rate(sample_set: SinrSampleSet, params: RateParams) -> Estimate:
    """Success probability times target rate: Pr{Q >= eta/alpha} * log2(1+eta)."""
    rate = math.log2(1.0 + params.eta)
    if params.eta == 0.0:
        return Estimate(0.0, 0.0)
    p = float((sample_set.samples >= params.eta / params.alpha).mean())
    se = rate * math.sqrt(p * (1.0 - p) / sample_set.n)
    return Estimate(p * rate, se)


class EmpiricalCdf:
    """Sorted-sample empirical CDF with vectorized queries."""

    def __init__(self, samples):
        s = np.sort(np.asarray(samples, dtype=float))
        if s.size == 0:
            raise ValueError("empirical CDF needs at least one sample")
        self.sorted_samples = s

    @property
    def n(self) -> int:
        return self.sorted_samples.size

    def query(self, q):
        """Fraction of samples <= q (scalar or array)."""
        out = np.searchsorted(self.sorted_samples, q, side="right") / self.n
        return float(out) if np.ndim(q) == 0 else out


def ks_distance(a: EmpiricalCdf, b: Union[EmpiricalCdf, Callable[[np.ndarray], np.ndarray]]) -> float:
    """Sup-norm distance between an empirical CDF and a second empirical
    CDF (evaluated over the union of jump points) or an analytic CDF
    (evaluated on both sides of every jump)."""
    if isinstance(b, EmpiricalCdf):
        pts = np.concatenate([a.sorted_samples, b.sorted_samples])
        return float(np.abs(a.query(pts) - b.query(pts)).max())
    x = a.sorted_samples
    f = np.asarray(b(x), dtype=float)
    steps = np.arange(1, a.n + 1) / a.n
    return float(max(np.abs(steps - f).max(), np.abs(steps - 1.0 / a.n - f).max()))


def ks_two_sample_critical(n: int, m: int, alpha: float = 0.01) -> float:
    """Large-sample two-sided critical value for the two-sample KS test."""
    c = math.sqrt(-0.5 * math.log(alpha / 2.0))
    return c * math.sqrt((n + m) / (n * m))


def ks_one_sample_critical(n: int, alpha: float = 0.01) -> float:
    c = math.sqrt(-0.5 * math.log(alpha / 2.0))
    return c / math.sqrt(n)
