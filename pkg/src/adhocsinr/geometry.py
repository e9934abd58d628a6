"""Poisson network geometry seen from a typical user at the origin.

Distances to the points of a homogeneous planar PPP are sampled exactly
through the arrival representation: pi*lambda*d_k^2 are the arrival
times of a unit-rate Poisson process, so no simulation window or edge
correction is needed. Sequences are truncated by a tail rule and carry
the analytic mean of the excluded interference for compensation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kernels import sample_arrivals

__all__ = [
    "TruncationPolicy",
    "NetworkConfig",
    "DistanceSequence",
    "sample_distances",
    "distances_from_arrival_times",
    "nearest_pdf",
    "emit_realization",
]


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule for the interferer sequence.

    Generation stops once at least k_min points are drawn and the
    analytic mean of the not-yet-drawn tail interference falls below
    tail_rel_tol times the interference accumulated so far. With
    compensate=True that tail mean is added back to every interference
    sum, which leaves mean statistics exactly unbiased.
    """

    k_min: int = 500
    tail_rel_tol: float = 1e-2
    compensate: bool = True

    def __post_init__(self):
        if self.k_min < 2:
            raise ValueError("k_min must be >= 2")
        if self.tail_rel_tol <= 0.0:
            raise ValueError("tail_rel_tol must be positive")


@dataclass(frozen=True)
class NetworkConfig:
    """Network and noise parameters.

    lam:   base-station density (points per unit area)
    mu:    path-loss exponent; must exceed 2 or the aggregate
           interference diverges
    delta: normalized noise power sigma^2 / P_T (linear)
    """

    lam: float
    mu: float
    delta: float = 0.0
    truncation: TruncationPolicy = field(default_factory=TruncationPolicy)
    seed: int = 0

    def __post_init__(self):
        if self.lam <= 0.0:
            raise ValueError("density lam must be positive")
        if self.mu <= 2.0:
            raise ValueError("path-loss exponent mu must exceed 2")
        if self.delta < 0.0:
            raise ValueError("noise delta must be nonnegative")


@dataclass(frozen=True)
class DistanceSequence:
    """Ordered distances from the typical user, plus the analytic mean
    interference of the excluded tail beyond the last point."""

    d: np.ndarray
    tail_mean: float

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        object.__setattr__(self, "d", d)
        if d.ndim != 1 or d.size == 0:
            raise ValueError("d must be a nonempty 1-d array")
        if d[0] <= 0.0 or np.any(np.diff(d) <= 0.0):
            raise ValueError("distances must be positive and strictly increasing")
        if self.tail_mean < 0.0:
            raise ValueError("tail_mean must be nonnegative")

    def __len__(self) -> int:
        return self.d.size


def distances_from_arrival_times(s: np.ndarray, lam: float) -> np.ndarray:
    """Map unit-rate arrival times to PPP distances: d_k = sqrt(s_k/(pi*lam))."""
    return np.sqrt(np.asarray(s, dtype=float) / (math.pi * lam))


def tail_mean_interference(d_last: float, lam: float, mu: float) -> float:
    """Mean interference of all points beyond d_last: 2*pi*lam*d^ (2-mu)/(mu-2)."""
    return 2.0 * math.pi * lam * d_last ** (2.0 - mu) / (mu - 2.0)


def sample_distances(cfg: NetworkConfig, rng: np.random.Generator) -> DistanceSequence:
    """Draw one truncated, ordered PPP distance sequence."""
    pol = cfg.truncation
    s, k = sample_arrivals(rng, cfg.mu, pol.k_min, pol.tail_rel_tol)
    d = distances_from_arrival_times(s[:k], cfg.lam)
    return DistanceSequence(d=d, tail_mean=tail_mean_interference(float(d[-1]), cfg.lam, cfg.mu))


def nearest_pdf(x, lam: float):
    """Density of the nearest-point distance: 2*pi*lam*x*exp(-pi*lam*x^2)."""
    x = np.asarray(x, dtype=float)
    out = 2.0 * math.pi * lam * x * np.exp(-math.pi * lam * x * x)
    return float(out) if out.ndim == 0 else out


def emit_realization(cfg: NetworkConfig, window: float, rng: np.random.Generator) -> np.ndarray:
    """Homogeneous PPP realization on a window x window square centred at
    the origin; returns an (n, 2) array of coordinates."""
    if window <= 0.0:
        raise ValueError("window side must be positive")
    n = rng.poisson(cfg.lam * window * window)
    return (rng.random((n, 2)) - 0.5) * window
