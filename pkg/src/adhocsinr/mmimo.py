"""Multi-antenna case study: conjugate beamforming over the Poisson network.

Each base station carries M antennas and beamforms at its own user with
the matched (conjugate) beamformer under a total power budget of M*P_T.
The finite-M SINR is computed from the literal channel inner products;
as M grows it converges, after scaling by M, to a partial-fading SIR
with an effective noise of (sigma_n^2/P_T)/M.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .geometry import DistanceSequence, NetworkConfig, sample_distances
from .rng import realization_stream

__all__ = [
    "MmimoConfig",
    "conjugate_beamformer",
    "mmimo_finite_sinr",
    "mmimo_asymptotic_sinr",
    "coupled_samples",
    "run_mmimo",
]

_CHUNK = 64


@dataclass(frozen=True)
class MmimoConfig:
    base: NetworkConfig
    antennas: int
    noise_over_power: float = 0.0   # sigma_n^2 / P_T, linear

    def __post_init__(self):
        if self.antennas < 1:
            raise ValueError("antenna count must be >= 1")
        if self.noise_over_power < 0.0:
            raise ValueError("noise_over_power must be nonnegative")


def conjugate_beamformer(h_hat: np.ndarray, total_power: float) -> np.ndarray:
    """Matched beamformer sqrt(total_power) * h/||h||; ||w||^2 == total_power."""
    h_hat = np.asarray(h_hat)
    norm = np.linalg.norm(h_hat)
    if norm == 0.0:
        raise ValueError("zero channel vector")
    return math.sqrt(total_power) * h_hat / norm


def _htil_squared(rng: np.random.Generator, count: int, m: int):
    """|h~|^2 for `count` interferers, drawn per the kernel contract.

    h~ is the cross channel projected on the interferer's own beam
    direction; exactly CN(0,1) for any M, so |h~|^2 has unit mean.
    """
    out = np.empty(count)
    pos = 0
    while pos < count:
        rows = min(_CHUNK, count - pos)
        block = rng.standard_normal((rows, 4 * m))
        ox = block[:, :m]
        oy = block[:, m : 2 * m]
        cx = block[:, 2 * m : 3 * m]
        cy = block[:, 3 * m :]
        re = np.cumsum(cx * ox + cy * oy, axis=1)[:, -1]
        im = np.cumsum(cx * oy - cy * ox, axis=1)[:, -1]
        own = np.cumsum(ox * ox + oy * oy, axis=1)[:, -1]
        out[pos : pos + rows] = (re * re + im * im) / (2.0 * own)
        pos += rows
    return out


def mmimo_finite_sinr(cfg: MmimoConfig, dists: DistanceSequence, rng: np.random.Generator) -> float:
    """One finite-M conjugate-beamforming SINR realization.

    Channel vectors are drawn streamwise (desired first, then one pair of
    M-vectors per interferer) and only their inner products are kept, so
    memory stays O(M + K) no matter how large M is.
    """
    m = cfg.antennas
    mf = float(m)
    mu = cfg.base.mu
    w = dists.d ** (-mu)
    k = len(dists)
    des = rng.standard_normal(2 * m)
    desired = np.cumsum(des[:m] * des[:m] + des[m:] * des[m:])[-1] * 0.5
    acc = 0.0
    if k > 1:
        htil2 = _htil_squared(rng, k - 1, m)
        acc = float(np.cumsum(w[1:] * htil2)[-1])
    den = acc / mf
    if cfg.base.truncation.compensate:
        den += dists.tail_mean / mf
    den += cfg.noise_over_power / (mf * mf)
    return float(w[0] * (desired / mf)) / den


def mmimo_asymptotic_sinr(cfg: MmimoConfig, dists: DistanceSequence, rng: np.random.Generator) -> float:
    """Large-M limit sample: M times a partial-fading SIR with effective
    noise (sigma_n^2/P_T)/M.

    Draws a full block of len(dists) fading powers and ignores the first,
    mirroring the partial-fading stream layout.
    """
    m = float(cfg.antennas)
    mu = cfg.base.mu
    w = dists.d ** (-mu)
    p = rng.standard_exponential(len(dists), method="inv")
    acc = float(np.cumsum(p[1:] * w[1:])[-1]) if len(dists) > 1 else 0.0
    if cfg.base.truncation.compensate:
        acc += dists.tail_mean
    acc += cfg.noise_over_power / m
    return m * (float(w[0]) / acc)


def coupled_samples(cfg: MmimoConfig, n: int) -> tuple[np.ndarray, np.ndarray]:
    """(finite, asymptotic) SINR pairs built from shared channel draws.

    Realization i uses one stream for the distances, the desired vector
    and the interferer projections; the asymptotic sample reuses the
    finite sample's |h~|^2 values. The pairing removes the Monte Carlo
    noise that is common to both, so empirical comparisons isolate the
    finite-antenna deviation (the hardening of ||h||^2/M and the noise
    scaling), which vanishes as M grows.
    """
    m = cfg.antennas
    mf = float(m)
    mu = cfg.base.mu
    nop = cfg.noise_over_power
    compensate = cfg.base.truncation.compensate
    finite = np.empty(n)
    asym = np.empty(n)
    for i in range(n):
        rng = realization_stream(cfg.base.seed, i)
        dists = sample_distances(cfg.base, rng)
        w = dists.d ** (-mu)
        des = rng.standard_normal(2 * m)
        desired = float(np.cumsum(des[:m] * des[:m] + des[m:] * des[m:])[-1]) * 0.5
        htil2 = _htil_squared(rng, len(dists) - 1, m)
        interf = float(np.cumsum(w[1:] * htil2)[-1])
        tail = dists.tail_mean if compensate else 0.0
        finite[i] = (w[0] * (desired / mf)) / (interf / mf + tail / mf + nop / (mf * mf))
        asym[i] = mf * w[0] / (interf + tail + nop / mf)
    return finite, asym


def _noise_scaled(cfg: MmimoConfig) -> float:
    return cfg.noise_over_power / (math.pi * cfg.base.lam) ** (0.5 * cfg.base.mu)


def _finite_batch(cfg: MmimoConfig, start: int, count: int) -> np.ndarray:
    pol = cfg.base.truncation
    return kernels.mmimo_finite_batch(
        cfg.base.mu, pol.k_min, pol.tail_rel_tol, pol.compensate,
        cfg.antennas, _noise_scaled(cfg), cfg.base.seed, start, count,
    )


def _asymptotic_batch(cfg: MmimoConfig, start: int, count: int) -> np.ndarray:
    pol = cfg.base.truncation
    mf = float(cfg.antennas)
    samples = kernels.sinr_batch(
        cfg.base.mu, pol.k_min, pol.tail_rel_tol, pol.compensate,
        kernels.MODEL_PFD, _noise_scaled(cfg) / mf, cfg.base.seed, start, count,
    )
    return mf * samples


_BATCHES = {"finite": _finite_batch, "asymptotic": _asymptotic_batch}


def run_mmimo(cfg: MmimoConfig, kind: str, n: int, workers: int = 1) -> np.ndarray:
    """n SINR samples of the chosen kind; deterministic in (cfg, n)."""
    if kind not in _BATCHES:
        raise ValueError("kind must be 'finite' or 'asymptotic'")
    if n < 1:
        raise ValueError("n must be >= 1")
    batch = _BATCHES[kind]
    if workers <= 1 or n < 4 * workers:
        return batch(cfg, 0, n)
    bounds = np.linspace(0, n, workers + 1, dtype=int)
    jobs = [(kind, cfg, int(lo), int(hi - lo)) for lo, hi in zip(bounds, bounds[1:])]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_batch_star, jobs))
    return np.concatenate(parts)


def _batch_star(job):
    kind, cfg, start, count = job
    return _BATCHES[kind](cfg, start, count)
