"""Multi-antenna conjugate-beamforming sampling."""

import math

import numpy as np
import pytest

from adhocsinr.channel import FadingModel
from adhocsinr.geometry import NetworkConfig, TruncationPolicy, sample_distances
from adhocsinr.mc import EmpiricalCdf, ks_distance, ks_two_sample_critical, run_mc
from adhocsinr.mmimo import (
    MmimoConfig,
    _htil_squared,
    conjugate_beamformer,
    coupled_samples,
    mmimo_asymptotic_sinr,
    mmimo_finite_sinr,
    run_mmimo,
)
from adhocsinr.rng import realization_stream


def _base(**kw):
    defaults = dict(
        lam=1.0, mu=3.7, delta=0.0, seed=404,
        truncation=TruncationPolicy(k_min=200, tail_rel_tol=1e-2),
    )
    defaults.update(kw)
    return NetworkConfig(**defaults)


class TestConfigAndBeamformer:
    def test_validation(self):
        with pytest.raises(ValueError):
            MmimoConfig(base=_base(), antennas=0)
        with pytest.raises(ValueError):
            MmimoConfig(base=_base(), antennas=4, noise_over_power=-1.0)

    def test_power_budget_exact(self):
        rng = realization_stream(1, 0)
        m, p_t = 64, 2.5
        h = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        w = conjugate_beamformer(h, m * p_t)
        assert np.linalg.norm(w) ** 2 == pytest.approx(m * p_t, rel=1e-12)
        with pytest.raises(ValueError):
            conjugate_beamformer(np.zeros(4), 1.0)


class TestEffectiveCoefficients:
    def test_unit_variance(self):
        # the projected cross channel is CN(0,1) for any antenna count
        h2 = _htil_squared(realization_stream(2, 0), 20000, 8)
        se = h2.std(ddof=1) / math.sqrt(h2.size)
        assert abs(h2.mean() - 1.0) < 3.0 * se

    def test_desired_power_hardens(self):
        # ||h||^2 / M concentrates on 1 as M grows
        m = 256
        means = []
        for i in range(2000):
            v = realization_stream(3, i).standard_normal(2 * m)
            means.append(0.5 * float(v @ v) / m)
        means = np.array(means)
        se = means.std(ddof=1) / math.sqrt(means.size)
        assert abs(means.mean() - 1.0) < 3.0 * se
        assert means.std(ddof=1) < 0.1  # hardened


class TestSingleSampleOps:
    def test_finite_matches_batch(self):
        cfg = MmimoConfig(base=_base(seed=31), antennas=8, noise_over_power=0.01)
        batch = run_mmimo(cfg, "finite", 1)[0]
        rng = realization_stream(31, 0)
        dists = sample_distances(cfg.base, rng)
        single = mmimo_finite_sinr(cfg, dists, rng)
        assert single == pytest.approx(batch, rel=1e-12)

    def test_asymptotic_matches_batch(self):
        cfg = MmimoConfig(base=_base(seed=32), antennas=16, noise_over_power=0.01)
        batch = run_mmimo(cfg, "asymptotic", 1)[0]
        rng = realization_stream(32, 0)
        dists = sample_distances(cfg.base, rng)
        single = mmimo_asymptotic_sinr(cfg, dists, rng)
        assert single == pytest.approx(batch, rel=1e-12)


class TestDistributions:
    def test_antenna_doubling_is_exact_3db_shift(self):
        # with zero noise the asymptotic form scales linearly in M
        a = run_mmimo(MmimoConfig(base=_base(seed=33), antennas=4), "asymptotic", 100)
        b = run_mmimo(MmimoConfig(base=_base(seed=33), antennas=8), "asymptotic", 100)
        assert np.array_equal(b, 2.0 * a)

    def test_asymptotic_is_scaled_partial_fading(self):
        # sigma_n = 0: samples/M reproduce the partial-fading kernel exactly
        cfg = MmimoConfig(base=_base(seed=34), antennas=32)
        asym = run_mmimo(cfg, "asymptotic", 200)
        pfd = run_mc(cfg.base, FadingModel.PARTIAL_FADING, 200).samples
        assert np.array_equal(asym, 32.0 * pfd)

    def test_single_antenna_matches_rayleigh(self):
        # M = 1 collapses to the Rayleigh model with delta = sigma_n^2/P_T
        noise = 0.01
        cfg = MmimoConfig(base=_base(seed=35), antennas=1, noise_over_power=noise)
        finite = run_mmimo(cfg, "finite", 8000)
        rayleigh = run_mc(_base(seed=36, delta=noise), FadingModel.RAYLEIGH, 8000).samples
        d = ks_distance(EmpiricalCdf(finite), EmpiricalCdf(rayleigh))
        assert d < ks_two_sample_critical(8000, 8000, alpha=0.01)

    def test_convergence_direction(self):
        n = 1500
        ks = {}
        for m in (2, 32):
            cfg = MmimoConfig(base=_base(seed=37), antennas=m)
            fin = run_mmimo(cfg, "finite", n)
            asym = run_mmimo(cfg, "asymptotic", n)
            ks[m] = ks_distance(EmpiricalCdf(fin), EmpiricalCdf(asym))
        assert ks[32] < ks[2]

    def test_run_validation(self):
        cfg = MmimoConfig(base=_base(), antennas=2)
        with pytest.raises(ValueError):
            run_mmimo(cfg, "finite", 0)
        with pytest.raises(ValueError):
            run_mmimo(cfg, "typo", 10)

    def test_parallel_matches_serial(self):
        cfg = MmimoConfig(base=_base(seed=38), antennas=4, noise_over_power=0.02)
        serial = run_mmimo(cfg, "finite", 64, workers=1)
        parallel = run_mmimo(cfg, "finite", 64, workers=2)
        assert np.array_equal(serial, parallel)

    def test_coupled_pairs_converge_samplewise(self):
        # shared channel draws: the pair ratio concentrates around 1 as M
        # grows, which is the point of the coupling
        spread = {}
        for m in (2, 64):
            fin, asym = coupled_samples(MmimoConfig(base=_base(seed=39), antennas=m), 300)
            spread[m] = np.std(fin / asym)
        assert spread[64] < 0.25 * spread[2]
