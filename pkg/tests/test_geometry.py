"""Distance sampling, truncation and the point-process utilities."""

import math

import numpy as np
import pytest

from adhocsinr.geometry import (
    DistanceSequence,
    NetworkConfig,
    TruncationPolicy,
    distances_from_arrival_times,
    emit_realization,
    nearest_pdf,
    sample_distances,
    tail_mean_interference,
)
from adhocsinr.mc import EmpiricalCdf, ks_distance, ks_one_sample_critical
from adhocsinr.numerics import integrate
from adhocsinr.rng import realization_stream


def _cfg(**kw):
    defaults = dict(lam=1.0, mu=3.7, delta=0.0, seed=7)
    defaults.update(kw)
    return NetworkConfig(**defaults)


class TestArrivalTransform:
    def test_unit_rate_arrivals(self):
        # gaps (1, 1, 1) accumulate to arrival times (1, 2, 3); with
        # lam = 1/pi the distances are their square roots
        arrivals = np.cumsum(np.ones(3))
        d = distances_from_arrival_times(arrivals, 1.0 / math.pi)
        assert np.array_equal(d, np.sqrt([1.0, 2.0, 3.0]))

    def test_mean_nearest_distance(self):
        lam = 0.4
        cfg = _cfg(lam=lam, seed=3, truncation=TruncationPolicy(k_min=2, tail_rel_tol=0.5))
        d1 = np.array([
            sample_distances(cfg, realization_stream(cfg.seed, i)).d[0] for i in range(20000)
        ])
        se = d1.std(ddof=1) / math.sqrt(d1.size)
        assert abs(d1.mean() - 1.0 / (2.0 * math.sqrt(lam))) < 3.0 * se

    def test_mean_scaled_square_is_one(self):
        cfg = _cfg(lam=2.5, seed=4, truncation=TruncationPolicy(k_min=2, tail_rel_tol=0.5))
        s1 = np.array([
            math.pi * cfg.lam * sample_distances(cfg, realization_stream(cfg.seed, i)).d[0] ** 2
            for i in range(20000)
        ])
        se = s1.std(ddof=1) / math.sqrt(s1.size)
        assert abs(s1.mean() - 1.0) < 3.0 * se


class TestSampleDistances:
    def test_strictly_increasing_and_tail_formula(self):
        cfg = _cfg()
        seq = sample_distances(cfg, realization_stream(cfg.seed, 0))
        assert np.all(np.diff(seq.d) > 0.0)
        assert seq.tail_mean == tail_mean_interference(float(seq.d[-1]), cfg.lam, cfg.mu)
        assert len(seq) >= cfg.truncation.k_min

    def test_stopping_rule_holds_at_k(self):
        cfg = _cfg(seed=12)
        seq = sample_distances(cfg, realization_stream(cfg.seed, 0))
        w = seq.d ** (-cfg.mu)
        accumulated = w[1:].sum()
        assert seq.tail_mean <= cfg.truncation.tail_rel_tol * accumulated * (1.0 + 1e-12)

    def test_density_scaling_coupling(self):
        # multiplying lam by c^2 shrinks every distance by 1/c, same draws
        base = _cfg(lam=0.05, seed=21)
        scaled = _cfg(lam=5.0, seed=21)
        a = sample_distances(base, realization_stream(21, 0))
        b = sample_distances(scaled, realization_stream(21, 0))
        assert len(a) == len(b)
        np.testing.assert_allclose(10.0 * b.d, a.d, rtol=1e-13)

    def test_nearest_distance_distribution(self):
        cfg = _cfg(lam=0.7, seed=9, truncation=TruncationPolicy(k_min=2, tail_rel_tol=0.5))
        d1 = np.array([
            sample_distances(cfg, realization_stream(cfg.seed, i)).d[0] for i in range(20000)
        ])
        cdf = lambda x: 1.0 - np.exp(-math.pi * cfg.lam * x * x)
        assert ks_distance(EmpiricalCdf(d1), cdf) < ks_one_sample_critical(d1.size, alpha=0.01)

    def test_determinism(self):
        cfg = _cfg(seed=33)
        a = sample_distances(cfg, realization_stream(33, 5))
        b = sample_distances(cfg, realization_stream(33, 5))
        assert np.array_equal(a.d, b.d)


class TestNearestPdf:
    def test_zero_at_origin(self):
        assert nearest_pdf(0.0, 0.05) == 0.0

    def test_normalization(self):
        value, _ = integrate(lambda x: nearest_pdf(x, 0.05), 0.0, math.inf)
        assert value == pytest.approx(1.0, rel=1e-8)

    def test_mode_location(self):
        lam = 0.3
        mode = 1.0 / math.sqrt(2.0 * math.pi * lam)
        x = np.linspace(0.25 * mode, 4.0 * mode, 4001)
        assert x[np.argmax(nearest_pdf(x, lam))] == pytest.approx(mode, rel=1e-3)


class TestEmitRealization:
    def test_expected_count(self):
        cfg = _cfg(lam=0.05)
        window = 20.0
        counts = [
            emit_realization(cfg, window, realization_stream(1, i)).shape[0] for i in range(500)
        ]
        mean = np.mean(counts)
        se = math.sqrt(cfg.lam * window**2 / len(counts))  # Poisson variance = mean
        assert abs(mean - cfg.lam * window**2) < 3.0 * se

    def test_window_containment(self):
        pts = emit_realization(_cfg(lam=2.0), 6.0, realization_stream(2, 0))
        assert np.all(np.abs(pts) <= 3.0)

    def test_sparse_density_usually_empty(self):
        pts = emit_realization(_cfg(lam=1e-8), 1.0, realization_stream(3, 0))
        assert pts.shape == (0, 2)

    def test_window_validation(self):
        with pytest.raises(ValueError):
            emit_realization(_cfg(), 0.0, realization_stream(0, 0))


class TestValidation:
    def test_network_config_invariants(self):
        with pytest.raises(ValueError):
            NetworkConfig(lam=0.0, mu=3.7)
        with pytest.raises(ValueError):
            NetworkConfig(lam=1.0, mu=2.0)
        with pytest.raises(ValueError):
            NetworkConfig(lam=1.0, mu=3.7, delta=-0.1)

    def test_truncation_policy_invariants(self):
        with pytest.raises(ValueError):
            TruncationPolicy(k_min=1)
        with pytest.raises(ValueError):
            TruncationPolicy(tail_rel_tol=0.0)

    def test_distance_sequence_invariants(self):
        with pytest.raises(ValueError):
            DistanceSequence(d=np.array([1.0, 1.0]), tail_mean=0.0)
        with pytest.raises(ValueError):
            DistanceSequence(d=np.array([0.0, 1.0]), tail_mean=0.0)
        with pytest.raises(ValueError):
            DistanceSequence(d=np.array([1.0, 2.0]), tail_mean=-1.0)
