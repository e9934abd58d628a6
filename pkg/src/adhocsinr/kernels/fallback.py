"""numpy reference implementation of the sampling kernels.

This is the normative implementation of the contract documented in the
package docstring; the compiled extension mirrors it bitwise. Keep the
arithmetic associativity exactly as written.
"""

from __future__ import annotations

import numpy as np

from ..rng import realization_stream

MODEL_NFD = 0
MODEL_FD = 1
MODEL_PFD = 2

_MAX_POINTS = 1 << 26
_CHUNK = 64


def sample_arrivals(rng, mu: float, k_min: int, tail_rel_tol: float):
    """Draw arrival times S_k of the squared-distance process until the
    truncation rule fires.

    Returns (S, K): all drawn arrivals (a whole number of blocks) and the
    stop count K <= len(S). Termination is guaranteed for mu > 2 since
    the tail ratio decays like S_k^(1-mu/2); a hard cap guards against
    pathological (mu barely above 2, tiny tolerance) configurations.
    """
    em = -0.5 * mu
    tail_coef = 2.0 / (mu - 2.0)
    blocks = []
    total = 0
    offset = 0.0
    while True:
        size = k_min if total == 0 else total
        gaps = rng.standard_exponential(size, method="inv")
        blocks.append(offset + np.cumsum(gaps))
        offset = blocks[-1][-1]
        total += size
        S = np.concatenate(blocks) if len(blocks) > 1 else blocks[0]
        w = S**em
        interf = np.cumsum(w[1:])
        tail = tail_coef * (S[1:] * w[1:])
        cond = tail <= tail_rel_tol * interf
        cond[: k_min - 2] = False
        hit = int(np.argmax(cond))
        if cond[hit]:
            return S, hit + 2
        if total > _MAX_POINTS:
            raise RuntimeError(
                f"truncation rule did not fire within {_MAX_POINTS} points "
                f"(mu={mu}, tail_rel_tol={tail_rel_tol}); loosen the policy"
            )


def sinr_batch(mu, k_min, tail_rel_tol, compensate, model, delta_scaled, seed, start, count):
    """SINR samples for realizations [start, start+count).

    delta_scaled is the noise in arrival-time units, i.e.
    delta / (pi*lambda)**(mu/2); with delta = 0 the output is exactly
    independent of density.
    """
    em = -0.5 * mu
    tail_coef = 2.0 / (mu - 2.0)
    out = np.empty(count)
    for i in range(count):
        g = realization_stream(seed, start + i)
        S, K = sample_arrivals(g, mu, k_min, tail_rel_tol)
        w = S[:K] ** em
        if model == MODEL_NFD:
            num = w[0]
            acc = np.cumsum(w[1:])[-1]
        else:
            p = g.standard_exponential(K, method="inv")
            num = w[0] if model == MODEL_PFD else p[0] * w[0]
            acc = np.cumsum(p[1:] * w[1:])[-1]
        den = acc
        if compensate:
            den = den + tail_coef * (S[K - 1] * w[K - 1])
        den = den + delta_scaled
        out[i] = num / den
    return out


def mmimo_finite_batch(mu, k_min, tail_rel_tol, compensate, antennas, noise_scaled, seed, start, count):
    """Finite-antenna conjugate-beamforming SINR samples.

    noise_scaled is sigma_n^2/P_T in arrival-time units; the 1/M and
    1/M^2 factors of the SINR expression are applied here. Interferer
    channels are drawn and reduced in chunks of 64 so memory stays
    O(antennas), never O(antennas * interferers).
    """
    em = -0.5 * mu
    tail_coef = 2.0 / (mu - 2.0)
    m = int(antennas)
    mf = float(m)
    out = np.empty(count)
    for i in range(count):
        g = realization_stream(seed, start + i)
        S, K = sample_arrivals(g, mu, k_min, tail_rel_tol)
        w = S[:K] ** em
        des = g.standard_normal(2 * m)
        dx, dy = des[:m], des[m:]
        desired = np.cumsum(dx * dx + dy * dy)[-1] * 0.5
        acc = 0.0
        for lo in range(1, K, _CHUNK):
            hi = min(lo + _CHUNK, K)
            rows = hi - lo
            block = g.standard_normal((rows, 4 * m))
            ox = block[:, :m]
            oy = block[:, m : 2 * m]
            cx = block[:, 2 * m : 3 * m]
            cy = block[:, 3 * m :]
            re = np.cumsum(cx * ox + cy * oy, axis=1)[:, -1]
            im = np.cumsum(cx * oy - cy * ox, axis=1)[:, -1]
            own = np.cumsum(ox * ox + oy * oy, axis=1)[:, -1]
            htil2 = (re * re + im * im) / (2.0 * own)
            acc = acc + np.cumsum(w[lo:hi] * htil2)[-1]
        num = w[0] * (desired / mf)
        den = acc / mf
        if compensate:
            den = den + tail_coef * (S[K - 1] * w[K - 1]) / mf
        den = den + noise_scaled / (mf * mf)
        out[i] = num / den
    return out
