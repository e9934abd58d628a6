"""Monte Carlo sampling kernels: compiled extension with numpy fallback.

The compiled backend (`_speedups`, Cython) and the numpy reference
backend (`fallback`) implement one sampling contract and produce
bitwise-identical output. The contract, per realization index i:

1.  Stream: ``Generator(Philox(SeedSequence(seed, spawn_key=(i,))))``.
2.  Arrival gaps of the squared-distance process are drawn with
    ``standard_exponential(size, method="inv")`` in doubling blocks
    (k_min, then k_min, 2*k_min, 4*k_min, ...). Whole blocks are always
    consumed from the stream even when the stop condition is met
    mid-block.
3.  Truncation stops at the first index k >= k_min (1-based) with
    ``tail_coef*(S_k*w_k) <= tail_rel_tol * I_k`` where S is the arrival
    time, w = S**(-mu/2), I_k the running interferer sum of w (k >= 2)
    and tail_coef = 2/(mu-2). All quantities are in scale-free S units,
    which makes samples with delta = 0 exactly density-invariant.
4.  Fading powers (Rayleigh / partial): one ``standard_exponential(K,
    method="inv")`` block after the arrivals; the partial-fading model
    overwrites the desired entry with 1 so interferer draws stay aligned
    with the Rayleigh stream. Non-fading draws nothing.
5.  Multi-antenna channels: ``standard_normal(2M)`` for the desired
    vector ([re(M), im(M)]), then ``standard_normal(4M)`` per interferer
    ([own re, own im, cross re, cross im]); interferer contributions are
    reduced in chunks of 64.

Reductions are sequential (cumsum semantics) and the arithmetic
parenthesization is part of the contract; the extension is compiled with
-ffp-contract=off so it cannot fuse multiply-adds.

Set ``ADHOCSINR_BACKEND=fallback`` (or ``compiled``) to override the
automatic choice.
"""

from __future__ import annotations

import os

from . import fallback
from .fallback import MODEL_FD, MODEL_NFD, MODEL_PFD, sample_arrivals

try:
    from . import _speedups
except ImportError:  # extension not built; numpy path is fully equivalent
    _speedups = None

__all__ = [
    "MODEL_NFD",
    "MODEL_FD",
    "MODEL_PFD",
    "sample_arrivals",
    "sinr_batch",
    "mmimo_finite_batch",
    "active_backend",
    "available_backends",
    "get_backend",
]


def available_backends() -> tuple[str, ...]:
    return ("compiled", "fallback") if _speedups is not None else ("fallback",)


def get_backend(name: str):
    if name == "fallback":
        return fallback
    if name == "compiled":
        if _speedups is None:
            raise RuntimeError("compiled kernels are not available in this install")
        return _speedups
    raise ValueError(f"unknown backend {name!r}")


def _select():
    choice = os.environ.get("ADHOCSINR_BACKEND", "auto")
    if choice == "auto":
        return _speedups if _speedups is not None else fallback
    return get_backend(choice)


def active_backend() -> str:
    return "compiled" if _select() is _speedups and _speedups is not None else "fallback"


def sinr_batch(mu, k_min, tail_rel_tol, compensate, model, delta_scaled, seed, start, count):
    """SINR samples for realizations [start, start+count); S-unit noise."""
    return _select().sinr_batch(
        mu, k_min, tail_rel_tol, compensate, model, delta_scaled, seed, start, count
    )


def mmimo_finite_batch(mu, k_min, tail_rel_tol, compensate, antennas, noise_scaled, seed, start, count):
    """Finite-antenna conjugate-beamforming SINR samples; S-unit noise."""
    return _select().mmimo_finite_batch(
        mu, k_min, tail_rel_tol, compensate, antennas, noise_scaled, seed, start, count
    )
