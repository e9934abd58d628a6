"""Per-link power fading coefficients for the three channel models."""

from __future__ import annotations

from enum import Enum

import numpy as np

__all__ = ["FadingModel", "draw_powers"]


class FadingModel(Enum):
    NON_FADING = "nfd"
    RAYLEIGH = "fd"
    PARTIAL_FADING = "pfd"


def draw_powers(model: FadingModel, count: int, rng: np.random.Generator) -> np.ndarray:
    """Power coefficients |h|^2 for one realization; entry 0 is the desired link.

    Non-fading: all ones (no draws). Rayleigh: i.i.d. unit-mean
    exponentials via inverse CDF. Partial fading: like Rayleigh but the
    desired entry is replaced by 1; a full block of `count` draws is
    consumed either way so interferer coefficients stay aligned with the
    Rayleigh stream under a common seed.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if model is FadingModel.NON_FADING:
        return np.ones(count)
    p = rng.standard_exponential(count, method="inv")
    if model is FadingModel.PARTIAL_FADING:
        p[0] = 1.0
    return p
