"""Counter-based RNG stream discipline.

Realization k of a run draws from an independent Philox stream derived
from (seed, k), so serial and parallel execution produce identical
sample sets and any realization can be regenerated in isolation.
"""

from __future__ import annotations

import numpy as np

__all__ = ["realization_stream"]


def realization_stream(seed: int, index: int) -> np.random.Generator:
    """Generator for realization `index` of a run seeded with `seed`."""
    if index < 0:
        raise ValueError("realization index must be nonnegative")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))
