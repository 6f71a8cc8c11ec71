"""Deterministic random number generation.

All randomness in the package flows through :func:`seeded_rng` so that equal
seeds reproduce identical results run to run. The generator is NumPy's PCG64;
seeds are reduced modulo 2**64, so any Python integer (negative included) is a
valid seed.
"""

import numpy as np

_MASK64 = (1 << 64) - 1


def seeded_rng(seed: int, *stream: int) -> np.random.Generator:
    """Generator keyed by ``seed`` plus optional stream labels.

    Distinct ``stream`` labels give independent, reproducible substreams of
    the same seed (per-class patterns, per-epoch shuffles and so on).
    """
    key = [seed & _MASK64] + [s & _MASK64 for s in stream]
    return np.random.Generator(np.random.PCG64(key))
