"""Seed handling.

Every randomized entry point takes a ``seed`` that is either an int, a
``numpy.random.Generator``, or None (ambient entropy).  Internally a stage
that needs several independent streams derives them with ``split``, which is
counter-based so that parallel stages stay reproducible.
"""

from __future__ import annotations

import numpy as np

Seed = "int | np.random.Generator | None"


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def split(seed, *labels) -> np.random.Generator:
    """Derive an independent, reproducible stream from an integer seed.

    ``split(s, "bsg", round_idx)`` always yields the same stream for the same
    arguments; distinct labels yield independent streams.
    """
    if isinstance(seed, np.random.Generator):
        # Child streams of a live generator: spawn keeps independence.
        return seed.spawn(1)[0]
    key = [abs(hash(lbl)) % (2**32) for lbl in labels]
    base = [] if seed is None else [int(seed) % (2**64)]
    return np.random.default_rng(np.random.SeedSequence(base + key))


def randint_64(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**63 - 1, dtype=np.int64))
