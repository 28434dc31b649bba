"""Deterministic substream derivation for parallel-safe sampling.

Every sampler in the package draws from ``chunk_generator(seed, k)`` for
chunk index ``k``.  Substreams for distinct chunk indices are statistically
independent and reproducible, so chunked generation is bitwise stable for a
fixed chunk size no matter how chunks are scheduled.
"""

from __future__ import annotations

import numpy as np


def chunk_generator(seed: int, chunk_index: int = 0) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(chunk_index),))
    return np.random.Generator(np.random.PCG64(seq))


def chunk_bounds(n: int, chunk_size: int | None) -> list[tuple[int, int]]:
    if chunk_size is None or chunk_size >= n:
        return [(0, n)]
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    return [(i, min(i + chunk_size, n)) for i in range(0, n, chunk_size)]
