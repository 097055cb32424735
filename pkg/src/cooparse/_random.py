"""Seeded random streams.

All randomness derives from one 64-bit seed. Independent substreams are
keyed by a name plus integer indices through :class:`numpy.random.SeedSequence`,
so a draw never depends on how work was scheduled.
"""
from __future__ import annotations

import numbers
import zlib

import numpy as np

MAX_SEED = 2**64 - 1


def check_seed(seed) -> int:
    if isinstance(seed, bool) or not isinstance(seed, numbers.Integral):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def substream(seed: int, name: str, *indices: int) -> np.random.Generator:
    key = (zlib.crc32(name.encode("utf-8")),) + tuple(int(i) for i in indices)
    return np.random.default_rng(np.random.SeedSequence(check_seed(seed), spawn_key=key))


def as_generator(random_state=None) -> np.random.Generator:
    """Turn None, an int seed or a Generator into a Generator."""
    if isinstance(random_state, np.random.Generator):
        return random_state
    if random_state is None:
        return np.random.default_rng()
    return np.random.default_rng(check_seed(random_state))


def randbelow(rng: np.random.Generator, m: int) -> int:
    """Uniform integer in ``[0, m)`` for arbitrarily large ``m``."""
    if m <= 0:
        raise ValueError("m must be positive")
    if m <= 2**63:
        return int(rng.integers(0, m))
    nbits = m.bit_length()
    nwords = (nbits + 31) // 32
    excess = nwords * 32 - nbits
    while True:
        words = rng.integers(0, 2**32, size=nwords, dtype=np.uint64)
        r = 0
        for w in words:
            r = (r << 32) | int(w)
        r >>= excess
        if r < m:
            return r
