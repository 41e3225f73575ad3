"""SplitMix64, the only source of randomness in the package.

Draw ``t`` (0-based) of the stream seeded with ``s`` is
``mix(s + (t + 1) * 0x9E3779B97F4A7C15 mod 2**64)`` where ``mix`` is the
SplitMix64 finaliser (xor-shift 30, multiply 0xBF58476D1CE4E5B9,
xor-shift 27, multiply 0x94D049BB133111EB, xor-shift 31). Being counter
based, any draw can be computed directly, and all integer outputs are
bit-identical across platforms.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
DEFAULT_SEED = 20240917


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def as_seed(seed) -> np.uint64:
    seed = int(seed)
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
    return np.uint64(seed)


def derive_seed(base: int, *keys: int) -> int:
    """Hash ``base`` and integer keys into an independent 64-bit seed."""
    h = mix64(int(base) + GAMMA)
    for key in keys:
        h = mix64(h ^ ((int(key) + 1) * GAMMA & MASK64))
    return h


class SplitMix64:
    """Sequential view of the stream, for scalar use and golden tests."""

    def __init__(self, seed: int = DEFAULT_SEED):
        self.state = int(as_seed(seed))

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def next_below(self, k: int) -> int:
        """Uniform integer in [0, k) by 32-bit multiply-shift (k < 2**32)."""
        return ((self.next_u64() >> 32) * k) >> 32

    def next_unit(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))
