"""Deterministic pseudo-random numbers: xoshiro256** seeded via splitmix64.

The generator state lives in a 4-element uint64 numpy array so the jitted
kernels (see _kernels) can advance the same stream in place.  The scalar
methods here and the kernel implementation must stay bit-identical; a test
asserts stream equality between the two.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One splitmix64 output for the 64-bit input x."""
    x = (x + _GOLDEN) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def substream_seed(master_seed: int, index: int) -> int:
    """Seed for substream `index` of a master seed (used for parallel work)."""
    return splitmix64((master_seed ^ index) & _MASK64)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Rng:
    """xoshiro256** generator; identical seeds give identical streams."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        s = seed & _MASK64
        state = np.empty(4, dtype=np.uint64)
        for i in range(4):
            out = splitmix64(s)
            s = (s + _GOLDEN) & _MASK64
            state[i] = out
        self._state = state

    @property
    def state(self) -> np.ndarray:
        """Raw uint64[4] state, shared with the jitted kernels."""
        return self._state

    def next_u64(self) -> int:
        s = self._state
        s0, s1, s2, s3 = int(s[0]), int(s[1]), int(s[2]), int(s[3])
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        s[0] = s0
        s[1] = s1
        s[2] = s2
        s[3] = s3
        return result

    def randrange(self, n: int) -> int:
        """Unbiased integer in [0, n) via rejection of the top partial block."""
        if n <= 0:
            raise ValueError("randrange() bound must be positive")
        limit = (_MASK64 // n) * n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def choice(self, seq):
        if not seq:
            raise ValueError("choice() from empty sequence")
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]
