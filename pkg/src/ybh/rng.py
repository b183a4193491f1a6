"""Deterministic 64-bit PRNG driving every randomized suite.

SplitMix64 (Steele-Lea-Vigna): a published generator with a trivial,
platform-independent implementation, so seeded reports are byte-identical
everywhere.  All randomized tests and the CLI selftest draw from this one
stream; nothing in the package touches the stdlib `random` module.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform value in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform value in [lo, hi], inclusive."""
        return lo + self.randrange(hi - lo + 1)
