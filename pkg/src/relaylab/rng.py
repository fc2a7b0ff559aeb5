"""SplitMix64, a 64-bit-state generator with a fixed, portable update rule.

Update: ``state += 0x9E3779B97F4A7C15`` (mod 2**64), then the output is the
state mixed by ``z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
z *= 0x94D049BB133111EB; z ^= z >> 31`` (all mod 2**64).  Uniform doubles use
the top 53 bits: ``(z >> 11) * 2**-53``.  Any implementation following these
rules reproduces the same stream for the same seed.
"""
from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int) -> None:
        if seed < 0:
            raise ValueError("seed must be an unsigned integer")
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def log_uniform(self, low: float, high: float) -> float:
        """Sample whose base-10 logarithm is uniform on ``[log10(low), log10(high))``."""
        import math

        a, b = math.log10(low), math.log10(high)
        return 10.0 ** (a + (b - a) * self.uniform())
