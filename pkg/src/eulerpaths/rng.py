"""SplitMix64, the 64-bit generator from Steele, Lea and Flood (OOPSLA 2014).

Written out in full so a seed produces the same stream on every platform
and Python version. The state advances by the golden-ratio gamma
``0x9E3779B97F4A7C15`` and each output is the state pushed through the
MurmurHash3-style finalizer with constants ``0xBF58476D1CE4E5B9`` and
``0x94D049BB133111EB``.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``.

        Outputs smaller than ``2**64 mod bound`` are rejected so the modulo
        carries no bias.
        """
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x >= threshold:
                return x % bound

    def permutation(self, n: int) -> list[int]:
        """Fisher-Yates shuffle of ``range(n)``, swapping from the top down."""
        p = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            p[i], p[j] = p[j], p[i]
        return p
