"""Seedable random numbers that reproduce across languages.

A 64-bit linear congruential generator (Knuth's MMIX constants):

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2^64

Doubles are drawn from the top 53 bits: uniform() = (state >> 11) / 2^53 in
[0, 1).  Complex samples interleave real part first, then imaginary part.
The CLI and the randomized checks use this generator so that a (descriptor,
seed) pair pins down every trial exactly.
"""

from __future__ import annotations

import numpy as np

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK64 = (1 << 64) - 1


class PortableRng:
    """Deterministic 64-bit LCG; the seed is reduced mod 2^64."""

    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (MULTIPLIER * self.state + INCREMENT) & MASK64
        return self.state

    def uniform(self) -> float:
        """Uniform in [0, 1) with 53-bit resolution."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def symmetric(self) -> float:
        """Uniform in [-1, 1)."""
        return 2.0 * self.uniform() - 1.0

    def complex_values(self, count: int) -> np.ndarray:
        """count complex doubles, each re then im, both uniform in [-1, 1)."""
        out = np.empty(count, dtype=np.complex128)
        for i in range(count):
            re = self.symmetric()
            im = self.symmetric()
            out[i] = complex(re, im)
        return out

    def integer(self, bound: int) -> int:
        """Uniform integer in [0, bound) (bound must be positive).

        Uses rejection on the top bits so every residue is equally likely.
        """
        if bound <= 0:
            raise ValueError("bound must be positive")
        span = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < span:
                return x % bound
