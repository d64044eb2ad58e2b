"""Deterministic pseudo-random numbers.

A fixed 64-bit linear congruential generator so that every run of the
library, on every platform, sees exactly the same stream for a given seed.
The stdlib Random is deliberately not used here: its stream is not part of
any compatibility contract and reproducibility of reports depends on ours.
"""

from __future__ import annotations

from typing import List

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1


class DeterministicRng:
    """64-bit LCG: state <- (state * 6364136223846793005 + 1442695040888963407) mod 2^64."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_raw(self) -> int:
        self.state = (self.state * _MULT + _INC) & _MASK
        return self.state

    def uniform_int(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi], both ends included."""
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        return lo + ((self.next_raw() >> 33) % span)

    def small_coefficients(self, count: int) -> List[int]:
        """`count` integers in [-7, 7], not all zero."""
        while True:
            out = [self.uniform_int(-7, 7) for _ in range(count)]
            if any(out):
                return out

    def square_matrix(self, n: int) -> List[List[int]]:
        """n x n integer matrix with entries in [-7, 7]."""
        return [[self.uniform_int(-7, 7) for _ in range(n)] for _ in range(n)]
