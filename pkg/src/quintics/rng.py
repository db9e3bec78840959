"""Deterministic 64-bit pseudo-random generator (SplitMix64).

SplitMix64 is a tiny, well-documented mixing generator: state advances by the
odd constant 0x9E3779B97F4A7C15 and each output is finalized with two
xor-shift-multiply rounds.  It is trivially portable across languages, which
is what makes sampled configurations reproducible from a single integer seed.

Sweeps over (type, sample-index) pairs derive one independent stream per pair
with :func:`derive_seed`, so a single base seed controls a whole run.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        return _mix(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection on the top range."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % bound

    def int_in(self, lo: int, hi: int) -> int:
        """Uniform integer in the inclusive range [lo, hi]."""
        return lo + self.below(hi - lo + 1)


def derive_seed(base: int, *indices: int) -> int:
    """Split one base seed into an independent stream per index tuple."""
    z = base & _MASK
    for ix in indices:
        z = _mix((z ^ (ix & _MASK)) + _GAMMA & _MASK)
    return z
