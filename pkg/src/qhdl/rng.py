"""Deterministic measurement randomness: xoshiro256** seeded via splitmix64.

The generator is fixed so that a (netlist, stimulus, seed) triple produces the
same trace on every platform and in every implementation language.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1


def _splitmix64_next(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31), state


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Rng:
    """xoshiro256** stream; identical seeds yield identical draws everywhere."""

    def __init__(self, seed: int):
        sm = seed & _MASK64
        s = []
        for _ in range(4):
            value, sm = _splitmix64_next(sm)
            s.append(value)
        self._s = s
        self.seed = seed & _MASK64

    @classmethod
    def from_state(cls, state: tuple[int, int, int, int]) -> "Rng":
        """Start from raw generator words (used by the stream self-tests)."""
        rng = cls.__new__(cls)
        rng._s = [w & _MASK64 for w in state]
        rng.seed = 0
        return rng

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s[1] << 17) & _MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def uniform(self) -> float:
        """Double in [0, 1) built from the top 53 bits of one output word."""
        return (self.next_u64() >> 11) * 2.0**-53
