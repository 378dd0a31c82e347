"""Seeded deterministic generators for random colorings.

All randomness flows through SplitMix64, a tiny fixed algorithm with
64-bit seeds, so identical seeds reproduce identical structures on any
platform or implementation (the stdlib Mersenne Twister's integer
helpers carry no such cross-implementation pin).
"""

from __future__ import annotations

from math import comb

from .core import Coloring, TrapIntervals, iter_colex

GENERATOR_NAME = "splitmix64"

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 PRNG.  Bounded draws use unbiased rejection sampling."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform draw from [0, bound)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = ((1 << 64) // bound) * bound
        while True:
            v = self.next64()
            if v < threshold:
                return v % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform draw from [lo, hi] inclusive."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.below(hi - lo + 1)

    def shuffle(self, xs: list) -> None:
        for i in range(len(xs) - 1, 0, -1):
            j = self.below(i + 1)
            xs[i], xs[j] = xs[j], xs[i]


def derive_seed(seed: int, index: int) -> int:
    """Seed for the index-th trial of a seeded batch."""
    rng = SplitMix64((seed ^ (index * 0xA24BAED4963EE407)) & _MASK64)
    return rng.next64()


def random_uniform_coloring(r: int, n: int, c: int, seed: int) -> Coloring:
    """Values drawn uniformly from [0, c), in colex rank order."""
    if c < 1:
        raise ValueError("color count c must be >= 1")
    rng = SplitMix64(seed)
    values = tuple(rng.below(c) for _ in range(comb(n, r)))
    return Coloring(r, n, values, color_count=c)


def random_b_bounded_coloring(r: int, n: int, b: int, seed: int,
                              color_count: int | None = None) -> Coloring:
    """Shuffle the tuple ranks, then assign colors in blocks of size <= b."""
    if b < 1:
        raise ValueError("bound b must be >= 1")
    total = comb(n, r)
    needed = -(-total // b)  # ceil
    if color_count is not None and needed > color_count:
        raise ValueError(
            f"b-bounded coloring infeasible: C({n},{r}) = {total} tuples need "
            f"{needed} colors but only {color_count} declared")
    rng = SplitMix64(seed)
    ranks = list(range(total))
    rng.shuffle(ranks)
    values = [0] * total
    for idx, rank in enumerate(ranks):
        values[rank] = idx // b
    return Coloring(r, n, tuple(values),
                    color_count=color_count if color_count is not None else max(needed, 1))


def random_k_trapped_coloring(r: int, n: int, k: int, seed: int,
                              cap: int = 16) -> Coloring:
    """Values drawn uniformly from each tuple's k-th trap interval.

    The unbounded top interval is capped at max(tuple) + cap so draws
    stay finite; the cap is part of the generator's parameters.
    """
    if k < 0 or k > r:
        raise ValueError(f"trap index k must be in 0..{r}")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    rng = SplitMix64(seed)
    values = []
    for t in iter_colex(n, r):  # rank order
        lo, hi = TrapIntervals(t).interval(k)
        if hi is None:
            hi = t[-1] + cap
        values.append(rng.randint(lo, hi))
    return Coloring(r, n, tuple(values))


def random_coloring(kind: str, r: int, n: int, seed: int, *, c: int | None = None,
                    b: int | None = None, k: int | None = None,
                    cap: int = 16, color_count: int | None = None) -> Coloring:
    """Dispatch by kind: "uniform" (needs c), "b-bounded" (needs b),
    "k-trapped" (needs k, optional cap)."""
    if kind == "uniform":
        if c is None:
            raise ValueError("uniform coloring needs a color count c")
        return random_uniform_coloring(r, n, c, seed)
    if kind == "b-bounded":
        if b is None:
            raise ValueError("b-bounded coloring needs a bound b")
        return random_b_bounded_coloring(r, n, b, seed, color_count=color_count)
    if kind == "k-trapped":
        if k is None:
            raise ValueError("k-trapped coloring needs a trap index k")
        return random_k_trapped_coloring(r, n, k, seed, cap=cap)
    raise ValueError(f"unknown coloring kind {kind!r}")
