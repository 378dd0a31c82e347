"""Domain types and witness predicates for finite colorings of r-subsets.

A coloring assigns a natural-number color to every r-element subset of
{0..n-1}.  Values are stored densely, indexed by colexicographic rank,
so a coloring extends to a larger n without re-indexing existing tuples.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

Palette = tuple[int, ...]  # deduplicated colors, ascending


def validate_tuple(t: Iterable[int]) -> tuple[int, ...]:
    """Return t as a tuple, rejecting anything but strictly increasing naturals."""
    out = tuple(t)
    for i, x in enumerate(out):
        if not isinstance(x, int) or x < 0:
            raise ValueError(f"tuple elements must be naturals, got {x!r}")
        if i > 0 and out[i - 1] >= x:
            raise ValueError(f"tuple must be strictly increasing, got {out}")
    return out


def colex_rank(t: Iterable[int]) -> int:
    """Colex rank of a strictly increasing tuple: sum of C(t[i], i+1)."""
    return sum(comb(x, i + 1) for i, x in enumerate(validate_tuple(t)))


def colex_unrank(rank: int, r: int) -> tuple[int, ...]:
    """Inverse of colex_rank for arity r."""
    if rank < 0 or r < 0:
        raise ValueError("rank and arity must be non-negative")
    out = [0] * r
    for i in range(r, 0, -1):
        # largest m with C(m, i) <= rank; binary search over m
        lo, hi = i - 1, i - 1
        while comb(hi + 1, i) <= rank:
            hi = 2 * hi + 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if comb(mid, i) <= rank:
                lo = mid
            else:
                hi = mid - 1
        out[i - 1] = lo
        rank -= comb(lo, i)
    return tuple(out)


def iter_colex(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """All r-subsets of {0..n-1} in colex order (rank order)."""
    if r == 0:
        yield ()
        return
    if r > n:
        return
    for top in range(r - 1, n):
        for rest in iter_colex(top, r - 1):
            yield rest + (top,)


@dataclass(frozen=True)
class Coloring:
    """A total map from r-subsets of {0..n-1} to colors, stored by colex rank.

    color_count, when present, declares a finite color universe: every
    value must be < color_count.  Absent, colors are unbounded naturals.
    """

    r: int
    n: int
    values: tuple[int, ...]
    color_count: int | None = None

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("arity r must be >= 1")
        if self.n < 0:
            raise ValueError("domain bound n must be >= 0")
        object.__setattr__(self, "values", tuple(self.values))
        expected = comb(self.n, self.r)
        if len(self.values) != expected:
            raise ValueError(
                f"values length {len(self.values)} != C({self.n},{self.r}) = {expected}")
        for v in self.values:
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"colors must be naturals, got {v!r}")
        if self.color_count is not None:
            if self.color_count < 1:
                raise ValueError("color_count must be >= 1")
            bad = [v for v in self.values if v >= self.color_count]
            if bad:
                raise ValueError(
                    f"value {bad[0]} exceeds declared color_count {self.color_count}")

    def value(self, t: Iterable[int]) -> int:
        """Color of the r-subset t."""
        t = validate_tuple(t)
        if len(t) != self.r:
            raise ValueError(f"expected arity {self.r}, got {len(t)}")
        if t and t[-1] >= self.n:
            raise ValueError(f"tuple {t} outside domain bound {self.n}")
        return self.values[colex_rank(t)]

    def tuples(self) -> Iterator[tuple[int, ...]]:
        """Domain tuples in colex (rank) order."""
        return iter_colex(self.n, self.r)

    def with_values(self, values: Iterable[int],
                    color_count: int | None = None) -> "Coloring":
        return Coloring(self.r, self.n, tuple(values), color_count)


# --- property specifications -------------------------------------------------

@dataclass(frozen=True)
class Homogeneous:
    """Constant on all r-subsets of the witness."""


@dataclass(frozen=True)
class Achromatic:
    """At most d distinct colors on r-subsets of the witness."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("achromatic degree d must be >= 1")


@dataclass(frozen=True)
class Free:
    """No tuple's color lands in the witness outside the tuple itself."""


@dataclass(frozen=True)
class Thin:
    """Palette differs from the declared finite color universe."""

    universe: tuple[int, ...]

    def __post_init__(self):
        uni = tuple(sorted(set(self.universe)))
        if not uni:
            raise ValueError("thin universe must be nonempty")
        if any(u < 0 for u in uni):
            raise ValueError("thin universe must contain naturals")
        object.__setattr__(self, "universe", uni)


@dataclass(frozen=True)
class Rainbow:
    """Injective on r-subsets of the witness."""


PropertySpec = Homogeneous | Achromatic | Free | Thin | Rainbow


def _as_subset(f: Coloring, H: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted(set(H)))
    for x in out:
        if x < 0 or x >= f.n:
            raise ValueError(f"element {x} outside coloring domain [0, {f.n})")
    return out


def palette(f: Coloring, H: Iterable[int]) -> Palette:
    """All f-values over r-subsets of H, deduplicated and ascending."""
    hs = _as_subset(f, H)
    return tuple(sorted({f.values[colex_rank(t)] for t in combinations(hs, f.r)}))


def check_property(f: Coloring, H: Iterable[int], spec: PropertySpec) -> bool:
    """Does H witness the property under f?  Vacuously true when |H| < r."""
    hs = _as_subset(f, H)
    if isinstance(spec, (Homogeneous, Achromatic)):
        d = 1 if isinstance(spec, Homogeneous) else spec.d
        seen: set[int] = set()
        for t in combinations(hs, f.r):
            seen.add(f.values[colex_rank(t)])
            if len(seen) > d:
                return False
        return True
    if isinstance(spec, Free):
        hset = set(hs)
        for t in combinations(hs, f.r):
            v = f.values[colex_rank(t)]
            if v in hset and v not in t:
                return False
        return True
    if isinstance(spec, Thin):
        return set(palette(f, hs)) != set(spec.universe)
    if isinstance(spec, Rainbow):
        seen = set()
        for t in combinations(hs, f.r):
            v = f.values[colex_rank(t)]
            if v in seen:
                return False
            seen.add(v)
        return True
    raise TypeError(f"unknown property spec {spec!r}")


def color_multiplicities(f: Coloring) -> Counter:
    """How many tuples carry each color."""
    return Counter(f.values)


def is_b_bounded(f: Coloring, b: int) -> bool:
    """Every color has at most b preimage tuples."""
    if b < 1:
        raise ValueError("bound b must be >= 1")
    counts = color_multiplicities(f)
    return all(k <= b for k in counts.values())


# --- trap intervals -----------------------------------------------------------

@dataclass(frozen=True)
class TrapIntervals:
    """The r+1 intervals induced by a tuple: [0, t[0]], [t[k-1], t[k]], ...,
    and the final (t[r-1], oo).  Closed intervals share endpoints, so a value
    can belong to two adjacent intervals."""

    anchor: tuple[int, ...]

    def __post_init__(self):
        t = validate_tuple(self.anchor)
        if not t:
            raise ValueError("trap intervals need a nonempty anchor tuple")
        object.__setattr__(self, "anchor", t)

    @property
    def r(self) -> int:
        return len(self.anchor)

    def interval(self, k: int) -> tuple[int, int | None]:
        """(lo, hi) bounds of interval k; hi None means unbounded above.
        The last interval is open at its lower end."""
        t = self.anchor
        if k == 0:
            return (0, t[0])
        if k < self.r:
            return (t[k - 1], t[k])
        if k == self.r:
            return (t[-1] + 1, None)
        raise IndexError(f"interval index {k} out of range 0..{self.r}")

    def contains(self, k: int, value: int) -> bool:
        lo, hi = self.interval(k)
        return value >= lo and (hi is None or value <= hi)

    def index_of(self, value: int) -> int:
        """Least k whose interval contains value (endpoints resolve downward)."""
        for k in range(self.r + 1):
            if self.contains(k, value):
                return k
        raise ValueError(f"value {value} not covered")  # unreachable: intervals cover


def trap_index(f: Coloring, t: Iterable[int]) -> int:
    """Least k with f(t) inside the k-th trap interval of t."""
    t = validate_tuple(t)
    return TrapIntervals(t).index_of(f.value(t))


def is_k_trapped(f: Coloring, k: int) -> bool:
    """Is f(t) inside the k-th trap interval for every domain tuple t?
    Endpoint values shared with the neighbouring interval still count."""
    if k < 0 or k > f.r:
        raise ValueError(f"trap index k must be in 0..{f.r}")
    for t in f.tuples():
        if not TrapIntervals(t).contains(k, f.values[colex_rank(t)]):
            return False
    return True
