"""Effective coloring-to-coloring transformations and greedy set builders.

Each transformation carries a soundness guarantee relating witnesses of
the output back to witnesses of the input: achromatic sets for a
truncated coloring are thin for the original, free sets for the
rainbow-to-free companion are rainbows for the original, and sets free
for every trap component are free for the decomposed coloring.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .core import (Coloring, Free, Palette, check_property,
                   color_multiplicities, colex_unrank, palette, validate_tuple)


class NotTwoBounded(ValueError):
    """Input coloring has a color with more than two preimage tuples."""

    def __init__(self, color: int, multiplicity: int):
        self.color = color
        self.multiplicity = multiplicity
        super().__init__(
            f"color {color} has {multiplicity} preimage tuples (max 2)")


@dataclass(frozen=True)
class WindowCondition:
    """Finite stem-plus-reservoir pair: the stem sits entirely below the
    window."""

    stem: tuple[int, ...]
    window: tuple[int, ...]

    def __post_init__(self):
        stem = validate_tuple(self.stem)
        window = validate_tuple(self.window)
        if stem and window and stem[-1] >= window[0]:
            raise ValueError(
                f"stem max {stem[-1]} must lie below window min {window[0]}")
        object.__setattr__(self, "stem", stem)
        object.__setattr__(self, "window", window)


@dataclass(frozen=True)
class LimitColoring:
    """Partial coloring of arity-m tuples obtained as the stable value of
    an arity-(m+1) coloring along a window; defined exactly where the last
    `threshold` usable witnesses agree."""

    arity: int
    threshold: int
    table: Mapping[tuple[int, ...], int]
    undefined: tuple[tuple[int, ...], ...]

    def defined(self, t: Iterable[int]) -> bool:
        return validate_tuple(t) in self.table

    def value(self, t: Iterable[int]) -> int | None:
        return self.table.get(validate_tuple(t))


@dataclass(frozen=True)
class BlockPartition:
    """Consecutive disjoint blocks, each tagged with its palette."""

    blocks: tuple[tuple[int, ...], ...]
    palettes: tuple[Palette, ...]

    def __post_init__(self):
        blocks = tuple(validate_tuple(b) for b in self.blocks)
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        for a, b in zip(blocks, blocks[1:]):
            if a[-1] >= b[0]:
                raise ValueError(
                    f"blocks must be increasing: max {a} >= min {b}")
        if len(self.palettes) != len(blocks):
            raise ValueError("one palette per block required")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "palettes",
                           tuple(tuple(sorted(set(p))) for p in self.palettes))

    @classmethod
    def from_coloring(cls, f: Coloring, blocks) -> "BlockPartition":
        blocks = tuple(validate_tuple(b) for b in blocks)
        return cls(blocks, tuple(palette(f, b) for b in blocks))


def truncate(f: Coloring, d: int) -> Coloring:
    """Clamp every color at d; the result uses colors {0..d}."""
    if d < 1:
        raise ValueError("cutoff d must be >= 1")
    return Coloring(f.r, f.n, tuple(min(d, v) for v in f.values),
                    color_count=d + 1)


def rainbow_to_free(f: Coloring) -> Coloring:
    """Companion coloring whose free sets are rainbows for f.

    Requires f 2-bounded.  Where a colex-earlier tuple shares f's color,
    the output points at the least element of that tuple outside the
    current one; elsewhere the output is 0.  The 0 branch can collide
    with a genuine pointer value 0, which is harmless: soundness only
    relies on pointer values of second occurrences.
    """
    counts = color_multiplicities(f)
    for color, k in counts.items():
        if k > 2:
            raise NotTwoBounded(color, k)
    first_rank: dict[int, int] = {}
    out = []
    for rank, v in enumerate(f.values):
        if v in first_rank:
            earlier = set(colex_unrank(first_rank[v], f.r))
            current = set(colex_unrank(rank, f.r))
            out.append(min(earlier - current))
        else:
            first_rank[v] = rank
            out.append(0)
    return Coloring(f.r, f.n, tuple(out))


def trap_decompose(f: Coloring) -> tuple[Coloring, ...]:
    """The r+1 clamped colorings, the k-th trapped in the k-th interval.

    At every tuple, the component selected by the trap index reproduces
    f's value, so a set free for all components is free for f.
    """
    r = f.r
    columns: list[list[int]] = [[] for _ in range(r + 1)]
    for t, v in zip(f.tuples(), f.values):
        columns[0].append(min(t[0], v))
        for k in range(1, r):
            columns[k].append(min(t[k], max(t[k - 1], v)))
        columns[r].append(max(t[r - 1] + 1, v))
    return tuple(Coloring(r, f.n, tuple(col)) for col in columns)


def limit_coloring(g: Coloring, window: Iterable[int],
                   threshold: int = 3) -> LimitColoring:
    """Stable value of g(t + <x>) over the tail of the window.

    For each tuple t of arity g.r - 1, the usable witnesses are window
    elements above max(t); the entry is defined iff at least `threshold`
    exist and the last `threshold` of them give the same color.
    Undefined entries are reported, never guessed.
    """
    if threshold < 2:
        raise ValueError("stability threshold must be >= 2")
    window = validate_tuple(window)
    if window and window[-1] >= g.n:
        raise ValueError(f"window exceeds coloring domain bound {g.n}")
    m = g.r - 1
    table: dict[tuple[int, ...], int] = {}
    undefined: list[tuple[int, ...]] = []
    for t in combinations(range(g.n), m):
        lo = t[-1] if t else -1
        usable = [x for x in window if x > lo]
        tail = usable[-threshold:]
        if len(tail) < threshold:
            undefined.append(t)
            continue
        vals = {g.value(t + (x,)) for x in tail}
        if len(vals) == 1:
            table[t] = next(iter(vals))
        else:
            undefined.append(t)
    return LimitColoring(m, threshold, table, tuple(undefined))


def greedy_achromatic_extension(g: Coloring, theta: Iterable[int],
                                window: Iterable[int]) -> tuple[int, ...]:
    """Grow a chain by repeatedly adjoining the least window element whose
    new arity-r tuples all take colors in theta.

    Every r-subset of the result has its maximum adjoined after the rest,
    so the admissibility check at each step keeps the whole palette of
    the result inside theta; the invariant is re-checked per step.
    """
    theta = set(theta)
    window = validate_tuple(window)
    if window and window[-1] >= g.n:
        raise ValueError(f"window exceeds coloring domain bound {g.n}")
    m = g.r - 1
    chain: list[int] = []
    for x in window:
        if chain and x <= chain[-1]:
            continue
        if all(g.value(rho + (x,)) in theta
               for rho in combinations(chain, m)):
            chain.append(x)
            if not set(palette(g, chain)) <= theta:
                raise RuntimeError("palette escaped theta; builder invariant broken")
    return tuple(chain)


def greedy_free_extension(g: Coloring, seed: Iterable[int],
                          window: Iterable[int]) -> tuple[int, ...]:
    """Extend a free seed by the least admissible window elements.

    At each step the least window element above the current maximum whose
    adjunction keeps the set free is adjoined; skipped elements were
    inadmissible at their step.  The result is re-verified free.
    """
    seed = validate_tuple(seed)
    if not check_property(g, seed, Free()):
        raise ValueError(f"seed {seed} is not free for the coloring")
    window = validate_tuple(window)
    if window and window[-1] >= g.n:
        raise ValueError(f"window exceeds coloring domain bound {g.n}")
    chain = list(seed)
    for y in window:
        if chain and y <= chain[-1]:
            continue
        if check_property(g, chain + [y], Free()):
            chain.append(y)
    result = tuple(chain)
    if not check_property(g, result, Free()):
        raise RuntimeError("greedy free extension produced a non-free set")
    return result


def block_pigeonhole(p: BlockPartition) -> tuple[Palette, tuple[int, ...]]:
    """Palette class with the most elements across blocks, ties broken by
    the lexicographically least palette; returns (palette, union)."""
    groups: dict[Palette, list[int]] = {}
    for block, pal in zip(p.blocks, p.palettes):
        groups.setdefault(pal, []).extend(block)
    if not groups:
        return ((), ())
    best = min(groups.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    return best[0], tuple(sorted(best[1]))
