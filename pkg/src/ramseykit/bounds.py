"""Integer bound series: the Schroder-type recurrence, its arity-indexed
twin, the least exponent rule, and the gap comparison table.

All values are exact arbitrary-precision integers; nothing here may
truncate.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BoundSeries:
    """A recurrence-generated integer sequence with its starting index."""

    name: str
    offset: int
    values: tuple[int, ...]

    def __getitem__(self, index: int) -> int:
        if index < self.offset or index >= self.offset + len(self.values):
            raise IndexError(f"{self.name}[{index}] outside computed range")
        return self.values[index - self.offset]

    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.values))


def schroder(n_max: int) -> BoundSeries:
    """S_0..S_n_max with S_0 = 1 and
    S_n = S_(n-1) + sum over j < n of S_j * S_(n-j-1)."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    s = [1]
    for n in range(1, n_max + 1):
        s.append(s[n - 1] + sum(s[j] * s[n - j - 1] for j in range(n)))
    return BoundSeries("S", 0, tuple(s))


def d_series(r_max: int) -> BoundSeries:
    """d_1..d_r_max with d_1 = 1 (pigeonhole seed) and
    d_r = d_(r-1) + sum over 0 < j < r of d_j * d_(r-j).

    Equals the Schroder sequence shifted by one: d_r = S_(r-1).
    """
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    d = {1: 1}
    for r in range(2, r_max + 1):
        d[r] = d[r - 1] + sum(d[j] * d[r - j] for j in range(1, r))
    return BoundSeries("d", 1, tuple(d[r] for r in range(1, r_max + 1)))


def min_c(d: int) -> int:
    """Least c with 2^(c-1) > d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    c = 1
    while (1 << (c - 1)) <= d:
        c += 1
    return c


@dataclass(frozen=True)
class GapRow:
    r: int
    s_r: int
    power_gap: int  # 2^(2r-2)
    power_small: int  # 2^r - 1
    holds: bool  # S_r > 2^(2r-2)


def compare_gap(r_max: int) -> tuple[GapRow, ...]:
    """Exact table comparing S_r against 2^(2r-2) and 2^r - 1 for
    1 <= r <= r_max, flagging S_r > 2^(2r-2) per row."""
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    s = schroder(r_max)
    rows = []
    for r in range(1, r_max + 1):
        big = 1 << (2 * r - 2)
        rows.append(GapRow(r, s[r], big, (1 << r) - 1, s[r] > big))
    return tuple(rows)
