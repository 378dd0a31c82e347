"""Exact witness search and partition-number computation.

Subsets of {0..n-1} are bitmasks (n <= 64).  The branch-and-bound
explores elements in increasing order, include before exclude, so the
first maximum-size witness encountered is the lexicographically least
one; results are independent of thread count because branches are solved
exactly and merged by (size, then lex-least witness).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from ._backend import kernels
from .core import (Achromatic, Coloring, Free, Homogeneous, Palette,
                   PropertySpec, Rainbow, Thin, colex_rank, palette)

MAX_BITMAP_BITS = 24  # 2^24 per-subset table is the largest we materialize

DEFAULT_ENUMERATION_LIMIT = 20_000_000


class BudgetExhausted(RuntimeError):
    """A budgeted search ran out of nodes before certifying an answer."""


class InfeasibleEnumeration(ValueError):
    """Refusal to enumerate a coloring space that exceeds the limit."""

    def __init__(self, n: int, estimate: int, limit: int):
        self.n = n
        self.estimate = estimate
        self.limit = limit
        super().__init__(
            f"enumerating colorings at n={n} needs {estimate} vectors "
            f"(limit {limit})")


@dataclass(frozen=True)
class SearchBudget:
    """Optional cap on explored branch nodes; None means unlimited."""

    node_limit: int | None = None

    def __post_init__(self):
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be >= 1")


@dataclass(frozen=True)
class WitnessResult:
    """A maximum witness.  certified means the search space was exhausted;
    otherwise size is only a lower bound.  explored is diagnostic and
    excluded from equality."""

    size: int
    witness: tuple[int, ...]
    palette: Palette
    certified: bool
    explored: int = field(compare=False, default=0)


@dataclass(frozen=True)
class PartitionSearch:
    """Outcome of a partition-number scan.  number None means n_max was
    insufficient.  The counterexample is the first coloring in odometer
    order lacking the witness at the last n where one existed."""

    number: int | None
    counterexample: Coloring | None
    counterexample_n: int | None
    scanned: tuple[tuple[int, int], ...]


def mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    x = mask
    while x:
        b = x & -x
        out.append(b.bit_length() - 1)
        x ^= b
    return tuple(out)


def tuple_to_mask(t) -> int:
    mask = 0
    for x in t:
        mask |= 1 << x
    return mask


# --- kernel input preparation ---------------------------------------------

def _tuple_masks(f: Coloring) -> list[int]:
    """Bitmask of each domain tuple, indexed by colex rank."""
    masks = []
    for t in f.tuples():
        m = 0
        for x in t:
            m |= 1 << x
        masks.append(m)
    return masks


def _free_violation_masks(f: Coloring) -> list[int]:
    """Masks whose presence in H breaks freeness: tuple plus its color,
    for colors that land inside the domain but outside the tuple."""
    out = []
    for t, m in zip(f.tuples(), _tuple_masks(f)):
        v = f.values[colex_rank(t)]
        if v < f.n and not (m >> v) & 1:
            out.append(m | (1 << v))
    return out


def _rainbow_violation_masks(f: Coloring) -> list[int]:
    """Masks of unions of same-colored tuple pairs."""
    groups: dict[int, list[int]] = {}
    for m, v in zip(_tuple_masks(f), f.values):
        groups.setdefault(v, []).append(m)
    out = []
    for ms in groups.values():
        for a, b in combinations(ms, 2):
            out.append(a | b)
    return out


def _dense_color_ids(values) -> tuple[list[int], int]:
    uniq = sorted(set(values))
    idx = {v: i for i, v in enumerate(uniq)}
    return [idx[v] for v in values], len(uniq)


def _by_top(masks: list[int], payload: list[int] | None, n: int):
    """Group masks (and an optional parallel payload) by top set bit,
    CSR-style: flat lists plus offsets of length n+1."""
    buckets: list[list[int]] = [[] for _ in range(n)]
    pay_buckets: list[list[int]] = [[] for _ in range(n)]
    for i, m in enumerate(masks):
        e = m.bit_length() - 1
        buckets[e].append(m)
        if payload is not None:
            pay_buckets[e].append(payload[i])
    flat: list[int] = []
    pay_flat: list[int] = []
    offsets = [0]
    for e in range(n):
        flat.extend(buckets[e])
        if payload is not None:
            pay_flat.extend(pay_buckets[e])
        offsets.append(len(flat))
    return (flat, pay_flat, offsets) if payload is not None else (flat, offsets)


# --- per-subset bitmaps -----------------------------------------------------

def property_bitmap(f: Coloring, spec: PropertySpec) -> bytearray:
    """bitmap[mask] = 1 iff the subset encoded by mask witnesses spec."""
    if f.n > MAX_BITMAP_BITS:
        raise ValueError(f"bitmap sweep limited to n <= {MAX_BITMAP_BITS}")
    if isinstance(spec, Free):
        return kernels.bitmap_avoid(f.n, _free_violation_masks(f))
    if isinstance(spec, Rainbow):
        return kernels.bitmap_avoid(f.n, _rainbow_violation_masks(f))
    if isinstance(spec, (Homogeneous, Achromatic)):
        d = 1 if isinstance(spec, Homogeneous) else spec.d
        ids, n_colors = _dense_color_ids(f.values)
        return kernels.bitmap_palette_le(f.n, _tuple_masks(f), ids, n_colors, d)
    if isinstance(spec, Thin):
        uni = {u: i for i, u in enumerate(spec.universe)}
        ids = [uni.get(v, -1) for v in f.values]
        return kernels.bitmap_thin(f.n, _tuple_masks(f), ids, len(spec.universe))
    raise TypeError(f"unknown property spec {spec!r}")


# --- maximum-witness search -------------------------------------------------

@dataclass(frozen=True)
class _Job:
    kind: str  # "avoid" or "palette"
    args: tuple
    base_mask: int
    start: int
    node_limit: int


def _run_job(n: int, job: _Job):
    if job.kind == "avoid":
        flat, offsets = job.args
        return kernels.solve_avoid(n, flat, offsets, job.base_mask, job.start,
                                   job.node_limit)
    flat, ids, offsets, n_colors, d = job.args
    return kernels.solve_palette_le(n, flat, ids, offsets, n_colors, d,
                                    job.base_mask, job.start, job.node_limit)


def _decompose(job: _Job, n: int, threads: int) -> list[_Job]:
    """Split a root job into fixed prefix-assignment branches.  The split
    depends only on n, never on the thread count, and branch results are
    exact within each branch, so any schedule merges to the same answer."""
    if threads <= 1 or n == 0:
        return [job]
    t = min(n, 5)
    return [
        _Job(job.kind, job.args, prefix, t, job.node_limit)
        for prefix in range(1 << t)
    ]


def _merge(results) -> tuple[int, int, int, bool]:
    best_size, best_mask = -1, 0
    nodes = 0
    completed = True
    best_tuple: tuple[int, ...] = ()
    for size, mask, explored, done in results:
        nodes += explored
        completed = completed and done
        if size < 0:
            continue
        cand = mask_to_tuple(mask)
        if size > best_size or (size == best_size and cand < best_tuple):
            best_size, best_mask, best_tuple = size, mask, cand
    return best_size, best_mask, nodes, completed


def _witness_jobs(f: Coloring, spec: PropertySpec, node_limit: int) -> list[_Job]:
    n = f.n
    if isinstance(spec, Free):
        flat, offsets = _by_top(_free_violation_masks(f), None, n)
        return [_Job("avoid", (flat, offsets), 0, 0, node_limit)]
    if isinstance(spec, Rainbow):
        flat, offsets = _by_top(_rainbow_violation_masks(f), None, n)
        return [_Job("avoid", (flat, offsets), 0, 0, node_limit)]
    if isinstance(spec, (Homogeneous, Achromatic)):
        d = 1 if isinstance(spec, Homogeneous) else spec.d
        ids, n_colors = _dense_color_ids(f.values)
        flat, pay, offsets = _by_top(_tuple_masks(f), ids, n)
        return [_Job("palette", (flat, pay, offsets, n_colors, d), 0, 0,
                     node_limit)]
    raise TypeError(f"unknown property spec {spec!r}")


def max_witness(f: Coloring, spec: PropertySpec,
                budget: SearchBudget | None = None,
                threads: int = 1) -> WitnessResult:
    """Exact maximum-size witness, lexicographically least among maxima.

    Thinness is not preserved under adding elements once the palette can
    escape the universe, so the thin search runs one avoidance search per
    universe color (each downward closed) after a whole-domain shortcut;
    all other properties run a single downward-closed branch and bound.

    Budgeted searches (budget.node_limit set) run sequentially so node
    accounting is reproducible; an exhausted budget yields an uncertified
    lower bound.
    """
    if f.n > 64:
        raise ValueError("witness search is limited to n <= 64")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    node_limit = budget.node_limit if budget and budget.node_limit else 0
    if node_limit:
        threads = 1

    if isinstance(spec, Thin):
        full = tuple(range(f.n))
        pal = palette(f, full)
        if set(pal) != set(spec.universe):
            return WitnessResult(f.n, full, pal, True, 0)
        # palette(full) == universe: every subset palette stays inside the
        # universe, so thin means missing at least one universe color
        masks = _tuple_masks(f)
        roots = []
        per_job = max(1, node_limit // len(spec.universe)) if node_limit else 0
        for u in spec.universe:
            viols = [m for m, v in zip(masks, f.values) if v == u]
            flat, offsets = _by_top(viols, None, f.n)
            roots.append(_Job("avoid", (flat, offsets), 0, 0, per_job))
    else:
        roots = _witness_jobs(f, spec, node_limit)

    jobs: list[_Job] = []
    for root in roots:
        jobs.extend(_decompose(root, f.n, threads))

    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda j: _run_job(f.n, j), jobs))
    else:
        results = [_run_job(f.n, j) for j in jobs]

    size, mask, nodes, completed = _merge(results)
    if size < 0:
        # only reachable when a budget cut the search before any complete
        # assignment; the empty set witnesses every property
        size, mask = 0, 0
    witness = mask_to_tuple(mask)
    return WitnessResult(size, witness, palette(f, witness), completed, nodes)


def has_witness(f: Coloring, spec: PropertySpec, m: int,
                budget: SearchBudget | None = None) -> bool:
    """True iff a witness of size >= m exists; agrees with max_witness."""
    result = max_witness(f, spec, budget=budget)
    if result.size >= m:
        return True
    if not result.certified:
        raise BudgetExhausted(
            f"lower bound {result.size} < {m} but search was cut off")
    return False


# --- partition numbers -------------------------------------------------------

def _achromatic_degree(spec: PropertySpec) -> int:
    if isinstance(spec, Homogeneous):
        return 1
    if isinstance(spec, Achromatic):
        return spec.d
    raise ValueError(
        "partition numbers are computed for homogeneous/achromatic specs only")


def _candidate_subsets(n: int, r: int, m: int) -> tuple[list[int], list[int]]:
    """CSR table: for every m-subset of {0..n-1}, the colex ranks of its
    r-subtuples."""
    offsets = [0]
    ranks: list[int] = []
    for H in combinations(range(n), m):
        for t in combinations(H, r):
            ranks.append(colex_rank(t))
        offsets.append(len(ranks))
    return offsets, ranks


def partition_number(r: int, c: int, spec: PropertySpec, m: int, n_max: int,
                     *, limit: int = DEFAULT_ENUMERATION_LIMIT,
                     canonical: bool = False) -> PartitionSearch:
    """Least n <= n_max such that every c-coloring of r-subsets of {0..n-1}
    admits a size-m witness, by exhaustive enumeration of value vectors.

    Witnesses at n restrict to witnesses at n+1, so the first n whose scan
    finds no counterexample is the answer; the counterexample found at the
    previous n is retained.  canonical restricts the scan to one coloring
    per color permutation, which cannot change the answer (palette sizes
    are permutation invariant) but may retain a different counterexample.
    """
    if r < 1 or c < 1 or m < 0 or n_max < 0:
        raise ValueError("r, c must be >= 1 and m, n_max >= 0")
    d = _achromatic_degree(spec)
    scanned: list[tuple[int, int]] = []
    counterexample: Coloring | None = None
    counterexample_n: int | None = None
    for n in range(m, n_max + 1):
        estimate = c ** comb(n, r)
        if estimate > limit:
            raise InfeasibleEnumeration(n, estimate, limit)
        offsets, ranks = _candidate_subsets(n, r, m)
        found, values, examined = kernels.scan_colorings(
            comb(n, r), c, d, offsets, ranks, canonical)
        scanned.append((n, examined))
        if not found:
            return PartitionSearch(n, counterexample, counterexample_n,
                                   tuple(scanned))
        counterexample = Coloring(r, n, tuple(values), color_count=c)
        counterexample_n = n
    return PartitionSearch(None, counterexample, counterexample_n,
                           tuple(scanned))
