"""Finite measured trees, interval ladders, and freeness bounds.

Trees are prefix-closed sets of strictly increasing tuples.  The node
measure splits a node's mass equally among its children, so every
measure is an exact rational and the leaf measures sum to exactly 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from .core import Coloring, Free, check_property, is_k_trapped, validate_tuple


class MeasuredTree:
    """Prefix-closed finite tuple tree with the equal-split measure."""

    def __init__(self, nodes: Iterable[tuple[int, ...]]):
        node_set = {validate_tuple(t) for t in nodes}
        node_set.add(())
        for t in node_set:
            if t and t[:-1] not in node_set:
                raise ValueError(f"node {t} lacks its parent: not prefix-closed")
        self._nodes = frozenset(node_set)
        kids: dict[tuple[int, ...], list[int]] = {t: [] for t in node_set}
        for t in node_set:
            if t:
                kids[t[:-1]].append(t[-1])
        self._children = {t: tuple(sorted(xs)) for t, xs in kids.items()}

    @classmethod
    def from_paths(cls, paths: Iterable[tuple[int, ...]]) -> "MeasuredTree":
        """Close the given tuples under prefixes."""
        nodes = set()
        for p in paths:
            p = validate_tuple(p)
            for i in range(len(p) + 1):
                nodes.add(p[:i])
        return cls(nodes)

    def __contains__(self, t) -> bool:
        return tuple(t) in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def nodes(self) -> Iterator[tuple[int, ...]]:
        return iter(sorted(self._nodes))

    def children(self, t) -> tuple[int, ...]:
        """Extension values x with t + (x,) in the tree."""
        return self._children[tuple(t)]

    def is_leaf(self, t) -> bool:
        return not self._children[tuple(t)]

    def leaves(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(t for t in self._nodes if not self._children[t]))

    def depth(self) -> int:
        return max(len(t) for t in self._nodes)


def node_measure(tree: MeasuredTree, node) -> Fraction:
    """Exact measure of a node: the root has measure 1 and children split
    their parent's measure equally."""
    node = validate_tuple(node)
    if node not in tree:
        raise ValueError(f"node {node} not in tree")
    m = Fraction(1)
    for i in range(len(node)):
        m /= len(tree.children(node[:i]))
    return m


def set_measure(tree: MeasuredTree, nodes: Iterable[tuple[int, ...]]) -> Fraction:
    """Sum of node measures over a prefix-free node set."""
    node_list = [validate_tuple(t) for t in nodes]
    node_set = set(node_list)
    if len(node_set) != len(node_list):
        raise ValueError("node set contains duplicates")
    for t in node_set:
        for i in range(len(t)):
            if t[:i] in node_set:
                raise ValueError(
                    f"set is not prefix-free: {t[:i]} is a prefix of {t}")
    return sum((node_measure(tree, t) for t in node_set), Fraction(0))


def is_fast_growing(tree: MeasuredTree, order: int, k: int, c: int) -> bool:
    """Does every non-leaf at depth j have at least
    2^(j + c + 2) * C(order + j, k) children?"""
    for t in tree.nodes():
        if tree.is_leaf(t):
            continue
        j = len(t)
        if len(tree.children(t)) < (1 << (j + c + 2)) * comb(order + j, k):
            return False
    return True


# --- interval ladders --------------------------------------------------------

@dataclass(frozen=True)
class IntervalLadder:
    """Consecutive intervals with power-of-two cardinalities.

    variant "A": singletons [k, k] below the arity, then widths that are
    the minimal powers of two >= 2^(j+2) * C(j, r) at level j.
    variant "B": widths 2^(n_l) minimal against 2^(c+2) * C(s, k) at
    level 0 and 2^(l+c+3) * C(s+l+1, k) above; a zero threshold yields a
    degenerate level of width 1, flagged.
    """

    variant: str
    intervals: tuple[tuple[int, int], ...]
    exponents: tuple[int, ...]
    degenerate: tuple[bool, ...]

    def widths(self) -> tuple[int, ...]:
        return tuple(b - a + 1 for a, b in self.intervals)

    def tree(self) -> MeasuredTree:
        """Product tree: level-j nodes extend by any element of interval j."""
        paths = [()]
        for a, b in self.intervals:
            paths = [p + (x,) for p in paths for x in range(a, b + 1)]
        return MeasuredTree.from_paths(paths)


def _min_pow2_exponent(threshold: int) -> int:
    """Least e with 2^e >= threshold (0 for thresholds <= 1)."""
    if threshold <= 1:
        return 0
    return (threshold - 1).bit_length()


def interval_ladder_A(r: int, depth: int) -> IntervalLadder:
    """Ladder of `depth` intervals for arity r: singletons up to r-1, then
    minimal power-of-two widths meeting 2^(j+2) * C(j, r) at level j."""
    if r < 1:
        raise ValueError("arity r must be >= 1")
    if depth < r:
        raise ValueError(f"depth {depth} must be >= arity {r}")
    intervals: list[tuple[int, int]] = [(k, k) for k in range(r)]
    exponents = [0] * r
    for j in range(r, depth):
        e = _min_pow2_exponent((1 << (j + 2)) * comb(j, r))
        a = intervals[-1][1] + 1
        intervals.append((a, a + (1 << e) - 1))
        exponents.append(e)
    return IntervalLadder("A", tuple(intervals[:depth]),
                          tuple(exponents[:depth]), (False,) * depth)


def interval_ladder_B(stem_len: int, k: int, c: int, depth: int) -> IntervalLadder:
    """Ladder of `depth` intervals with widths 2^(n_l) minimal against
    2^(c+2) * C(stem_len, k) at level 0 and 2^(l+c+3) * C(stem_len+l+1, k)
    at level l+1.  Zero thresholds (vanishing binomials) floor the width
    at 1 and are flagged degenerate."""
    if stem_len < 0 or k < 0 or c < 0:
        raise ValueError("stem_len, k, c must be >= 0")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    intervals: list[tuple[int, int]] = []
    exponents: list[int] = []
    degenerate: list[bool] = []
    next_a = 0
    for level in range(depth):
        if level == 0:
            threshold = (1 << (c + 2)) * comb(stem_len, k)
        else:
            threshold = (1 << (level - 1 + c + 3)) * comb(stem_len + level, k)
        degenerate.append(threshold == 0)
        e = _min_pow2_exponent(threshold)
        intervals.append((next_a, next_a + (1 << e) - 1))
        exponents.append(e)
        next_a = intervals[-1][1] + 1
    return IntervalLadder("B", tuple(intervals), tuple(exponents),
                          tuple(degenerate))


# --- window certification (property of stems over a finite reservoir) --------

@dataclass(frozen=True)
class WindowCertificate:
    """Per-stem outcome: ok with the least working bound, or failure.

    vacuous marks stems with no completions at all, certified trivially
    at bound 0.  A bound b is valid when completions above b exist and
    every one keeps the coloring's value out of the window beyond the
    stem."""

    ok: bool
    bound: int | None
    vacuous: bool


def window_E_check(window: Iterable[int], f: Coloring,
                   k: int) -> dict[tuple[int, ...], WindowCertificate]:
    """For every stem rho from the window with k < |rho| < r, find the
    least b in {0} union window such that all completions from the window
    above max(b, max rho) give f(rho+completion) outside window - rho."""
    window = validate_tuple(window)
    if window and window[-1] >= f.n:
        raise ValueError(f"window exceeds coloring domain bound {f.n}")
    if k < 0 or k >= f.r:
        raise ValueError(f"k must satisfy 0 <= k < {f.r}")
    wset = set(window)
    results: dict[tuple[int, ...], WindowCertificate] = {}
    for size in range(k + 1, f.r):
        need = f.r - size
        for rho in combinations(window, size):
            rho_set = set(rho)
            above_rho = [x for x in window if x > rho[-1]]

            def violations(b: int) -> tuple[int, bool]:
                """(violation count, any completion exists) above bound b."""
                pool = [x for x in above_rho if x > b]
                count = 0
                exists = False
                for tau in combinations(pool, need):
                    exists = True
                    v = f.value(rho + tau)
                    if v in wset and v not in rho_set:
                        count += 1
                return count, exists

            _, any_completion = violations(-1)
            if not any_completion:
                results[rho] = WindowCertificate(True, 0, True)
                continue
            found = None
            for b in [0, *window]:
                count, exists = violations(b)
                if not exists:
                    break
                if count == 0:
                    found = b
                    break
            if found is None:
                results[rho] = WindowCertificate(False, None, False)
            else:
                results[rho] = WindowCertificate(True, found, False)
    return results


# --- freeness counting and measure --------------------------------------------

@dataclass(frozen=True)
class BadChildrenReport:
    """Children whose adjunction breaks freeness, against the counting
    bound C(|stem| + |node|, k).  The bound is guaranteed when the
    completion has one element (arity = k + 1); otherwise it is reported
    data, optionally with the number of window-certification failures."""

    bad: tuple[int, ...]
    bound: int
    bound_asserted: bool
    bound_holds: bool
    window_failures: int | None


def bad_children(tree: MeasuredTree, f: Coloring, sigma, tau, xi,
                 window: Iterable[int] | None = None) -> BadChildrenReport:
    """Children x of tau with sigma + tau + (x,) + xi not free for f.

    Preconditions (rejected when violated): f is k-trapped for
    k = r - |xi|, the concatenation orders hold, sigma+tau+xi is free,
    and the stem joined with any single tree node stays free -- the
    counting bound is about trees all of whose nodes extend the stem
    freely, and fails for arbitrary children.
    """
    sigma = validate_tuple(sigma)
    tau = validate_tuple(tau)
    xi = validate_tuple(xi)
    if not xi:
        raise ValueError("completion xi must be nonempty")
    k = f.r - len(xi)
    if k < 0:
        raise ValueError(f"completion longer than arity {f.r}")
    if not is_k_trapped(f, k):
        raise ValueError(f"coloring is not {k}-trapped")
    if tau not in tree:
        raise ValueError(f"node {tau} not in tree")
    if sigma and tau and sigma[-1] >= tau[0]:
        raise ValueError("stem must lie below the tree node")
    kids = tree.children(tau)
    base = sigma + tau
    for x in kids:
        if base and x <= base[-1]:
            raise ValueError(f"child {x} not above stem and node")
        if x >= xi[0]:
            raise ValueError(f"child {x} not below completion {xi}")
    if base and base[-1] >= xi[0]:
        raise ValueError("completion must lie above stem and node")
    if not check_property(f, base + xi, Free()):
        raise ValueError("sigma + tau + xi must be free")
    for node in tree.nodes():
        if node and node[0] <= (sigma[-1] if sigma else -1):
            raise ValueError(f"tree node {node} not above stem")
        if not check_property(f, sigma + node, Free()):
            raise ValueError(
                f"stem + tree node {node} must be free for the coloring")

    bad = tuple(x for x in kids
                if not check_property(f, set(base) | {x} | set(xi), Free()))
    bound = comb(len(base), k)
    asserted = f.r == k + 1
    holds = len(bad) <= bound
    if asserted and not holds:
        raise RuntimeError(
            f"counting bound violated at arity k+1: {len(bad)} > {bound}")
    failures = None
    if not asserted and window is not None:
        certs = window_E_check(window, f, k)
        failures = sum(1 for cert in certs.values() if not cert.ok)
    return BadChildrenReport(bad, bound, asserted, holds, failures)


def free_leaf_measure(tree: MeasuredTree, f: Coloring, sigma) -> Fraction:
    """Exact measure of the leaves whose union with the stem is free.

    Freeness is inherited downward, so a violated interior node prunes
    its whole subtree with contribution 0.
    """
    sigma = validate_tuple(sigma)
    for t in tree.nodes():
        if t and t[-1] >= f.n:
            raise ValueError(f"tree node {t} exceeds coloring domain {f.n}")
    root_kids = tree.children(())
    if sigma and root_kids and sigma[-1] >= root_kids[0]:
        raise ValueError("stem must lie below the tree values")

    r = f.r
    current = list(sigma)
    current_set = set(sigma)
    value_counts: dict[int, int] = {}
    for t in combinations(sigma, r):
        v = f.value(t)
        value_counts[v] = value_counts.get(v, 0) + 1

    ok_root = check_property(f, sigma, Free())
    total = Fraction(0)

    def extend(x: int) -> tuple[bool, list[int]]:
        """Append x; returns (still free, values added) for the undo."""
        ok = value_counts.get(x, 0) == 0  # no prior tuple's color equals x
        added = []
        new_tuples = list(combinations(current, r - 1)) if r > 1 else [()]
        current_set.add(x)
        for rest in new_tuples:
            t = rest + (x,)
            v = f.value(t)
            value_counts[v] = value_counts.get(v, 0) + 1
            added.append(v)
            if v in current_set and v not in t:
                ok = False
        current.append(x)
        return ok, added

    def retract(x: int, added: list[int]) -> None:
        current.pop()
        current_set.discard(x)
        for v in added:
            value_counts[v] -= 1

    def walk(node: tuple[int, ...], measure: Fraction, ok: bool) -> None:
        nonlocal total
        if not ok:
            return
        kids = tree.children(node)
        if not kids:
            total += measure
            return
        share = measure / len(kids)
        for x in kids:
            child_ok, added = extend(x)
            walk(node + (x,), share, child_ok)
            retract(x, added)

    walk((), Fraction(1), ok_root)
    return total
