"""Pure-Python search kernels.

Fallback backend with the exact same API and observable behaviour as the
compiled extension in _kernels_c.pyx; the selector in _backend.py picks
whichever is available.  Node counts, tie-breaks and returned witnesses
are pinned by the shared recursion structure, so the two backends are
interchangeable bit for bit.

Subsets of {0..n-1} are machine-word bitmasks.  The per-subset bitmap
functions use subset-lattice sweeps instead of a per-subset tuple scan,
which is the faster shape for interpreted code.
"""

from __future__ import annotations

BACKEND_NAME = "pure"


def _mark_supersets(out: bytearray, mask: int, full: int, value: int) -> None:
    comp = full & ~mask
    u = 0
    while True:
        out[mask | u] = value
        u = (u - comp) & comp
        if u == 0:
            return


def bitmap_avoid(n: int, viol_masks: list[int]) -> bytearray:
    """bitmap[H] = 1 iff H contains none of the violation masks."""
    size = 1 << n
    out = bytearray(b"\x01" * size)
    full = size - 1
    for vm in set(viol_masks):
        _mark_supersets(out, vm, full, 0)
    return out


def _presence_counts(n: int, masks: list[int], color_ids: list[int],
                     n_colors: int) -> bytearray:
    """counts[H] = number of distinct non-negative color ids among tuples
    contained in H, saturated at 255."""
    size = 1 << n
    full = size - 1
    counts = bytearray(size)
    by_color: dict[int, set[int]] = {}
    for m, cid in zip(masks, color_ids):
        if cid >= 0:
            by_color.setdefault(cid, set()).add(m)
    if len(by_color) > n_colors:
        raise ValueError("color id out of range")
    for cmasks in by_color.values():
        seen = bytearray(size)
        for m in cmasks:
            _mark_supersets(seen, m, full, 1)
        for i in range(size):
            if seen[i] and counts[i] < 255:
                counts[i] += 1
    return counts


def bitmap_palette_le(n: int, masks: list[int], color_ids: list[int],
                      n_colors: int, d: int) -> bytearray:
    """bitmap[H] = 1 iff at most d distinct colors appear on tuples in H."""
    if d >= 255:
        raise ValueError("palette bound too large for the bitmap kernel")
    counts = _presence_counts(n, masks, color_ids, n_colors)
    return bytearray(1 if c <= d else 0 for c in counts)


def bitmap_thin(n: int, masks: list[int], color_ids: list[int],
                n_universe: int) -> bytearray:
    """bitmap[H] = 1 iff the palette of H differs from the declared universe.

    color_ids map universe colors to 0..n_universe-1 and everything
    else to -1; H is thin when it contains an out-of-universe tuple or
    misses at least one universe color.
    """
    if n_universe < 1 or n_universe >= 255:
        raise ValueError("universe size out of kernel range")
    size = 1 << n
    full = size - 1
    outside = bytearray(size)
    for m, cid in zip(masks, color_ids):
        if cid < 0:
            _mark_supersets(outside, m, full, 1)
    counts = _presence_counts(n, masks, color_ids, n_universe)
    return bytearray(1 if (outside[i] or counts[i] < n_universe) else 0
                     for i in range(size))


def solve_avoid(n: int, viol_flat: list[int], viol_offsets: list[int],
                base_mask: int, start: int, node_limit: int
                ) -> tuple[int, int, int, bool]:
    """Branch-and-bound maximum subset avoiding all violation masks.

    Decisions run over elements start..n-1 with the first start elements
    fixed by base_mask; include is tried before exclude, so the first
    maximum found is the lexicographically least one.  viol_flat holds
    the violation masks grouped by top set bit: masks with top bit e sit
    at viol_flat[viol_offsets[e]:viol_offsets[e+1]].  node_limit 0 means
    unlimited.  Returns (size, mask, nodes, completed); size -1 means the
    fixed base itself violates.
    """
    for e in range(start):
        for j in range(viol_offsets[e], viol_offsets[e + 1]):
            vm = viol_flat[j]
            if vm & base_mask == vm:
                return (-1, 0, 0, True)

    best_size = -1
    best_mask = 0
    nodes = 0
    exhausted = False

    def dfs(e: int, mask: int, size: int) -> None:
        nonlocal best_size, best_mask, nodes, exhausted
        nodes += 1
        if node_limit and nodes > node_limit:
            exhausted = True
            return
        if e == n:
            if size > best_size:
                best_size = size
                best_mask = mask
            return
        if size + (n - e) > best_size:
            m2 = mask | (1 << e)
            ok = True
            for j in range(viol_offsets[e], viol_offsets[e + 1]):
                vm = viol_flat[j]
                if vm & m2 == vm:
                    ok = False
                    break
            if ok:
                dfs(e + 1, m2, size + 1)
                if exhausted:
                    return
        if size + (n - e - 1) > best_size:
            dfs(e + 1, mask, size)

    dfs(start, base_mask, base_mask.bit_count())
    return (best_size, best_mask, nodes, not exhausted)


def solve_palette_le(n: int, tmask_flat: list[int], tid_flat: list[int],
                     t_offsets: list[int], n_colors: int, d: int,
                     base_mask: int, start: int, node_limit: int
                     ) -> tuple[int, int, int, bool]:
    """Branch-and-bound maximum subset with at most d distinct tuple colors.

    Same conventions as solve_avoid; tuples are grouped by top element
    and carry dense color ids in [0, n_colors).
    """
    counts = [0] * n_colors
    distinct = 0
    for e in range(start):
        if base_mask >> e & 1:
            for j in range(t_offsets[e], t_offsets[e + 1]):
                m = tmask_flat[j]
                if m & base_mask == m:
                    cid = tid_flat[j]
                    counts[cid] += 1
                    if counts[cid] == 1:
                        distinct += 1
    if distinct > d:
        return (-1, 0, 0, True)

    best_size = -1
    best_mask = 0
    nodes = 0
    exhausted = False

    def dfs(e: int, mask: int, size: int) -> None:
        nonlocal best_size, best_mask, nodes, exhausted, distinct
        nodes += 1
        if node_limit and nodes > node_limit:
            exhausted = True
            return
        if e == n:
            if size > best_size:
                best_size = size
                best_mask = mask
            return
        if size + (n - e) > best_size:
            m2 = mask | (1 << e)
            added = []
            ok = True
            for j in range(t_offsets[e], t_offsets[e + 1]):
                m = tmask_flat[j]
                if m & m2 == m:
                    cid = tid_flat[j]
                    counts[cid] += 1
                    added.append(cid)
                    if counts[cid] == 1:
                        distinct += 1
                        if distinct > d:
                            ok = False
                            break
            if ok:
                dfs(e + 1, m2, size + 1)
            for cid in added:
                counts[cid] -= 1
                if counts[cid] == 0:
                    distinct -= 1
            if exhausted:
                return
        if size + (n - e - 1) > best_size:
            dfs(e + 1, mask, size)

    dfs(start, base_mask, base_mask.bit_count())
    return (best_size, best_mask, nodes, not exhausted)


def scan_colorings(num_values: int, c: int, d: int, offsets: list[int],
                   ranks: list[int], canonical: bool
                   ) -> tuple[bool, list[int] | None, int]:
    """Scan value vectors in odometer order (index 0 fastest) for one that
    admits no candidate subset with at most d distinct colors.

    offsets/ranks describe the candidate subsets CSR-style: the tuple
    ranks of subset i sit at ranks[offsets[i]:offsets[i+1]].  canonical
    restricts the scan to color-permutation canonical vectors (each new
    color is the smallest unused one, reading by index).  Returns
    (found, counterexample values or None, vectors examined).
    """
    values = [0] * num_values
    nsub = len(offsets) - 1
    scanned = 0
    while True:
        use = True
        if canonical:
            hi = -1
            for v in values:
                if v > hi + 1:
                    use = False
                    break
                if v > hi:
                    hi = v
        if use:
            scanned += 1
            admits = False
            for si in range(nsub):
                seen: set[int] = set()
                ok = True
                for j in range(offsets[si], offsets[si + 1]):
                    seen.add(values[ranks[j]])
                    if len(seen) > d:
                        ok = False
                        break
                if ok:
                    admits = True
                    break
            if not admits:
                return (True, list(values), scanned)
        i = 0
        while i < num_values and values[i] == c - 1:
            values[i] = 0
            i += 1
        if i == num_values:
            return (False, None, scanned)
        values[i] += 1
