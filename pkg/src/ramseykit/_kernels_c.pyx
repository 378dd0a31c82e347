# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels.

API contract and observable behaviour (results, tie-breaks, node counts)
are pinned by _kernels_py; this module only changes the speed.  The
branch-and-bound solvers release the GIL, so fanning branches out over a
thread pool scales on this backend.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

BACKEND_NAME = "c"

ctypedef unsigned long long u64


cdef int _popcount(u64 x) noexcept nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef u64 *_to_u64(seq) except NULL:
    cdef Py_ssize_t i, m = len(seq)
    cdef u64 *out = <u64 *> malloc((m if m else 1) * sizeof(u64))
    if out == NULL:
        raise MemoryError()
    for i in range(m):
        out[i] = seq[i]
    return out


cdef int *_to_int(seq) except NULL:
    cdef Py_ssize_t i, m = len(seq)
    cdef int *out = <int *> malloc((m if m else 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    for i in range(m):
        out[i] = seq[i]
    return out


# --- per-subset bitmaps -------------------------------------------------------

cdef void _mark_supersets(unsigned char *out, u64 mask, u64 full,
                          unsigned char value) noexcept nogil:
    cdef u64 comp = full & ~mask
    cdef u64 u = 0
    while True:
        out[mask | u] = value
        u = (u - comp) & comp
        if u == 0:
            return


def bitmap_avoid(int n, viol_masks):
    """bitmap[H] = 1 iff H contains none of the violation masks."""
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef u64 full = size - 1
    out = bytearray(size)
    cdef unsigned char[::1] ov = out
    memset(&ov[0], 1, size)
    for vm in set(viol_masks):
        _mark_supersets(&ov[0], <u64> vm, full, 0)
    return out


def _presence_counts(int n, masks, color_ids, int n_colors):
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef u64 full = size - 1
    counts = bytearray(size)
    cdef unsigned char[::1] cv = counts
    by_color = {}
    for m, cid in zip(masks, color_ids):
        if cid >= 0:
            by_color.setdefault(cid, set()).add(m)
    if len(by_color) > n_colors:
        raise ValueError("color id out of range")
    seen = bytearray(size)
    cdef unsigned char[::1] sv = seen
    cdef Py_ssize_t i
    for cmasks in by_color.values():
        memset(&sv[0], 0, size)
        for m in cmasks:
            _mark_supersets(&sv[0], <u64> m, full, 1)
        for i in range(size):
            if sv[i] and cv[i] < 255:
                cv[i] += 1
    return counts


def bitmap_palette_le(int n, masks, color_ids, int n_colors, int d):
    """bitmap[H] = 1 iff at most d distinct colors appear on tuples in H."""
    if d >= 255:
        raise ValueError("palette bound too large for the bitmap kernel")
    counts = _presence_counts(n, masks, color_ids, n_colors)
    cdef unsigned char[::1] cv = counts
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    out = bytearray(size)
    cdef unsigned char[::1] ov = out
    cdef Py_ssize_t i
    for i in range(size):
        ov[i] = 1 if cv[i] <= d else 0
    return out


def bitmap_thin(int n, masks, color_ids, int n_universe):
    """bitmap[H] = 1 iff the palette of H differs from the declared universe."""
    if n_universe < 1 or n_universe >= 255:
        raise ValueError("universe size out of kernel range")
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef u64 full = size - 1
    outside = bytearray(size)
    cdef unsigned char[::1] xv = outside
    for m, cid in zip(masks, color_ids):
        if cid < 0:
            _mark_supersets(&xv[0], <u64> m, full, 1)
    counts = _presence_counts(n, masks, color_ids, n_universe)
    cdef unsigned char[::1] cv = counts
    out = bytearray(size)
    cdef unsigned char[::1] ov = out
    cdef Py_ssize_t i
    for i in range(size):
        ov[i] = 1 if (xv[i] or cv[i] < n_universe) else 0
    return out


# --- branch-and-bound solvers -------------------------------------------------

cdef struct AvoidState:
    int n
    u64 *viols
    int *offsets
    long long node_limit
    long long nodes
    int best_size
    u64 best_mask
    bint exhausted


cdef void _avoid_dfs(AvoidState *st, int e, u64 mask, int size) noexcept nogil:
    cdef int j
    cdef u64 vm, m2
    cdef bint ok
    st.nodes += 1
    if st.node_limit and st.nodes > st.node_limit:
        st.exhausted = True
        return
    if e == st.n:
        if size > st.best_size:
            st.best_size = size
            st.best_mask = mask
        return
    if size + (st.n - e) > st.best_size:
        m2 = mask | ((<u64> 1) << e)
        ok = True
        for j in range(st.offsets[e], st.offsets[e + 1]):
            vm = st.viols[j]
            if (vm & m2) == vm:
                ok = False
                break
        if ok:
            _avoid_dfs(st, e + 1, m2, size + 1)
            if st.exhausted:
                return
    if size + (st.n - e - 1) > st.best_size:
        _avoid_dfs(st, e + 1, mask, size)


def solve_avoid(int n, viol_flat, viol_offsets, base_mask, int start, node_limit):
    """See _kernels_py.solve_avoid."""
    cdef u64 base = <u64> base_mask
    cdef int e
    cdef Py_ssize_t j
    for e in range(start):
        for j in range(viol_offsets[e], viol_offsets[e + 1]):
            if (<u64> viol_flat[j] & base) == <u64> viol_flat[j]:
                return (-1, 0, 0, True)
    cdef AvoidState st
    st.n = n
    st.viols = NULL
    st.offsets = NULL
    st.node_limit = node_limit
    st.nodes = 0
    st.best_size = -1
    st.best_mask = 0
    st.exhausted = False
    try:
        st.viols = _to_u64(viol_flat)
        st.offsets = _to_int(viol_offsets)
        with nogil:
            _avoid_dfs(&st, start, base, _popcount(base))
    finally:
        free(st.viols)
        free(st.offsets)
    return (st.best_size, int(st.best_mask), int(st.nodes), not st.exhausted)


cdef struct PalState:
    int n
    u64 *tmasks
    int *tids
    int *offsets
    int *counts
    int *journal
    int jpos
    int distinct
    int d
    long long node_limit
    long long nodes
    int best_size
    u64 best_mask
    bint exhausted


cdef void _pal_dfs(PalState *st, int e, u64 mask, int size) noexcept nogil:
    cdef int j, cid, jstart
    cdef u64 m, m2
    cdef bint ok
    st.nodes += 1
    if st.node_limit and st.nodes > st.node_limit:
        st.exhausted = True
        return
    if e == st.n:
        if size > st.best_size:
            st.best_size = size
            st.best_mask = mask
        return
    if size + (st.n - e) > st.best_size:
        m2 = mask | ((<u64> 1) << e)
        jstart = st.jpos
        ok = True
        for j in range(st.offsets[e], st.offsets[e + 1]):
            m = st.tmasks[j]
            if (m & m2) == m:
                cid = st.tids[j]
                st.counts[cid] += 1
                st.journal[st.jpos] = cid
                st.jpos += 1
                if st.counts[cid] == 1:
                    st.distinct += 1
                    if st.distinct > st.d:
                        ok = False
                        break
        if ok:
            _pal_dfs(st, e + 1, m2, size + 1)
        while st.jpos > jstart:
            st.jpos -= 1
            cid = st.journal[st.jpos]
            st.counts[cid] -= 1
            if st.counts[cid] == 0:
                st.distinct -= 1
        if st.exhausted:
            return
    if size + (st.n - e - 1) > st.best_size:
        _pal_dfs(st, e + 1, mask, size)


def solve_palette_le(int n, tmask_flat, tid_flat, t_offsets, int n_colors,
                     int d, base_mask, int start, node_limit):
    """See _kernels_py.solve_palette_le."""
    cdef u64 base = <u64> base_mask
    cdef PalState st
    cdef Py_ssize_t total = len(tmask_flat)
    cdef int e, cid
    cdef Py_ssize_t j
    st.n = n
    st.d = d
    st.node_limit = node_limit
    st.nodes = 0
    st.best_size = -1
    st.best_mask = 0
    st.exhausted = False
    st.jpos = 0
    st.distinct = 0
    st.tmasks = NULL
    st.tids = NULL
    st.offsets = NULL
    st.counts = NULL
    st.journal = NULL
    try:
        st.tmasks = _to_u64(tmask_flat)
        st.tids = _to_int(tid_flat)
        st.offsets = _to_int(t_offsets)
        st.counts = <int *> malloc((n_colors if n_colors else 1) * sizeof(int))
        st.journal = <int *> malloc((total if total else 1) * sizeof(int))
        if st.counts == NULL or st.journal == NULL:
            raise MemoryError()
        memset(st.counts, 0, (n_colors if n_colors else 1) * sizeof(int))
        for e in range(start):
            if (base >> e) & 1:
                for j in range(st.offsets[e], st.offsets[e + 1]):
                    if (st.tmasks[j] & base) == st.tmasks[j]:
                        cid = st.tids[j]
                        st.counts[cid] += 1
                        if st.counts[cid] == 1:
                            st.distinct += 1
        if st.distinct > d:
            return (-1, 0, 0, True)
        with nogil:
            _pal_dfs(&st, start, base, _popcount(base))
    finally:
        free(st.tmasks)
        free(st.tids)
        free(st.offsets)
        free(st.counts)
        free(st.journal)
    return (st.best_size, int(st.best_mask), int(st.nodes), not st.exhausted)


# --- coloring enumeration -----------------------------------------------------

def scan_colorings(int num_values, int c, int d, offsets, ranks, bint canonical):
    """See _kernels_py.scan_colorings."""
    cdef int *vals = NULL
    cdef int *offs = NULL
    cdef int *rks = NULL
    cdef long long *stamp = NULL
    cdef int nsub = len(offsets) - 1
    cdef long long scanned = 0
    cdef long long tick = 0
    cdef bint use, admits, ok, found = False
    cdef int i, si, j, hi, v, seen
    out = None
    try:
        vals = <int *> malloc((num_values if num_values else 1) * sizeof(int))
        stamp = <long long *> malloc((c if c else 1) * sizeof(long long))
        if vals == NULL or stamp == NULL:
            raise MemoryError()
        memset(vals, 0, (num_values if num_values else 1) * sizeof(int))
        memset(stamp, 0, (c if c else 1) * sizeof(long long))
        offs = _to_int(offsets)
        rks = _to_int(ranks)
        with nogil:
            while True:
                use = True
                if canonical:
                    hi = -1
                    for i in range(num_values):
                        v = vals[i]
                        if v > hi + 1:
                            use = False
                            break
                        if v > hi:
                            hi = v
                if use:
                    scanned += 1
                    admits = False
                    for si in range(nsub):
                        tick += 1
                        seen = 0
                        ok = True
                        for j in range(offs[si], offs[si + 1]):
                            v = vals[rks[j]]
                            if stamp[v] != tick:
                                stamp[v] = tick
                                seen += 1
                                if seen > d:
                                    ok = False
                                    break
                        if ok:
                            admits = True
                            break
                    if not admits:
                        found = True
                        break
                i = 0
                while i < num_values and vals[i] == c - 1:
                    vals[i] = 0
                    i += 1
                if i == num_values:
                    break
                vals[i] += 1
        if found:
            out = [vals[i] for i in range(num_values)]
        return (found, out, int(scanned))
    finally:
        free(vals)
        free(offs)
        free(rks)
        free(stamp)
