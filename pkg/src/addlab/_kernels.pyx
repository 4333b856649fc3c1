# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the hot inner loops.

Mirrors ``addlab._kernels_py`` exactly: same outputs, same counted steps.
Step convention for the 4-cycle steppers: one unit per bucket-entry visit,
per path/triple insertion, per vertex-or-round hop, and per sort/scan element
move.  Every unit is consumed inside ``advance`` against the caller's budget,
so the delay meter sees all work.  Emitted cycles are canonical (w, x, y, z)
tuples: w the cycle minimum, x < z its cycle-neighbors, y opposite.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


# ---------------------------------------------------------------------------
# small utilities
# ---------------------------------------------------------------------------

cdef void _sort_pairs(cnp.int64_t* vals, cnp.int64_t* meta, long lo, long hi) noexcept nogil:
    """Iterative quicksort of (vals, meta) by vals on [lo, hi].

    Smaller side first keeps the explicit stack below 2*log2(n) frames.
    """
    cdef long stack[256]
    cdef int top = 0
    cdef long i, j, pivot, tv, tm, mid
    if hi <= lo:
        return
    stack[0] = lo
    stack[1] = hi
    top = 2
    while top > 0:
        hi = stack[top - 1]
        lo = stack[top - 2]
        top -= 2
        while lo < hi:
            if hi - lo < 12:
                i = lo + 1
                while i <= hi:
                    tv = vals[i]; tm = meta[i]
                    j = i - 1
                    while j >= lo and vals[j] > tv:
                        vals[j + 1] = vals[j]; meta[j + 1] = meta[j]
                        j -= 1
                    vals[j + 1] = tv; meta[j + 1] = tm
                    i += 1
                break
            mid = lo + (hi - lo) // 2
            pivot = vals[mid]
            i = lo; j = hi
            while i <= j:
                while vals[i] < pivot: i += 1
                while vals[j] > pivot: j -= 1
                if i <= j:
                    tv = vals[i]; vals[i] = vals[j]; vals[j] = tv
                    tm = meta[i]; meta[i] = meta[j]; meta[j] = tm
                    i += 1; j -= 1
            if j - lo < hi - i:
                if i < hi and top < 254:
                    stack[top] = i; stack[top + 1] = hi; top += 2
                hi = j
            else:
                if lo < j and top < 254:
                    stack[top] = lo; stack[top + 1] = j; top += 2
                lo = i


cdef long _lower_bound(cnp.int64_t* vals, long n, long key) noexcept nogil:
    cdef long lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if vals[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline bint _nontrivial4(long i1, long i2, long i3, long i4,
                              long b1, long b2, long b3, long b4) noexcept nogil:
    """Nontriviality over slot indices (instance elements are distinct)."""
    cdef long idx[4]
    cdef long cf[4]
    cdef long k, t, s
    cdef bint first
    idx[0] = i1; idx[1] = i2; idx[2] = i3; idx[3] = i4
    cf[0] = b1; cf[1] = b2; cf[2] = b3; cf[3] = b4
    for k in range(4):
        if idx[k] < 0:
            continue
        first = True
        for t in range(k):
            if idx[t] == idx[k]:
                first = False
                break
        if not first:
            continue
        s = 0
        for t in range(4):
            if idx[t] == idx[k]:
                s += cf[t]
        if s != 0:
            return True
    return False


# ---------------------------------------------------------------------------
# nontrivial relation scan over batched small instances
# ---------------------------------------------------------------------------

def nontrivial_relation_flags(cnp.int64_t[::1] values, cnp.int64_t[::1] offsets,
                              int ell, int kmax=4):
    """flags[i] = 1 iff instance i has a nontrivial k-term ell-relation, k <= kmax.

    Instances are concatenated in ``values`` with boundaries ``offsets``; the
    elements of one instance must be distinct.  kmax in {3, 4}; 4 subsumes
    3-term relations (zero coefficient slots).
    """
    cdef long n_inst = offsets.shape[0] - 1
    out = np.zeros(n_inst, dtype=np.uint8)
    cdef cnp.uint8_t[::1] flags = out
    cdef long max_s = 0, i, s
    for i in range(n_inst):
        s = offsets[i + 1] - offsets[i]
        if s > max_s:
            max_s = s
    if max_s > 512:
        raise ValueError("instance too large for the batched kernel")
    if ell < 1 or ell > 500:
        raise ValueError("ell out of range")
    cdef long cap = (2 * ell) * (2 * ell) * max_s * max_s + 4
    vals_buf = np.empty(cap, dtype=np.int64)
    meta_buf = np.empty(cap, dtype=np.int64)
    cdef cnp.int64_t[::1] vb = vals_buf
    cdef cnp.int64_t[::1] mb = meta_buf
    cdef cnp.int64_t* vp = &vb[0]
    cdef cnp.int64_t* mp = &mb[0]
    cdef long base, b1, b2, b3, b4, ii, jj, kk, ll2, cnt, tgt, pos, sig, code
    cdef long ei, ej, width
    cdef bint hit
    width = 2 * ell + 1
    for i in range(n_inst):
        base = offsets[i]
        s = offsets[i + 1] - base
        if s < 2:
            continue
        hit = False
        cnt = 0
        for b1 in range(-ell, ell + 1):
            if b1 == 0:
                continue
            for b2 in range(-ell, ell + 1):
                if b2 == 0:
                    continue
                code = ((b1 + ell) * width + (b2 + ell)) << 20
                for ii in range(s):
                    ei = b1 * values[base + ii]
                    for jj in range(s):
                        vp[cnt] = ei + b2 * values[base + jj]
                        mp[cnt] = code | (ii << 10) | jj
                        cnt += 1
        _sort_pairs(vp, mp, 0, cnt - 1)
        # 3-term: b1*e + b2*e' = -b3*e''
        for b3 in range(-ell, ell + 1):
            if hit or b3 == 0:
                continue
            for kk in range(s):
                if hit:
                    break
                tgt = -b3 * values[base + kk]
                pos = _lower_bound(vp, cnt, tgt)
                while pos < cnt and vp[pos] == tgt:
                    sig = mp[pos]
                    b1 = (sig >> 20) // width - ell
                    b2 = (sig >> 20) % width - ell
                    ii = (sig >> 10) & 1023
                    jj = sig & 1023
                    if b1 + b2 + b3 == 0 and _nontrivial4(ii, jj, kk, -1, b1, b2, b3, 0):
                        hit = True
                        break
                    pos += 1
        # 4-term with all coefficients nonzero
        if kmax >= 4 and not hit:
            for b3 in range(-ell, ell + 1):
                if hit or b3 == 0:
                    continue
                for b4 in range(-ell, ell + 1):
                    if hit or b4 == 0:
                        continue
                    for kk in range(s):
                        if hit:
                            break
                        ej = b3 * values[base + kk]
                        for ll2 in range(s):
                            tgt = -(ej + b4 * values[base + ll2])
                            pos = _lower_bound(vp, cnt, tgt)
                            while pos < cnt and vp[pos] == tgt:
                                sig = mp[pos]
                                b1 = (sig >> 20) // width - ell
                                b2 = (sig >> 20) % width - ell
                                ii = (sig >> 10) & 1023
                                jj = sig & 1023
                                if (b1 + b2 + b3 + b4 == 0 and
                                        _nontrivial4(ii, jj, kk, ll2, b1, b2, b3, b4)):
                                    hit = True
                                    break
                                pos += 1
                            if hit:
                                break
        flags[i] = 1 if hit else 0
    return out


# ---------------------------------------------------------------------------
# brute-force 4-cycle oracle
# ---------------------------------------------------------------------------

def four_cycle_oracle(long n, cnp.int64_t[::1] indptr, cnp.int32_t[::1] indices,
                      bint want_list=True):
    """All 4-cycles via common-neighbor pairs of each diagonal.

    Processing the diagonal (w, y) with w < y and keeping only common
    neighbors above w counts each cycle exactly once, at the diagonal that
    contains its minimum vertex.  Independent of the enumeration algorithms.
    """
    cdef long w, y, ai, bi, ae, be, c
    cdef long count = 0
    common_buf = np.empty(max(n, 1), dtype=np.int32)
    cdef cnp.int32_t[::1] common = common_buf
    out = []
    chunk = np.empty((4096, 4), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] ch = chunk
    cdef long fill = 0
    cdef long i, j
    for w in range(n):
        for y in range(w + 1, n):
            ai = indptr[w]; ae = indptr[w + 1]
            bi = indptr[y]; be = indptr[y + 1]
            c = 0
            while ai < ae and bi < be:
                if indices[ai] < indices[bi]:
                    ai += 1
                elif indices[ai] > indices[bi]:
                    bi += 1
                else:
                    if indices[ai] > w:
                        common[c] = indices[ai]
                        c += 1
                    ai += 1
                    bi += 1
            if c >= 2:
                count += c * (c - 1) // 2
                if want_list:
                    for i in range(c):
                        for j in range(i + 1, c):
                            ch[fill, 0] = <int>w
                            ch[fill, 1] = common[i]
                            ch[fill, 2] = <int>y
                            ch[fill, 3] = common[j]
                            fill += 1
                            if fill == 4096:
                                out.append(np.array(chunk))
                                fill = 0
    if not want_list:
        return count, None
    out.append(np.array(chunk[:fill]))
    return count, np.concatenate(out)


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

cdef inline void _canon(cnp.int32_t* o, long a, long b, long c, long d) noexcept nogil:
    # cycle a-b-c-d (edges ab, bc, cd, da); diagonals {a, c} and {b, d}
    cdef long w = a, x, y, z
    if b < w: w = b
    if c < w: w = c
    if d < w: w = d
    if w == a or w == c:
        y = a + c - w
        x = b if b < d else d
        z = b + d - x
    else:
        y = b + d - w
        x = a if a < c else c
        z = a + c - x
    o[0] = <int>w; o[1] = <int>x; o[2] = <int>y; o[3] = <int>z


# ---------------------------------------------------------------------------
# dense stepper: vertex table L[u, w]
# ---------------------------------------------------------------------------

cdef class DenseStepper:
    """For v ascending and neighbor pairs u < w of v, report (v, u, w, v')
    for buffered v' in L[u, w] (kept when v < w), then append v."""
    cdef public long n
    cdef cnp.int64_t[::1] indptr
    cdef cnp.int32_t[::1] indices
    cdef object heads_arr
    cdef cnp.int32_t[::1] heads
    cdef bint use_flat
    cdef dict head_map
    cdef object pool_v_arr, pool_n_arr
    cdef cnp.int32_t[::1] pool_v
    cdef cnp.int32_t[::1] pool_n
    cdef long pool_len, pool_cap
    cdef long v, ia, ib, cursor
    cdef bint at_triple
    cdef public long triples_done, units
    cdef public bint done

    def __init__(self, long n, indptr, indices, long flat_cap=1 << 27):
        self.n = n
        self.indptr = indptr
        self.indices = indices
        self.use_flat = n * n <= flat_cap
        if self.use_flat:
            self.heads_arr = np.full(n * n, -1, dtype=np.int32)
            self.heads = self.heads_arr
        else:
            self.head_map = {}
        self.pool_cap = 1024
        self.pool_v_arr = np.empty(self.pool_cap, dtype=np.int32)
        self.pool_n_arr = np.empty(self.pool_cap, dtype=np.int32)
        self.pool_v = self.pool_v_arr
        self.pool_n = self.pool_n_arr
        self.pool_len = 0
        self.v = 0
        self.ia = 0
        self.ib = 1
        self.at_triple = False
        self.cursor = -1
        self.triples_done = 0
        self.units = 0
        self.done = False

    cdef long _head(self, long u, long w):
        if self.use_flat:
            return self.heads[u * self.n + w]
        return self.head_map.get(u * self.n + w, -1)

    cdef void _set_head(self, long u, long w, long idx):
        if self.use_flat:
            self.heads[u * self.n + w] = <int>idx
        else:
            self.head_map[u * self.n + w] = idx

    cdef void _grow(self):
        self.pool_cap *= 2
        nv = np.empty(self.pool_cap, dtype=np.int32)
        nn = np.empty(self.pool_cap, dtype=np.int32)
        nv[: self.pool_len] = self.pool_v_arr[: self.pool_len]
        nn[: self.pool_len] = self.pool_n_arr[: self.pool_len]
        self.pool_v_arr = nv
        self.pool_n_arr = nn
        self.pool_v = nv
        self.pool_n = nn

    def advance(self, long max_units):
        out = np.empty((max_units, 4), dtype=np.int32)
        cdef cnp.int32_t[:, ::1] ob = out
        cdef long used = 0, fill = 0
        cdef long u, w, vp, base, deg
        while used < max_units and not self.done:
            if not self.at_triple:
                if self.v >= self.n:
                    self.done = True
                    break
                deg = self.indptr[self.v + 1] - self.indptr[self.v]
                if self.ia < deg - 1 and self.ib < deg:
                    base = self.indptr[self.v]
                    self.cursor = self._head(self.indices[base + self.ia],
                                             self.indices[base + self.ib])
                    self.at_triple = True
                    continue  # binding costs nothing
                self.v += 1  # vertex hop
                self.ia = 0
                self.ib = 1
                used += 1
                continue
            base = self.indptr[self.v]
            u = self.indices[base + self.ia]
            w = self.indices[base + self.ib]
            if self.cursor != -1:
                vp = self.pool_v[self.cursor]
                self.cursor = self.pool_n[self.cursor]
                used += 1
                if self.v < w:
                    _canon(&ob[fill, 0], self.v, u, vp, w)
                    fill += 1
            else:
                if self.pool_len == self.pool_cap:
                    self._grow()
                self.pool_v[self.pool_len] = <int>self.v
                self.pool_n[self.pool_len] = <int>self._head(u, w)
                self._set_head(u, w, self.pool_len)
                self.pool_len += 1
                self.triples_done += 1
                used += 1
                self.ib += 1
                if self.ib >= self.indptr[self.v + 1] - self.indptr[self.v]:
                    self.ia += 1
                    self.ib = self.ia + 1
                self.at_triple = False
        self.units += used
        return used, out[:fill], self.done


# ---------------------------------------------------------------------------
# sparse stepper, hash-bucket backend
# ---------------------------------------------------------------------------

cdef class SparseHashStepper:
    """Rounds add vertices in reverse degeneracy order; every generated
    2-path is combined with its co-bucket predecessors, then inserted."""
    cdef public long n
    cdef cnp.int64_t[::1] sufptr
    cdef cnp.int32_t[::1] sufidx
    cdef cnp.int32_t[::1] orig
    cdef object heads_arr
    cdef cnp.int32_t[::1] heads
    cdef bint use_flat
    cdef dict head_map
    cdef object pool_m_arr, pool_n_arr
    cdef cnp.int32_t[::1] pool_m
    cdef cnp.int32_t[::1] pool_n
    cdef long pool_len, pool_cap
    cdef long i, phase, apos, bpos
    cdef long pend_x, pend_mid, pend_y, cursor
    cdef bint pending
    cdef public long paths_done, units
    cdef public bint done

    def __init__(self, long n, sufptr, sufidx, orig, long flat_cap=1 << 27):
        self.n = n
        self.sufptr = sufptr
        self.sufidx = sufidx
        self.orig = orig
        self.use_flat = n * n <= flat_cap
        if self.use_flat:
            self.heads_arr = np.full(n * n, -1, dtype=np.int32)
            self.heads = self.heads_arr
        else:
            self.head_map = {}
        self.pool_cap = 1024
        self.pool_m_arr = np.empty(self.pool_cap, dtype=np.int32)
        self.pool_n_arr = np.empty(self.pool_cap, dtype=np.int32)
        self.pool_m = self.pool_m_arr
        self.pool_n = self.pool_n_arr
        self.pool_len = 0
        self.i = n - 1
        self.phase = 0
        self.apos = 0
        self.bpos = 0
        self.pending = False
        self.cursor = -1
        self.paths_done = 0
        self.units = 0
        self.done = False

    cdef long _head(self, long key):
        if self.use_flat:
            return self.heads[key]
        return self.head_map.get(key, -1)

    cdef void _set_head(self, long key, long idx):
        if self.use_flat:
            self.heads[key] = <int>idx
        else:
            self.head_map[key] = idx

    cdef void _grow(self):
        self.pool_cap *= 2
        nm = np.empty(self.pool_cap, dtype=np.int32)
        nn = np.empty(self.pool_cap, dtype=np.int32)
        nm[: self.pool_len] = self.pool_m_arr[: self.pool_len]
        nn[: self.pool_len] = self.pool_n_arr[: self.pool_len]
        self.pool_m_arr = nm
        self.pool_n_arr = nn
        self.pool_m = nm
        self.pool_n = nn

    cdef bint _gen_in_round(self):
        """Next 2-path of round i, or False when the round is exhausted."""
        cdef long j, k, da, db
        da = self.sufptr[self.i + 1] - self.sufptr[self.i]
        if self.phase == 0:
            while self.apos < da:
                j = self.sufidx[self.sufptr[self.i] + self.apos]
                db = self.sufptr[j + 1] - self.sufptr[j]
                if self.bpos < db:
                    k = self.sufidx[self.sufptr[j] + self.bpos]
                    self.bpos += 1
                    self.pend_x = self.i
                    self.pend_mid = j
                    self.pend_y = k
                    return True
                self.apos += 1
                self.bpos = 0
            self.phase = 1
            self.apos = 0
            self.bpos = 1
        while self.apos < da - 1:
            if self.bpos < da:
                j = self.sufidx[self.sufptr[self.i] + self.apos]
                k = self.sufidx[self.sufptr[self.i] + self.bpos]
                self.bpos += 1
                self.pend_x = j
                self.pend_mid = self.i
                self.pend_y = k
                return True
            self.apos += 1
            self.bpos = self.apos + 1
        return False

    def advance(self, long max_units):
        out = np.empty((max_units, 4), dtype=np.int32)
        cdef cnp.int32_t[:, ::1] ob = out
        cdef long used = 0, fill = 0
        cdef long key, mp
        while used < max_units and not self.done:
            if not self.pending:
                if self.i < 0:
                    self.done = True
                    break
                if self._gen_in_round():
                    self.pending = True
                    self.cursor = self._head(self.pend_x * self.n + self.pend_y)
                    continue  # binding costs nothing
                self.i -= 1  # round hop
                self.phase = 0
                self.apos = 0
                self.bpos = 0
                used += 1
                continue
            if self.cursor != -1:
                mp = self.pool_m[self.cursor]
                self.cursor = self.pool_n[self.cursor]
                used += 1
                _canon(&ob[fill, 0], self.orig[self.pend_x], self.orig[self.pend_mid],
                       self.orig[self.pend_y], self.orig[mp])
                fill += 1
            else:
                key = self.pend_x * self.n + self.pend_y
                if self.pool_len == self.pool_cap:
                    self._grow()
                self.pool_m[self.pool_len] = <int>self.pend_mid
                self.pool_n[self.pool_len] = <int>self._head(key)
                self._set_head(key, self.pool_len)
                self.pool_len += 1
                self.paths_done += 1
                used += 1
                self.pending = False
        self.units += used
        return used, out[:fill], self.done


# ---------------------------------------------------------------------------
# sparse stepper, deterministic radix backend
# ---------------------------------------------------------------------------

cdef class SparseRadixStepper:
    """Offline rounds: regenerate the suffix graph's 2-paths from scratch,
    radix-sort them by endpoint pair (four 8-bit counting passes), and
    combine within groups, excluding cycles already present in the previous
    (deeper) suffix."""
    cdef public long n
    cdef cnp.int64_t[::1] sufptr
    cdef cnp.int32_t[::1] sufidx
    cdef cnp.int32_t[::1] orig
    cdef cnp.int64_t[::1] cuts
    cdef long round_idx, next_cut
    cdef long i, phase, apos, bpos
    cdef long pend_x, pend_mid, pend_y
    cdef long gphase  # 0 = generate, 1..4 = radix passes, 5 = scan
    cdef object keys_arr, mids_arr, keys2_arr, mids2_arr
    cdef cnp.int64_t[::1] keys
    cdef cnp.int32_t[::1] mids
    cdef cnp.int64_t[::1] keys2
    cdef cnp.int32_t[::1] mids2
    cdef long npaths, cap
    cdef object count_arr
    cdef cnp.int64_t[::1] counts
    cdef long sort_pos, sort_shift, scan_pos, scan_q, group_start
    cdef bint counting
    cdef public long paths_done, units
    cdef public bint done

    def __init__(self, long n, sufptr, sufidx, orig, cuts):
        if n > 65536:
            raise ValueError("radix backend caps n at 65536")
        self.n = n
        self.sufptr = sufptr
        self.sufidx = sufidx
        self.orig = orig
        self.cuts = cuts
        self.round_idx = 0
        self.next_cut = n  # nothing excluded in the first round
        self.cap = 1024
        self.keys_arr = np.empty(self.cap, dtype=np.int64)
        self.mids_arr = np.empty(self.cap, dtype=np.int32)
        self.keys2_arr = np.empty(self.cap, dtype=np.int64)
        self.mids2_arr = np.empty(self.cap, dtype=np.int32)
        self._bind()
        self.count_arr = np.zeros(256, dtype=np.int64)
        self.counts = self.count_arr
        self.paths_done = 0
        self.units = 0
        self.done = cuts.shape[0] == 0
        if not self.done:
            self._begin_round()

    cdef void _bind(self):
        self.keys = self.keys_arr
        self.mids = self.mids_arr
        self.keys2 = self.keys2_arr
        self.mids2 = self.mids2_arr

    cdef void _grow(self):
        self.cap *= 2
        k = np.empty(self.cap, dtype=np.int64)
        m = np.empty(self.cap, dtype=np.int32)
        k[: self.npaths] = self.keys_arr[: self.npaths]
        m[: self.npaths] = self.mids_arr[: self.npaths]
        self.keys_arr = k
        self.mids_arr = m
        self.keys2_arr = np.empty(self.cap, dtype=np.int64)
        self.mids2_arr = np.empty(self.cap, dtype=np.int32)
        self._bind()

    cdef void _begin_round(self):
        self.i = <long>self.cuts[self.round_idx]
        self.phase = 0
        self.apos = 0
        self.bpos = 0
        self.gphase = 0
        self.npaths = 0

    cdef bint _gen_in_vertex(self):
        cdef long j, k, da, db
        da = self.sufptr[self.i + 1] - self.sufptr[self.i]
        if self.phase == 0:
            while self.apos < da:
                j = self.sufidx[self.sufptr[self.i] + self.apos]
                db = self.sufptr[j + 1] - self.sufptr[j]
                if self.bpos < db:
                    k = self.sufidx[self.sufptr[j] + self.bpos]
                    self.bpos += 1
                    self.pend_x = self.i
                    self.pend_mid = j
                    self.pend_y = k
                    return True
                self.apos += 1
                self.bpos = 0
            self.phase = 1
            self.apos = 0
            self.bpos = 1
        while self.apos < da - 1:
            if self.bpos < da:
                j = self.sufidx[self.sufptr[self.i] + self.apos]
                k = self.sufidx[self.sufptr[self.i] + self.bpos]
                self.bpos += 1
                self.pend_x = j
                self.pend_mid = self.i
                self.pend_y = k
                return True
            self.apos += 1
            self.bpos = self.apos + 1
        return False

    def advance(self, long max_units):
        out = np.empty((max_units, 4), dtype=np.int32)
        cdef cnp.int32_t[:, ::1] ob = out
        cdef long used = 0, fill = 0
        cdef long b, x, y, mn, acc, tmp, kp
        while used < max_units and not self.done:
            if self.gphase == 0:
                if self.i >= self.n:
                    self.gphase = 1
                    self.sort_shift = 0
                    self.sort_pos = 0
                    self.counting = True
                    self.count_arr[:] = 0
                    continue
                if self._gen_in_vertex():
                    if self.npaths == self.cap:
                        self._grow()
                    self.keys[self.npaths] = self.pend_x * self.n + self.pend_y
                    self.mids[self.npaths] = <int>self.pend_mid
                    self.npaths += 1
                    self.paths_done += 1
                    used += 1
                else:
                    self.i += 1  # vertex hop within the round
                    self.phase = 0
                    self.apos = 0
                    self.bpos = 0
                    used += 1
            elif self.gphase <= 4:
                if self.counting:
                    if self.sort_pos < self.npaths:
                        b = (self.keys[self.sort_pos] >> self.sort_shift) & 0xFF
                        self.counts[b] += 1
                        self.sort_pos += 1
                        used += 1
                    else:
                        acc = 0
                        for b in range(256):
                            tmp = self.counts[b]
                            self.counts[b] = acc
                            acc += tmp
                        self.counting = False
                        self.sort_pos = 0
                        used += 1
                else:
                    if self.sort_pos < self.npaths:
                        kp = self.keys[self.sort_pos]
                        b = (kp >> self.sort_shift) & 0xFF
                        self.keys2[self.counts[b]] = kp
                        self.mids2[self.counts[b]] = self.mids[self.sort_pos]
                        self.counts[b] += 1
                        self.sort_pos += 1
                        used += 1
                    else:
                        self.keys_arr, self.keys2_arr = self.keys2_arr, self.keys_arr
                        self.mids_arr, self.mids2_arr = self.mids2_arr, self.mids_arr
                        self._bind()
                        self.gphase += 1
                        self.sort_shift += 8
                        self.sort_pos = 0
                        self.counting = True
                        self.count_arr[:] = 0
                        if self.gphase == 5:
                            self.scan_pos = 0
                            self.scan_q = 0
                            self.group_start = 0
            else:
                if self.scan_pos >= self.npaths:
                    self.next_cut = <long>self.cuts[self.round_idx]
                    self.round_idx += 1
                    if self.round_idx >= self.cuts.shape[0]:
                        self.done = True
                    else:
                        self._begin_round()
                    continue
                if self.scan_q < self.scan_pos:
                    x = self.keys[self.scan_pos] // self.n
                    y = self.keys[self.scan_pos] % self.n
                    mn = x
                    if self.mids[self.scan_q] < mn: mn = self.mids[self.scan_q]
                    if self.mids[self.scan_pos] < mn: mn = self.mids[self.scan_pos]
                    if mn < self.next_cut:
                        _canon(&ob[fill, 0], self.orig[x], self.orig[self.mids[self.scan_q]],
                               self.orig[y], self.orig[self.mids[self.scan_pos]])
                        fill += 1
                    self.scan_q += 1
                    used += 1
                else:
                    self.scan_pos += 1
                    if (self.scan_pos < self.npaths and
                            self.keys[self.scan_pos] != self.keys[self.scan_pos - 1]):
                        self.group_start = self.scan_pos
                    self.scan_q = self.group_start
                    used += 1
        self.units += used
        return used, out[:fill], self.done
