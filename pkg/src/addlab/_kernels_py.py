"""Pure-Python fallback for :mod:`addlab._kernels`.

Selected automatically when the compiled extension is unavailable, or forced
with ``ADDLAB_PURE=1``.  Outputs and counted steps match the compiled kernels
exactly; only wall-clock speed differs.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _nontrivial4(idx, cf):
    for k in range(4):
        if idx[k] < 0:
            continue
        if any(idx[t] == idx[k] for t in range(k)):
            continue
        if sum(cf[t] for t in range(4) if idx[t] == idx[k]) != 0:
            return True
    return False


def nontrivial_relation_flags(values, offsets, ell, kmax=4):
    values = np.asarray(values, dtype=np.int64)
    offsets = np.asarray(offsets, dtype=np.int64)
    n_inst = len(offsets) - 1
    out = np.zeros(n_inst, dtype=np.uint8)
    if ell < 1 or ell > 500:
        raise ValueError("ell out of range")
    nz = [b for b in range(-ell, ell + 1) if b != 0]
    for i in range(n_inst):
        e = values[offsets[i] : offsets[i + 1]].tolist()
        s = len(e)
        if s > 512:
            raise ValueError("instance too large for the batched kernel")
        if s < 2:
            continue
        table = {}
        for b1 in nz:
            for b2 in nz:
                for ii in range(s):
                    for jj in range(s):
                        table.setdefault(b1 * e[ii] + b2 * e[jj], []).append(
                            (b1, b2, ii, jj)
                        )
        hit = False
        for b3 in nz:
            if hit:
                break
            for kk in range(s):
                if hit:
                    break
                for b1, b2, ii, jj in table.get(-b3 * e[kk], ()):
                    if b1 + b2 + b3 == 0 and _nontrivial4(
                        (ii, jj, kk, -1), (b1, b2, b3, 0)
                    ):
                        hit = True
                        break
        if kmax >= 4 and not hit:
            for b3 in nz:
                if hit:
                    break
                for b4 in nz:
                    if hit:
                        break
                    for kk in range(s):
                        if hit:
                            break
                        for ll in range(s):
                            tgt = -(b3 * e[kk] + b4 * e[ll])
                            stop = False
                            for b1, b2, ii, jj in table.get(tgt, ()):
                                if b1 + b2 + b3 + b4 == 0 and _nontrivial4(
                                    (ii, jj, kk, ll), (b1, b2, b3, b4)
                                ):
                                    stop = True
                                    break
                            if stop:
                                hit = True
                                break
        out[i] = 1 if hit else 0
    return out


def four_cycle_oracle(n, indptr, indices, want_list=True):
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int32)
    adj = [indices[indptr[v] : indptr[v + 1]].tolist() for v in range(n)]
    count = 0
    rows = []
    for w in range(n):
        aw = adj[w]
        for y in range(w + 1, n):
            ay = adj[y]
            ai = bi = 0
            common = []
            while ai < len(aw) and bi < len(ay):
                if aw[ai] < ay[bi]:
                    ai += 1
                elif aw[ai] > ay[bi]:
                    bi += 1
                else:
                    if aw[ai] > w:
                        common.append(aw[ai])
                    ai += 1
                    bi += 1
            c = len(common)
            if c >= 2:
                count += c * (c - 1) // 2
                if want_list:
                    for i in range(c):
                        for j in range(i + 1, c):
                            rows.append((w, common[i], y, common[j]))
    if not want_list:
        return count, None
    return count, np.array(rows, dtype=np.int32).reshape(-1, 4)


def _canon(a, b, c, d):
    w = min(a, b, c, d)
    if w == a or w == c:
        y = a + c - w
        x, z = (b, d) if b < d else (d, b)
    else:
        y = b + d - w
        x, z = (a, c) if a < c else (c, a)
    return (w, x, y, z)


class DenseStepper:
    def __init__(self, n, indptr, indices, flat_cap=1 << 27):
        self.n = n
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int32)
        self.heads = {}
        self.pool_v = []
        self.pool_n = []
        self.v = 0
        self.ia = 0
        self.ib = 1
        self.at_triple = False
        self.cursor = -1
        self.triples_done = 0
        self.units = 0
        self.done = False

    def advance(self, max_units):
        out = []
        used = 0
        ind, ptr = self.indices, self.indptr
        while used < max_units and not self.done:
            if not self.at_triple:
                if self.v >= self.n:
                    self.done = True
                    break
                deg = ptr[self.v + 1] - ptr[self.v]
                if self.ia < deg - 1 and self.ib < deg:
                    base = ptr[self.v]
                    key = int(ind[base + self.ia]) * self.n + int(ind[base + self.ib])
                    self.cursor = self.heads.get(key, -1)
                    self.at_triple = True
                    continue
                self.v += 1
                self.ia = 0
                self.ib = 1
                used += 1
                continue
            base = ptr[self.v]
            u = int(ind[base + self.ia])
            w = int(ind[base + self.ib])
            if self.cursor != -1:
                vp = self.pool_v[self.cursor]
                self.cursor = self.pool_n[self.cursor]
                used += 1
                if self.v < w:
                    out.append(_canon(self.v, u, vp, w))
            else:
                key = u * self.n + w
                self.pool_v.append(self.v)
                self.pool_n.append(self.heads.get(key, -1))
                self.heads[key] = len(self.pool_v) - 1
                self.triples_done += 1
                used += 1
                self.ib += 1
                if self.ib >= ptr[self.v + 1] - ptr[self.v]:
                    self.ia += 1
                    self.ib = self.ia + 1
                self.at_triple = False
        self.units += used
        arr = np.array(out, dtype=np.int32).reshape(-1, 4)
        return used, arr, self.done


class SparseHashStepper:
    def __init__(self, n, sufptr, sufidx, orig, flat_cap=1 << 27):
        self.n = n
        self.sufptr = np.asarray(sufptr, dtype=np.int64)
        self.sufidx = np.asarray(sufidx, dtype=np.int32)
        self.orig = np.asarray(orig, dtype=np.int32)
        self.heads = {}
        self.pool_m = []
        self.pool_n = []
        self.i = n - 1
        self.phase = 0
        self.apos = 0
        self.bpos = 0
        self.pending = False
        self.pend = (0, 0, 0)
        self.cursor = -1
        self.paths_done = 0
        self.units = 0
        self.done = False

    def _gen_in_round(self):
        ptr, idx = self.sufptr, self.sufidx
        da = ptr[self.i + 1] - ptr[self.i]
        if self.phase == 0:
            while self.apos < da:
                j = int(idx[ptr[self.i] + self.apos])
                db = ptr[j + 1] - ptr[j]
                if self.bpos < db:
                    k = int(idx[ptr[j] + self.bpos])
                    self.bpos += 1
                    self.pend = (self.i, j, k)
                    return True
                self.apos += 1
                self.bpos = 0
            self.phase = 1
            self.apos = 0
            self.bpos = 1
        while self.apos < da - 1:
            if self.bpos < da:
                j = int(idx[ptr[self.i] + self.apos])
                k = int(idx[ptr[self.i] + self.bpos])
                self.bpos += 1
                self.pend = (j, self.i, k)
                return True
            self.apos += 1
            self.bpos = self.apos + 1
        return False

    def advance(self, max_units):
        out = []
        used = 0
        orig = self.orig
        while used < max_units and not self.done:
            if not self.pending:
                if self.i < 0:
                    self.done = True
                    break
                if self._gen_in_round():
                    self.pending = True
                    x, _, y = self.pend
                    self.cursor = self.heads.get(x * self.n + y, -1)
                    continue
                self.i -= 1
                self.phase = 0
                self.apos = 0
                self.bpos = 0
                used += 1
                continue
            x, mid, y = self.pend
            if self.cursor != -1:
                mp = self.pool_m[self.cursor]
                self.cursor = self.pool_n[self.cursor]
                used += 1
                out.append(_canon(int(orig[x]), int(orig[mid]), int(orig[y]), int(orig[mp])))
            else:
                key = x * self.n + y
                self.pool_m.append(mid)
                self.pool_n.append(self.heads.get(key, -1))
                self.heads[key] = len(self.pool_m) - 1
                self.paths_done += 1
                used += 1
                self.pending = False
        self.units += used
        arr = np.array(out, dtype=np.int32).reshape(-1, 4)
        return used, arr, self.done


class SparseRadixStepper:
    def __init__(self, n, sufptr, sufidx, orig, cuts):
        if n > 65536:
            raise ValueError("radix backend caps n at 65536")
        self.n = n
        self.sufptr = np.asarray(sufptr, dtype=np.int64)
        self.sufidx = np.asarray(sufidx, dtype=np.int32)
        self.orig = np.asarray(orig, dtype=np.int32)
        self.cuts = np.asarray(cuts, dtype=np.int64)
        self.round_idx = 0
        self.next_cut = n
        self.counts = np.zeros(256, dtype=np.int64)
        self.paths_done = 0
        self.units = 0
        self.done = len(self.cuts) == 0
        if not self.done:
            self._begin_round()

    def _begin_round(self):
        self.i = int(self.cuts[self.round_idx])
        self.phase = 0
        self.apos = 0
        self.bpos = 0
        self.gphase = 0
        self.keys = []
        self.mids = []

    def _gen_in_vertex(self):
        ptr, idx = self.sufptr, self.sufidx
        da = ptr[self.i + 1] - ptr[self.i]
        if self.phase == 0:
            while self.apos < da:
                j = int(idx[ptr[self.i] + self.apos])
                db = ptr[j + 1] - ptr[j]
                if self.bpos < db:
                    k = int(idx[ptr[j] + self.bpos])
                    self.bpos += 1
                    self.pend = (self.i, j, k)
                    return True
                self.apos += 1
                self.bpos = 0
            self.phase = 1
            self.apos = 0
            self.bpos = 1
        while self.apos < da - 1:
            if self.bpos < da:
                j = int(idx[ptr[self.i] + self.apos])
                k = int(idx[ptr[self.i] + self.bpos])
                self.bpos += 1
                self.pend = (j, self.i, k)
                return True
            self.apos += 1
            self.bpos = self.apos + 1
        return False

    def advance(self, max_units):
        out = []
        used = 0
        while used < max_units and not self.done:
            if self.gphase == 0:
                if self.i >= self.n:
                    self.gphase = 1
                    self.sort_shift = 0
                    self.sort_pos = 0
                    self.counting = True
                    self.counts[:] = 0
                    self._k = np.array(self.keys, dtype=np.int64)
                    self._m = np.array(self.mids, dtype=np.int32)
                    self._k2 = np.empty_like(self._k)
                    self._m2 = np.empty_like(self._m)
                    continue
                if self._gen_in_vertex():
                    x, mid, y = self.pend
                    self.keys.append(x * self.n + y)
                    self.mids.append(mid)
                    self.paths_done += 1
                    used += 1
                else:
                    self.i += 1
                    self.phase = 0
                    self.apos = 0
                    self.bpos = 0
                    used += 1
            elif self.gphase <= 4:
                npaths = len(self._k)
                if self.counting:
                    if self.sort_pos < npaths:
                        b = (int(self._k[self.sort_pos]) >> self.sort_shift) & 0xFF
                        self.counts[b] += 1
                        self.sort_pos += 1
                        used += 1
                    else:
                        acc = 0
                        for b in range(256):
                            tmp = int(self.counts[b])
                            self.counts[b] = acc
                            acc += tmp
                        self.counting = False
                        self.sort_pos = 0
                        used += 1
                else:
                    if self.sort_pos < npaths:
                        kp = int(self._k[self.sort_pos])
                        b = (kp >> self.sort_shift) & 0xFF
                        self._k2[self.counts[b]] = kp
                        self._m2[self.counts[b]] = self._m[self.sort_pos]
                        self.counts[b] += 1
                        self.sort_pos += 1
                        used += 1
                    else:
                        self._k, self._k2 = self._k2, self._k
                        self._m, self._m2 = self._m2, self._m
                        self.gphase += 1
                        self.sort_shift += 8
                        self.sort_pos = 0
                        self.counting = True
                        self.counts[:] = 0
                        if self.gphase == 5:
                            self.scan_pos = 0
                            self.scan_q = 0
                            self.group_start = 0
            else:
                npaths = len(self._k)
                if self.scan_pos >= npaths:
                    self.next_cut = int(self.cuts[self.round_idx])
                    self.round_idx += 1
                    if self.round_idx >= len(self.cuts):
                        self.done = True
                    else:
                        self._begin_round()
                    continue
                if self.scan_q < self.scan_pos:
                    key = int(self._k[self.scan_pos])
                    x, y = key // self.n, key % self.n
                    m1 = int(self._m[self.scan_q])
                    m2 = int(self._m[self.scan_pos])
                    if min(x, m1, m2) < self.next_cut:
                        out.append(_canon(int(self.orig[x]), int(self.orig[m1]),
                                          int(self.orig[y]), int(self.orig[m2])))
                    self.scan_q += 1
                    used += 1
                else:
                    self.scan_pos += 1
                    if (self.scan_pos < npaths and
                            int(self._k[self.scan_pos]) != int(self._k[self.scan_pos - 1])):
                        self.group_start = self.scan_pos
                    self.scan_q = self.group_start
                    used += 1
        self.units += used
        arr = np.array(out, dtype=np.int32).reshape(-1, 4)
        return used, arr, self.done
