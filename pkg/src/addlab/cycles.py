"""Constant-delay 4-cycle enumeration with an explicit step meter.

Three discovery engines share one enumeration contract:

* dense:  for v ascending and neighbor pairs u < w, combine v with the
  buffered opposite vertices in table entry L[u, w]; O(n^2) preprocessing.
* sparse: min-degree peeling order; rounds add vertices in reverse order and
  combine 2-paths bucketed by endpoint pair; O(m^{4/3}) preprocessing.
  Buckets are an associative map by default; a deterministic counting-sort
  round variant (geometric cut points) is available as ``sparse-radix``.
* hybrid: for m >= n^{1.5+delta}, a dense pass over a vertex subsample fills
  the emission buffer while the full dense preprocessing catches up.

``Enumerator.preprocess()`` runs discovery to the algorithm's step horizon,
buffering found cycles; each ``next_cycle()`` then performs a constant-size
slice of further discovery and pops one cycle.  The elementary-step meter
(one unit per neighbor probe, bucket append, comparison) is exact and
backend-independent; wall-clock time is reported, never asserted.

A 4-cycle is identified by its canonical tuple (w, x, y, z): w the minimum
vertex, x < z its two cycle-neighbors, y the opposite vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from . import kernels
from .errors import HybridDensityError
from .rng import rng_from

#: Discovery units interleaved with each pop, per algorithm.
_PACE = {"dense": 4, "sparse": 8, "sparse-radix": 8, "hybrid": 8}
#: Dense preprocessing processes this many (v, u, w) triples times n^2.
_DENSE_TRIPLE_FACTOR = 5
#: Sparse preprocessing unit horizon, times m^{4/3}.
_SPARSE_HORIZON_FACTOR = 8
_RADIX_HORIZON_FACTOR = 24


@dataclass(frozen=True)
class FourCycle:
    w: int
    x: int
    y: int
    z: int

    def as_tuple(self):
        return (self.w, self.x, self.y, self.z)


class Graph:
    """Simple undirected graph with sorted CSR adjacency."""

    def __init__(self, n: int, edges):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if edges.size:
            if edges.min() < 0 or edges.max() >= n:
                raise ValueError("vertex id out of range")
            if (edges[:, 0] == edges[:, 1]).any():
                raise ValueError("self-loop")
        u = np.minimum(edges[:, 0], edges[:, 1])
        v = np.maximum(edges[:, 0], edges[:, 1])
        key = u * n + v
        if np.unique(key).size != key.size:
            raise ValueError("multi-edge")
        self.n = n
        self.m = len(edges)
        heads = np.concatenate([u, v])
        tails = np.concatenate([v, u])
        order = np.lexsort((tails, heads))
        heads, tails = heads[order], tails[order]
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(self.indptr, heads + 1, 1)
        np.cumsum(self.indptr, out=self.indptr)
        self.indices = tails.astype(np.int32)
        self._edges = np.stack([u, v], axis=1)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edges(self) -> np.ndarray:
        return self._edges

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return i < nb.size and nb[i] == v

    def induced(self, vertices) -> "Graph":
        """Induced subgraph; vertex i of the result is vertices[i] (sorted)."""
        vs = np.unique(np.asarray(vertices, dtype=np.int64))
        mask = np.zeros(self.n, dtype=bool)
        mask[vs] = True
        e = self._edges
        keep = mask[e[:, 0]] & mask[e[:, 1]]
        relabel = np.full(self.n, -1, dtype=np.int64)
        relabel[vs] = np.arange(vs.size)
        return Graph(vs.size, relabel[e[keep]])

    @classmethod
    def from_file(cls, path) -> "Graph":
        lines = [ln for ln in Path(path).read_text().splitlines()
                 if ln.strip() and not ln.startswith("#")]
        n, m = map(int, lines[0].split())
        edges = [tuple(map(int, ln.split())) for ln in lines[1 : m + 1]]
        return cls(n, edges)

    def to_file(self, path) -> None:
        with open(path, "w") as f:
            f.write(f"{self.n} {self.m}\n")
            for u, v in self._edges:
                f.write(f"{u} {v}\n")


def degeneracy_order(g: Graph):
    """Min-degree peeling via bucket queues.

    Returns (order, peel_degrees d_i, suffix edge counts m_i, suffix max
    degrees d_i_plus with d_i_plus[i] = max(d_j for j >= i), length n+1).
    Ties break toward smaller original degree, then smaller id, so e.g. star
    leaves peel before the center.  Verifies d_i - 1 <= d_{i+1}.
    """
    n = g.n
    deg = g.degrees().astype(np.int64).copy()
    orig = deg.copy()
    removed = np.zeros(n, dtype=bool)
    import heapq

    heap = [(int(deg[v]), int(orig[v]), v) for v in range(n)]
    heapq.heapify(heap)
    order = np.empty(n, dtype=np.int64)
    dseq = np.empty(n, dtype=np.int64)
    k = 0
    while heap:
        d, _, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order[k] = v
        dseq[k] = deg[v]
        k += 1
        for u in g.neighbors(v):
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (int(deg[u]), int(orig[u]), int(u)))
    assert k == n
    for i in range(n - 1):
        assert dseq[i] - 1 <= dseq[i + 1], "peeling degree sequence violated"
    m_suffix = np.zeros(n + 1, dtype=np.int64)
    m_suffix[:n] = dseq
    m_suffix = np.cumsum(m_suffix[::-1])[::-1]
    d_plus = np.zeros(n + 1, dtype=np.int64)
    for i in range(n - 1, -1, -1):
        d_plus[i] = max(dseq[i], d_plus[i + 1])
    return order, dseq, m_suffix, d_plus


def _suffix_csr(g: Graph, order: np.ndarray):
    """CSR of later-neighbors in order-position space, positions ascending."""
    n = g.n
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    e = g.edges()
    pu, pv = pos[e[:, 0]], pos[e[:, 1]]
    lo = np.minimum(pu, pv)
    hi = np.maximum(pu, pv)
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(ptr, lo + 1, 1)
    np.cumsum(ptr, out=ptr)
    srt = np.lexsort((hi, lo))
    idx = hi[srt].astype(np.int32)
    return ptr, idx, order.astype(np.int32)


def _radix_cuts(dseq, m_suffix, d_plus, n):
    """Geometric cut points with 2 <= work ratio < 12 between rounds."""
    limit = -1
    for i in range(n - 1):
        if d_plus[i + 1] != 0:
            limit = i
    if limit < 0:
        return np.empty(0, dtype=np.int64)

    def work(i):
        return m_suffix[i] * max(d_plus[i + 1], 1)

    cuts = [0]
    while cuts[-1] < limit:
        base = work(cuts[-1])
        nxt = cuts[-1] + 1
        for i in range(limit, cuts[-1], -1):
            if work(i) > 0 and base < 12 * work(i):
                nxt = i
                break
        cuts.append(nxt)
    return np.asarray(sorted(set(cuts), reverse=True), dtype=np.int64)


class _Buffer:
    """FIFO of canonical cycles stored as int32 row chunks."""

    def __init__(self):
        self._chunks = deque()
        self._head = 0
        self._len = 0

    def push(self, rows: np.ndarray):
        if len(rows):
            self._chunks.append(rows)
            self._len += len(rows)

    def pop(self):
        chunk = self._chunks[0]
        row = chunk[self._head]
        self._head += 1
        self._len -= 1
        if self._head == len(chunk):
            self._chunks.popleft()
            self._head = 0
        return (int(row[0]), int(row[1]), int(row[2]), int(row[3]))

    def __len__(self):
        return self._len


class Enumerator:
    """Resumable 4-cycle enumeration: preprocess(), then next_cycle().

    The emitted multiset equals the set of all 4-cycles, each exactly once.
    ``preprocess_steps`` and ``max_delay_steps`` expose the step meter.
    """

    def __init__(self, g: Graph, algorithm: str = "auto", delta: float = 0.1,
                 seed=None, backend=None):
        if algorithm == "auto":
            algorithm = "sparse" if float(g.m) ** (4 / 3) < g.n * g.n else "dense"
        self.algorithm = algorithm
        self.graph = g
        self._buffer = _Buffer()
        self._pace = _PACE[algorithm]
        self.preprocess_steps = 0
        self.max_delay_steps = 0
        self.cycles_emitted = 0
        self._preprocessed = False
        self._sub = None
        self._sample_mask = None
        k = kernels.get_backend(backend)
        if algorithm == "dense":
            self._stepper = k.DenseStepper(g.n, g.indptr, g.indices)
            self._horizon = ("triples", _DENSE_TRIPLE_FACTOR * g.n * g.n)
        elif algorithm in ("sparse", "sparse-radix"):
            order, dseq, m_suffix, d_plus = degeneracy_order(g)
            ptr, idx, orig = _suffix_csr(g, order)
            self.preprocess_steps += g.n + g.m  # ordering pass
            if algorithm == "sparse":
                self._stepper = k.SparseHashStepper(g.n, ptr, idx, orig)
                self._horizon = ("units", int(_SPARSE_HORIZON_FACTOR * float(g.m) ** (4 / 3)) + 64)
            else:
                cuts = _radix_cuts(dseq, m_suffix, d_plus, g.n)
                self._stepper = k.SparseRadixStepper(g.n, ptr, idx, orig, cuts)
                self._horizon = ("units", int(_RADIX_HORIZON_FACTOR * float(g.m) ** (4 / 3)) + 256)
        elif algorithm == "hybrid":
            if float(g.m) < float(g.n) ** (1.5 + delta):
                raise HybridDensityError(
                    f"hybrid needs m >= n^(1.5+delta); m={g.m}, n={g.n}, delta={delta}")
            rng = rng_from(seed)
            ns = int(np.ceil(float(g.n) ** (1 - delta)))
            sample = np.sort(rng.choice(g.n, size=ns, replace=False))
            self._sample_mask = np.zeros(g.n, dtype=bool)
            self._sample_mask[sample] = True
            self._sample_vertices = sample
            gs = g.induced(sample)
            self._sub = k.DenseStepper(gs.n, gs.indptr, gs.indices)
            self._sub_horizon = _DENSE_TRIPLE_FACTOR * gs.n * gs.n
            self._stepper = k.DenseStepper(g.n, g.indptr, g.indices)
            self._horizon = ("triples", _DENSE_TRIPLE_FACTOR * g.n * g.n)
        else:
            raise ValueError(f"unknown algorithm {algorithm!r}")

    # -- discovery plumbing -------------------------------------------------

    def _push_main(self, rows: np.ndarray):
        if self._sample_mask is not None and len(rows):
            # cycles fully inside the subsample were found by the sub-pass
            inside = self._sample_mask[rows].all(axis=1)
            rows = rows[~inside]
        self._buffer.push(rows)

    def _advance_main(self, units: int) -> int:
        used, rows, _ = self._stepper.advance(units)
        self._push_main(rows)
        return used

    def _push_sub(self, rows: np.ndarray):
        if not len(rows):
            return
        # relabel to original ids; canonical order is preserved because the
        # sample relabeling is monotone
        self._buffer.push(self._sample_vertices[rows].astype(np.int32))

    def preprocess(self) -> None:
        if self._preprocessed:
            return
        if self._sub is not None:
            # fill the buffer from the subsample while the full table waits
            while self._sub.triples_done < self._sub_horizon and not self._sub.done:
                used, rows, _ = self._sub.advance(1 << 14)
                self._push_sub(rows)
                self.preprocess_steps += used
            self._preprocessed = True
            return
        kind, target = self._horizon
        while not self._stepper.done:
            if kind == "triples" and self._stepper.triples_done >= target:
                break
            if kind == "units" and self._stepper.units >= target:
                break
            used, rows, _ = self._stepper.advance(1 << 14)
            self._push_main(rows)
            self.preprocess_steps += used
        self._preprocessed = True

    def next_cycle(self) -> Optional[tuple]:
        """Next canonical 4-cycle, or None when exhausted."""
        if not self._preprocessed:
            self.preprocess()
        steps = 0
        if self._sub is not None and not self._sub.done:
            # steady state of the hybrid: drain the subsample enumeration
            # while the full preprocessing advances alongside
            used, rows, _ = self._sub.advance(self._pace)
            self._push_sub(rows)
            steps += used
            steps += self._advance_main(2 * self._pace)
            while not len(self._buffer) and not (self._sub.done and self._stepper.done):
                used, rows, _ = self._sub.advance(self._pace)
                self._push_sub(rows)
                steps += used
                steps += self._advance_main(2 * self._pace)
        else:
            if not self._stepper.done:
                steps += self._advance_main(self._pace)
            while not len(self._buffer) and not self._stepper.done:
                steps += self._advance_main(self._pace)
        if not len(self._buffer):
            self.max_delay_steps = max(self.max_delay_steps, steps + 1)
            return None
        out = self._buffer.pop()
        steps += 1
        self.max_delay_steps = max(self.max_delay_steps, steps)
        self.cycles_emitted += 1
        return out

    def __iter__(self) -> Iterator[tuple]:
        while True:
            c = self.next_cycle()
            if c is None:
                return
            yield c


def enumerate_4cycles_dense(g: Graph, backend=None) -> Enumerator:
    return Enumerator(g, "dense", backend=backend)


def enumerate_4cycles_sparse(g: Graph, radix: bool = False, backend=None) -> Enumerator:
    return Enumerator(g, "sparse-radix" if radix else "sparse", backend=backend)


def enumerate_4cycles(g: Graph, algo: str = "auto", delta: float = 0.1,
                      seed=None, backend=None) -> Enumerator:
    return Enumerator(g, algo, delta=delta, seed=seed, backend=backend)


def four_cycles_bruteforce(g: Graph, want_list: bool = True, backend=None):
    """(count, canonical rows) by the common-neighbor-pair oracle."""
    k = kernels.get_backend(backend)
    return k.four_cycle_oracle(g.n, g.indptr, g.indices, want_list)


def closed_walk_counts(g: Graph, k_max: int = 8) -> dict:
    """C_k = trace(A^k) for 3 <= k <= k_max by repeated neighbor aggregation."""
    if g.n > 4096:
        raise ValueError("walk counts use dense powers; n capped at 4096")
    a = np.zeros((g.n, g.n), dtype=np.int64)
    e = g.edges()
    a[e[:, 0], e[:, 1]] = 1
    a[e[:, 1], e[:, 0]] = 1
    out = {}
    power = a.copy()
    for k in range(2, k_max + 1):
        power = power @ a
        if k >= 3:
            out[k] = int(np.trace(power))
    return out


def cycle_stats(g: Graph, k_max: int = 8):
    """(4-cycle count, closed k-walk counts, quasirandom flag).

    Quasirandom: max degree <= ceil(sqrt(n)) and at most n^2 4-cycles,
    counting unlabeled cycles.
    """
    if not 3 <= k_max <= 8:
        raise ValueError("k_max must be in [3, 8]")
    count, _ = four_cycles_bruteforce(g, want_list=False)
    walks = closed_walk_counts(g, k_max)
    maxdeg = int(g.degrees().max()) if g.n else 0
    quasi = maxdeg <= int(np.ceil(np.sqrt(g.n))) and count <= g.n * g.n
    return count, walks, quasi
