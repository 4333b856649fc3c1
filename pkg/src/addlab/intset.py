"""Integer sets, additive-structure detectors, and brute-force oracles.

The central type is :class:`IntSet`: a sorted, duplicate-free set of signed
64-bit integers together with a declared universe bound U (every element lies
in [-U, U]).  On top of it this module provides

* ``representation_counts`` / ``additive_energy`` -- r_A(x) and E(A),
* ``find_sidon_violation`` -- smallest a+b = c+d with {a,b} != {c,d},
* ``find_relations`` -- exhaustive k-term small-coefficient relation search,
* ``solve_3sum_naive`` -- the quadratic 3SUM oracle (one-set and tripartite).

Everything here is a pure function of its inputs and is used as the ground
truth for the faster algorithms elsewhere in the package.  All operations are
exact in int64; inputs that could overflow 62-bit intermediates are rejected
with :class:`OverflowRiskError` rather than silently wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import EmptySetError, OverflowRiskError

#: Largest allowed universe bound: triple sums of [-U, U] then stay within
#: 62 bits, leaving headroom for shift gadgets.
MAX_UNIVERSE = 2**60


@dataclass(frozen=True)
class IntSet:
    """A finite, sorted, duplicate-free set of signed integers in [-U, U]."""

    elements: tuple
    universe_bound: int

    def __post_init__(self):
        u = self.universe_bound
        if not isinstance(u, int) or u < 0 or u > MAX_UNIVERSE:
            raise OverflowRiskError(f"universe bound {u} outside [0, 2^60]")
        prev = None
        for e in self.elements:
            if prev is not None and e <= prev:
                raise ValueError("elements must be strictly increasing")
            if abs(e) > u:
                raise ValueError(f"element {e} outside [-{u}, {u}]")
            prev = e

    @classmethod
    def from_iterable(cls, it: Iterable[int], universe_bound: Optional[int] = None) -> "IntSet":
        elems = tuple(sorted(set(int(x) for x in it)))
        if universe_bound is None:
            universe_bound = max((abs(e) for e in elems), default=0)
        return cls(elems, int(universe_bound))

    @classmethod
    def from_array(cls, arr: np.ndarray, universe_bound: Optional[int] = None) -> "IntSet":
        return cls.from_iterable(np.asarray(arr, dtype=np.int64).tolist(), universe_bound)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        i = np.searchsorted(self.to_array(), x)
        return i < len(self.elements) and self.elements[i] == x


@dataclass(frozen=True)
class RelationWitness:
    """Coefficients and elements witnessing Sum beta_i * a_i = 0.

    ``kind`` is one of ``sidon-quadruple``, ``3-term``, ``4-term``,
    ``3sum-solution``.  For the relation kinds the coefficients sum to zero
    and are not all zero; a relation is nontrivial when some repeated element
    value carries a nonzero coefficient sum.
    """

    coefficients: tuple
    elements: tuple
    kind: str

    def validate(self, ell: Optional[int] = None) -> None:
        cs, es = self.coefficients, self.elements
        if len(cs) != len(es):
            raise ValueError("coefficient/element length mismatch")
        if sum(c * e for c, e in zip(cs, es)) != 0:
            raise ValueError("coefficients do not annihilate elements")
        if self.kind != "3sum-solution":
            if sum(cs) != 0:
                raise ValueError("relation coefficients must sum to zero")
            if all(c == 0 for c in cs):
                raise ValueError("relation coefficients are all zero")
            if ell is not None and any(abs(c) > ell for c in cs):
                raise ValueError(f"coefficient outside [-{ell}, {ell}]")

    def is_nontrivial(self) -> bool:
        if self.kind == "3sum-solution":
            return True
        per_value: dict = {}
        for c, e in zip(self.coefficients, self.elements):
            per_value[e] = per_value.get(e, 0) + c
        return any(v != 0 for v in per_value.values())

    def signature(self) -> tuple:
        return tuple(sorted(zip(self.elements, self.coefficients)))


@dataclass(frozen=True)
class EnergyReport:
    energy: int
    representation_counts: dict
    is_sidon: bool


class RelationList(list):
    """List of witnesses; ``cost`` counts elementary scan operations.

    The exhaustive search costs Theta(n^k * ell^(k-1)); the counter lets
    callers see what they paid.
    """

    cost: int = 0


def _check_energy_bounds(a: IntSet) -> None:
    if 2 * a.universe_bound > 2**62:
        raise OverflowRiskError("pair sums may exceed 62 bits")


def _pair_sums_sorted(arr: np.ndarray) -> np.ndarray:
    return np.sort(np.add.outer(arr, arr).ravel(), kind="stable")


def additive_energy(a: IntSet) -> int:
    """E(A) = sum_x r_A(x)^2 without materializing the count map."""
    _check_energy_bounds(a)
    if len(a) == 0:
        return 0
    s = _pair_sums_sorted(a.to_array())
    boundaries = np.nonzero(np.diff(s))[0]
    starts = np.concatenate(([0], boundaries + 1))
    ends = np.concatenate((boundaries + 1, [len(s)]))
    counts = ends - starts
    return int(np.sum(counts.astype(np.int64) ** 2))


def representation_counts(a: IntSet) -> EnergyReport:
    """All r_A(x) over ordered pairs, E(A), and the Sidon flag."""
    _check_energy_bounds(a)
    n = len(a)
    if n == 0:
        return EnergyReport(0, {}, True)
    s = _pair_sums_sorted(a.to_array())
    values, counts = np.unique(s, return_counts=True)
    energy = int(np.sum(counts.astype(np.int64) ** 2))
    rep = {int(v): int(c) for v, c in zip(values, counts)}
    return EnergyReport(energy, rep, energy == 2 * n * n - n)


def is_sidon(a: IntSet) -> bool:
    n = len(a)
    return additive_energy(a) == 2 * n * n - n


def find_sidon_violation(a: IntSet) -> Optional[RelationWitness]:
    """Smallest (a,b,c,d) with a+b = c+d and {a,b} != {c,d}, or None.

    Witnesses are canonicalized as a <= b, c <= d, (a,b) < (c,d); the
    lexicographically smallest such tuple over all violations is returned.
    """
    _check_energy_bounds(a)
    n = len(a)
    if n < 2:
        return None
    arr = a.to_array()
    iu, ju = np.triu_indices(n)
    pa, pb = arr[iu], arr[ju]
    sums = pa + pb
    # Pairs in lexicographic order within each sum class.
    order = np.lexsort((pb, pa, sums))
    sums, pa, pb = sums[order], pa[order], pb[order]
    same = sums[1:] == sums[:-1]
    if not same.any():
        return None
    idx = np.nonzero(same)[0]
    # Group starts: for each colliding sum take its first two pairs.
    first_of_run = np.concatenate(([True], sums[1:] != sums[:-1]))
    run_id = np.cumsum(first_of_run) - 1
    best = None
    seen_runs = set()
    for i in idx:
        r = run_id[i]
        if r in seen_runs:
            continue
        seen_runs.add(r)
        cand = (int(pa[i]), int(pb[i]), int(pa[i + 1]), int(pb[i + 1]))
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    w = RelationWitness((1, 1, -1, -1), best, "sidon-quadruple")
    w.validate()
    return w


def _coeff_tuples(k: int, ell: int):
    """All (b_1..b_k) in [-ell, ell]^k, sum zero, not all zero."""
    rng = range(-ell, ell + 1)
    if k == 3:
        for b1 in rng:
            for b2 in rng:
                b3 = -(b1 + b2)
                if abs(b3) <= ell and (b1 or b2 or b3):
                    yield (b1, b2, b3)
    else:
        for b1 in rng:
            for b2 in rng:
                for b3 in rng:
                    b4 = -(b1 + b2 + b3)
                    if abs(b4) <= ell and (b1 or b2 or b3 or b4):
                        yield (b1, b2, b3, b4)


def _mode_keep(w: RelationWitness, mode: str) -> bool:
    if mode == "all":
        return True
    if mode == "nontrivial":
        return w.is_nontrivial()
    if mode == "distinct":
        return len(set(w.elements)) == len(w.elements)
    raise ValueError(f"unknown mode {mode!r}")


def find_relations(a: IntSet, k: int, ell: int, mode: str = "nontrivial",
                   limit: Optional[int] = None) -> RelationList:
    """All k-term ell-relations of A, filtered by mode.

    Coefficient slots with beta_i = 0 make the element immaterial; such
    relations are reported once, with the smallest element of A bound to the
    zero slots.  Witnesses are deduplicated up to simultaneous permutation of
    (beta_i, a_i) pairs.
    """
    if k not in (3, 4):
        raise ValueError("k must be 3 or 4")
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if k * ell * max(a.universe_bound, 1) > 2**62:
        raise OverflowRiskError("relation sums may exceed 62 bits")
    out = RelationList()
    out.cost = 0
    n = len(a)
    if n == 0:
        return out
    arr = a.to_array()
    seen = set()

    def emit(coeffs, elems, kind):
        # Zero-coefficient slots carry an immaterial element: bind them to
        # the smallest element outside the support, so the distinct-mode
        # filter sees a realizable assignment.
        coeffs = tuple(coeffs)
        elems = [int(e) for e in elems]
        nzero = sum(1 for c in coeffs if c == 0)
        if nzero:
            support = {e for c, e in zip(coeffs, elems) if c != 0}
            spare = [int(x) for x in arr if int(x) not in support]
            if mode == "distinct" and len(spare) < nzero:
                return False
            fill = (spare or [int(arr[0])])
            elems = [e for c, e in zip(coeffs, elems) if c != 0]
            for t in range(nzero):
                elems.append(fill[min(t, len(fill) - 1)])
            coeffs = tuple(c for c in coeffs if c != 0) + (0,) * nzero
        w = RelationWitness(coeffs, tuple(elems), kind)
        if not _mode_keep(w, mode):
            return False
        sig = tuple(sorted((e, c) for e, c in zip(w.elements, w.coefficients) if c != 0))
        if sig in seen:
            return False
        seen.add(sig)
        out.append(w)
        return limit is not None and len(out) >= limit

    kind = f"{k}-term"
    for coeffs in _coeff_tuples(k, ell):
        nz = [i for i, c in enumerate(coeffs) if c != 0]
        if len(nz) < len(coeffs):
            # Zero slots: only canonical placements (zeros trailing) to avoid
            # re-reporting the same reduced relation per slot arrangement.
            if any(coeffs[i] != 0 for i in range(len(nz), len(coeffs))):
                continue
        cs = [coeffs[i] for i in nz]
        if len(cs) == 2:
            # b*(x - y) = 0 forces x = y: trivial; only visible in mode "all".
            if mode == "all":
                out.cost += n
                for x in arr:
                    full = list(cs) + [0] * (k - 2)
                    if emit(full, [x, x] + [int(arr[0])] * (k - 2), kind):
                        return out
            continue
        if len(cs) == 3:
            out.cost += n * n
            lhs = np.add.outer(cs[0] * arr, cs[1] * arr).ravel()
            rhs = -cs[2] * arr
            ls = np.argsort(lhs, kind="stable")
            lsorted = lhs[ls]
            lo = np.searchsorted(lsorted, rhs, side="left")
            hi = np.searchsorted(lsorted, rhs, side="right")
            for t in np.nonzero(hi > lo)[0]:
                for pos in ls[lo[t]:hi[t]]:
                    i, j = divmod(int(pos), n)
                    elems = [arr[i], arr[j], arr[t]]
                    full = list(cs) + [0] * (k - 3)
                    if emit(full, elems + [int(arr[0])] * (k - 3), kind):
                        return out
        else:
            out.cost += n * n
            lhs = np.add.outer(cs[0] * arr, cs[1] * arr).ravel()
            rhs = -np.add.outer(cs[2] * arr, cs[3] * arr).ravel()
            ls = np.argsort(lhs, kind="stable")
            lsorted = lhs[ls]
            lo = np.searchsorted(lsorted, rhs, side="left")
            hi = np.searchsorted(lsorted, rhs, side="right")
            for t in np.nonzero(hi > lo)[0]:
                i3, i4 = divmod(int(t), n)
                for pos in ls[lo[t]:hi[t]]:
                    i1, i2 = divmod(int(pos), n)
                    if emit(cs, [arr[i1], arr[i2], arr[i3], arr[i4]], kind):
                        return out
    return out


def solve_3sum_naive(a: IntSet, b: Optional[IntSet] = None,
                     c: Optional[IntSet] = None) -> Optional[RelationWitness]:
    """Quadratic sorted-lookup 3SUM; the correctness oracle for all solvers.

    One-set mode finds (x,y,z) in A^3 with x+y+z = 0 (repeats allowed);
    tripartite mode takes one element per set.  Returns the lexicographically
    smallest witness tuple, or None.
    """
    if (b is None) != (c is None):
        raise ValueError("pass one set or three sets")
    if b is None:
        b = c = a
    for s in (a, b, c):
        if 3 * s.universe_bound > 2**62:
            raise OverflowRiskError("triple sums may exceed 62 bits")
    if len(a) == 0 or len(b) == 0 or len(c) == 0:
        return None
    aa, bb, cc = a.to_array(), b.to_array(), c.to_array()
    for x in aa:  # ascending; first full witness found is lexicographic min
        need = -x - bb
        lo = np.searchsorted(cc, need)
        ok = (lo < len(cc)) & (cc[np.minimum(lo, len(cc) - 1)] == need)
        hit = np.nonzero(ok)[0]
        if hit.size:
            y = int(bb[hit[0]])
            w = RelationWitness((1, 1, 1), (int(x), y, int(-x - y)), "3sum-solution")
            return w
    return None


def read_set_file(path, universe_bound: Optional[int] = None) -> IntSet:
    """One signed decimal integer per line; '#' lines ignored."""
    elems = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        elems.append(int(line))
    return IntSet.from_iterable(elems, universe_bound)


def write_set_file(path, a: IntSet) -> None:
    Path(path).write_text("".join(f"{e}\n" for e in a.elements))
