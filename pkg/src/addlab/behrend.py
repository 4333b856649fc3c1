"""Deterministic partition into blocks free of nontrivial 3-term relations.

Each |x| is written in base q with d digits; digits are coarsened to
tilde(x)_j = floor(x_j / r) with r = ceil(q / (2*ell+1)), leaving remainders
x'_j = x_j - tilde(x)_j * r.  The block key is

    (sign(x); tilde(x)_0, ..., tilde(x)_{d-1}; sum_j (x'_j)^2).

Inside one block, a relation a*x + b*y = (a+b)*z with positive a, b forces
a*x' + b*y' = (a+b)*z' digitwise (the coarse digits agree and the remainders
are too small to carry), and equal Euclidean norms then force x' = y' by the
triangle-inequality equality case, hence x = y = z: the relation is trivial.
Sphere level sets carry no nontrivial 3-term ell-relations, which is the
whole trick.

Zero counts as non-negative; its digit vector is all-zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .intset import IntSet


def default_q(universe_bound: int) -> int:
    """ceil(exp((log U)^(2/3))); at least 2."""
    u = max(universe_bound, 3)
    return max(2, int(math.ceil(math.exp(math.log(u) ** (2 / 3)))))


@dataclass(frozen=True)
class BehrendPartition:
    blocks: tuple  # tuple of IntSet
    index_of: dict  # element -> (sign, digit tuple, squared norm)
    q: int
    ell_prime: int
    r: int
    digits: int

    def block_count_bound(self) -> int:
        # Sign split doubles the (coarse-digit, norm-level) key space.
        return 2 * self.ell_prime**self.digits * max(1, self.digits) * self.r**2

    def block_of(self, x: int) -> int:
        key = self.index_of[x]
        return self._key_to_block[key]

    def __post_init__(self):
        object.__setattr__(self, "_key_to_block", {})
        for i, blk in enumerate(self.blocks):
            for e in blk.elements:
                self._key_to_block[self.index_of[e]] = i


def behrend_keys(xs: np.ndarray, universe_bound: int, ell: int, q=None):
    """Vectorized group keys; returns (keys list, (q, ell', r, d))."""
    if q is None:
        q = default_q(universe_bound)
    ell_prime = 2 * ell + 1
    r = max(1, math.ceil(q / ell_prime))
    d = max(1, math.ceil(math.log(universe_bound + 1, q))) if universe_bound >= 1 else 1
    # Digit count must cover U: guard against float log edge cases.
    while q**d <= universe_bound:
        d += 1
    xs = np.asarray(xs, dtype=np.int64)
    signs = xs < 0
    mags = np.abs(xs)
    coarse = np.empty((d, xs.size), dtype=np.int64)
    norm = np.zeros(xs.size, dtype=np.int64)
    rest = mags.copy()
    for j in range(d):
        digit = rest % q
        rest //= q
        c = digit // r
        rem = digit - c * r
        coarse[j] = c
        norm += rem * rem
    keys = [
        (bool(signs[i]), tuple(int(coarse[j, i]) for j in range(d)), int(norm[i]))
        for i in range(xs.size)
    ]
    return keys, (q, ell_prime, r, d)


def behrend_partition(a: IntSet, ell: int, q=None) -> BehrendPartition:
    """Split A into blocks, each free of nontrivial 3-term ell-relations."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    u = a.universe_bound
    if len(a) == 0:
        qv = q if q is not None else default_q(u)
        ell_prime = 2 * ell + 1
        return BehrendPartition((), {}, qv, ell_prime, max(1, math.ceil(qv / ell_prime)), 1)
    xs = a.to_array()
    keys, (qv, ell_prime, r, d) = behrend_keys(xs, u, ell, q)
    groups: dict = {}
    for x, key in zip(xs, keys):
        groups.setdefault(key, []).append(int(x))
    index_of = dict(zip((int(x) for x in xs), keys))
    blocks = tuple(
        IntSet(tuple(v), u) for _, v in sorted(groups.items(), key=lambda kv: kv[1][0])
    )
    return BehrendPartition(blocks, index_of, qv, ell_prime, r, d)
