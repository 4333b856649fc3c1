"""Almost-linear, almost-3-universal hashing.

The base function is h(x) = floor(((r*x mod p) / p) * ell) for a random prime
p in [2U, 4U] and random r in [1, p-1]; ``a mod p`` is always reduced into
{0, ..., p-1} regardless of sign.  Composition stacks d independent base
functions, H(x) = 1 + sum_i h_i(x) * ell^i with d maximal such that
ell^d <= m, mapping into [1, m].

For any zero-sum triple, h(x)+h(y)+h(z) lies in {0, ell, ell-1, ell-2, 2ell,
2ell-1, 2ell-2}; composing, H(x)+H(y)+H(z) lies in the offset set Delta of
size at most 7^d.  That exact almost-linearity, plus pair-collision rate at
most 2/ell and triple-collision rate O(log U / ell^2) for triples free of
3-term ell-relations, is what the 3SUM self-reduction consumes.

The floor is evaluated as ((r*x mod p) * ell) // p in unbounded Python
integers (numpy int64 on the vectorized path, with guarded magnitudes), so
results are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DepthTooLargeError, OutOfUniverseError
from .primes import primes_in_range, sample_prime
from .rng import rng_from

#: Hard cap on |Delta| enumeration (7^d).
DELTA_ENUM_CAP = 10**6

#: Per-layer sums h(x)+h(y)+h(z) for zero-sum triples.
_LAYER_OFFSETS = lambda ell: (0, ell, ell - 1, ell - 2, 2 * ell, 2 * ell - 1, 2 * ell - 2)


def default_ell(universe_bound: int) -> int:
    """ceil(exp((log U)^(1/3))), the asymptotic layer width."""
    u = max(universe_bound, 3)
    return int(math.ceil(math.exp(math.log(u) ** (1 / 3))))


@dataclass(frozen=True)
class BaseHash:
    p: int
    r: int
    ell: int
    universe_bound: int

    def __post_init__(self):
        u = self.universe_bound
        if not (2 * u <= self.p <= 4 * u):
            raise ValueError(f"prime {self.p} outside [2U, 4U] for U={u}")
        if not (1 <= self.r <= self.p - 1):
            raise ValueError("multiplier outside [1, p-1]")
        if self.ell < 2:
            raise ValueError("range size ell must be >= 2")

    def __call__(self, x: int) -> int:
        if abs(x) > self.universe_bound:
            raise OutOfUniverseError(f"|{x}| > {self.universe_bound}")
        return ((self.r * x) % self.p) * self.ell // self.p

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        if xs.size and int(np.abs(xs).max()) > self.universe_bound:
            raise OutOfUniverseError("value outside universe")
        if self.r * self.universe_bound <= 2**62 and self.p * self.ell <= 2**62:
            rx = (self.r * xs) % self.p
            return (rx * self.ell) // self.p
        return np.array([self(int(x)) for x in xs], dtype=np.int64)


@dataclass(frozen=True)
class ComposedHash:
    """H(x) = 1 + sum h_i(x) * ell^i into [1, m]; d = max{d : ell^d <= m}."""

    layers: tuple
    m: int

    def __post_init__(self):
        if self.layers:
            ell = self.layers[0].ell
            u = self.layers[0].universe_bound
            for h in self.layers:
                if h.ell != ell or h.universe_bound != u:
                    raise ValueError("layers must share ell and U")
            if ell ** len(self.layers) > self.m:
                raise ValueError("ell^d exceeds m")

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def ell(self) -> int:
        return self.layers[0].ell if self.layers else 0

    @property
    def universe_bound(self) -> int:
        return self.layers[0].universe_bound if self.layers else 0

    def __call__(self, x: int) -> int:
        v, scale = 1, 1
        for h in self.layers:
            v += h(x) * scale
            scale *= h.ell
        return v

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        v = np.ones(xs.shape, dtype=np.int64)
        scale = 1
        for h in self.layers:
            v += h.eval_array(xs) * scale
            scale *= h.ell
        return v


@dataclass(frozen=True)
class DeltaSet:
    """Sorted offsets delta with H(x)+H(y)+H(-x-y) in offsets, always."""

    offsets: tuple

    def __contains__(self, v) -> bool:
        i = np.searchsorted(np.asarray(self.offsets), v)
        return i < len(self.offsets) and self.offsets[i] == v

    def __len__(self) -> int:
        return len(self.offsets)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.offsets, dtype=np.int64)


def sample_base_hash(universe_bound: int, ell: int, seed=None,
                     mr_rounds: int = 40) -> BaseHash:
    """p uniform over primes in [2U, 4U] (Miller-Rabin rejection), r uniform."""
    if universe_bound < 1:
        raise ValueError("universe bound must be >= 1")
    if ell < 2:
        raise ValueError("ell must be >= 2")
    rng = rng_from(seed)
    p = sample_prime(2 * universe_bound, 4 * universe_bound, rng, mr_rounds)
    r = int(rng.integers(1, p))
    return BaseHash(p, r, ell, universe_bound)


def sample_composed_hash(universe_bound: int, m: int, ell=None, seed=None) -> ComposedHash:
    if ell is None:
        ell = default_ell(universe_bound)
    rng = rng_from(seed)
    d = 0
    while ell ** (d + 1) <= m:
        d += 1
    layers = tuple(sample_base_hash(universe_bound, ell, rng) for _ in range(d))
    return ComposedHash(layers, m)


def hash_eval(h, x: int) -> int:
    """Evaluate a BaseHash or ComposedHash at one point."""
    return h(x)


def delta_set(h: ComposedHash, cap: int = DELTA_ENUM_CAP) -> DeltaSet:
    """Exact offset set by enumerating the 7 per-layer sums across d layers."""
    d = h.depth
    if 7**d > cap:
        raise DepthTooLargeError(f"7^{d} exceeds cap {cap}")
    if d == 0:
        return DeltaSet((3,))
    ell = h.ell
    offs = {0}
    scale = 1
    for _ in range(d):
        offs = {o + c * scale for o in offs for c in _LAYER_OFFSETS(ell)}
        scale *= ell
    return DeltaSet(tuple(sorted(3 + o for o in offs)))


def base_hash_family_sample(universe_bound: int, n_samples: int, seed=None):
    """Bulk (p, r) samples: uniform primes in [2U, 4U] via a sieve.

    Same distribution as ``sample_base_hash`` (uniform prime x uniform r),
    but fast enough for million-sample universality experiments.
    """
    rng = rng_from(seed)
    ps = primes_in_range(2 * universe_bound, 4 * universe_bound)
    if ps.size == 0:
        raise ValueError("no prime in [2U, 4U]")
    p = ps[rng.integers(0, ps.size, size=n_samples)]
    r = (rng.random(n_samples) * (p - 1)).astype(np.int64) + 1
    return p, r


def base_hash_eval_bulk(p: np.ndarray, r: np.ndarray, ell: int, x: int) -> np.ndarray:
    """h(x) under many (p, r) pairs at once; exact in int64 for |x|*p < 2^62."""
    rx = (r * x) % p
    return (rx * ell) // p


def pair_collision_rate(universe_bound: int, ell: int, x: int, y: int,
                        n_samples: int, seed=None) -> float:
    """Empirical Pr[h(x) = h(y)] over random (p, r); Lemma bound is 2/ell."""
    p, r = base_hash_family_sample(universe_bound, n_samples, seed)
    hx = base_hash_eval_bulk(p, r, ell, x)
    hy = base_hash_eval_bulk(p, r, ell, y)
    return float(np.mean(hx == hy))


def triple_collision_rate(universe_bound: int, ell: int, x: int, y: int, z: int,
                          n_samples: int, seed=None) -> float:
    """Empirical Pr[h(x) = h(y) = h(z)] over random (p, r)."""
    p, r = base_hash_family_sample(universe_bound, n_samples, seed)
    hx = base_hash_eval_bulk(p, r, ell, x)
    hy = base_hash_eval_bulk(p, r, ell, y)
    hz = base_hash_eval_bulk(p, r, ell, z)
    return float(np.mean((hx == hy) & (hy == hz)))
