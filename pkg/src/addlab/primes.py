"""Random primes via rejection sampling with Miller-Rabin, plus a sieve.

The rejection sampler draws uniform integers from a range and keeps the first
probable prime, so the result is uniform over the primes of the range.  The
sieve path exists for bulk experiments (millions of samples) where per-sample
Miller-Rabin would dominate; it produces the identical distribution.
"""

from __future__ import annotations

import numpy as np

from .rng import rng_from

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_probable_prime(n: int, rounds: int = 40, rng=None) -> bool:
    """Miller-Rabin with ``rounds`` random bases (deterministic given rng)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = rng_from(rng)
    for _ in range(rounds):
        a = int(rng.integers(2, n - 1))
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sample_prime(lo: int, hi: int, rng=None, mr_rounds: int = 40) -> int:
    """Uniform random prime in [lo, hi] by rejection; raises if none exists."""
    if hi < lo:
        raise ValueError(f"empty range [{lo}, {hi}]")
    rng = rng_from(rng)
    # Expected ~ln(hi) rejections; the hard cap only trips on prime-free
    # ranges, which we then detect exhaustively.
    for _ in range(512 * max(1, hi.bit_length())):
        c = int(rng.integers(lo, hi + 1))
        if is_probable_prime(c, rounds=mr_rounds, rng=rng):
            return c
    for c in range(lo, hi + 1):
        if is_probable_prime(c, rounds=mr_rounds, rng=rng):
            return c
    raise ValueError(f"no prime in [{lo}, {hi}]")


def primes_in_range(lo: int, hi: int) -> np.ndarray:
    """All primes in [lo, hi] by a numpy sieve (hi must be desk-scale)."""
    if hi < 2 or hi < lo:
        return np.empty(0, dtype=np.int64)
    if hi > 2**28:
        raise ValueError("sieve range too large; use sample_prime")
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(hi**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    ps = np.nonzero(sieve)[0]
    return ps[ps >= lo].astype(np.int64)
