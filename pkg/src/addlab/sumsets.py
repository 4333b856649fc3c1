"""Sumset computation: naive oracle, output-sensitive Las Vegas, doubling.

``sumset_naive`` is the ground truth (full pairwise table).  ``sumset``
computes the same set output-sensitively: hash both sets modulo a random
prime p = Theta(T log U) for a doubling guess T, convolve the residue
indicator vectors densely over Z_p, read candidate sums out of collision-free
buckets, verify every candidate by exhibiting a witness pair, and double T
when completeness checks fail.

Candidate recovery: alongside the pair-count convolution h we convolve
value-weighted vectors so that W(i) = sum of (a+b) over pairs landing in
bucket i.  If bucket i holds a single distinct sum s, then s = W(i)/h(i).
Buckets holding several sums usually fail the divisibility/range/congruence
screen; when they do not, the witness check rejects the bogus candidate
(or proves it is a genuine sum after all, which is just as good).  Returned
sums are therefore always correct; completeness is established by support
checks against fresh primes, with a naive fallback bounding the worst case.

All convolutions are float64 FFTs applied to vectors whose 2-norm product is
small enough that rounding to the nearest integer is exact: counts convolve
directly, value-weighted vectors are split into 16-bit limbs first.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import EmptySetError, OverflowRiskError
from .intset import IntSet
from .primes import sample_prime
from .rng import rng_from

#: Below this pair count the naive path is used outright.
_NAIVE_CUTOFF_PAIRS = 4096
#: Primes above this: direct counting pass over residues (no FFT).
_FFT_PRIME_CAP = 2**26


def _check_bounds(a: IntSet, b: IntSet) -> None:
    if a.universe_bound + b.universe_bound > 2**62:
        raise OverflowRiskError("pair sums may exceed 62 bits")


def sumset_naive(a: IntSet, b: IntSet) -> IntSet:
    """Exact A+B via the full pairwise table; the oracle for ``sumset``."""
    _check_bounds(a, b)
    if len(a) == 0 or len(b) == 0:
        return IntSet((), a.universe_bound + b.universe_bound)
    sums = np.unique(np.add.outer(a.to_array(), b.to_array()))
    return IntSet(tuple(int(x) for x in sums), a.universe_bound + b.universe_bound)


def doubling_constant(a: IntSet) -> Fraction:
    """|A+A| / |A| as an exact rational."""
    if len(a) == 0:
        raise EmptySetError("doubling constant of the empty set")
    return Fraction(len(sumset_naive(a, a)), len(a))


def _cyclic_conv_counts(fa: np.ndarray, fb: np.ndarray, p: int) -> np.ndarray:
    """Exact cyclic convolution of small nonnegative integer vectors."""
    size = 1 << int(2 * p - 1).bit_length()
    ha = np.fft.rfft(fa, size)
    hb = np.fft.rfft(fb, size)
    full = np.fft.irfft(ha * hb, size)[: 2 * p - 1]
    out = np.rint(full[:p]).astype(np.int64)
    out[: p - 1] += np.rint(full[p:]).astype(np.int64)
    return out


def _weighted_conv(fa_w: np.ndarray, fb: np.ndarray, p: int) -> np.ndarray:
    """Cyclic conv of a value-weighted vector with a count vector, exactly.

    fa_w entries can be as large as |A| * 4U; 16-bit limb splitting keeps
    every individual FFT in the exactly-roundable regime.
    """
    out = np.zeros(p, dtype=np.int64)
    shift = 0
    rest = fa_w.copy()
    while rest.any():
        limb = rest & 0xFFFF
        out += _cyclic_conv_counts(limb.astype(np.float64), fb, p) << shift
        rest >>= 16
        shift += 16
    return out


def _round_candidates(av, bv, p, rng):
    """One hashing round: returns verified sums found via pure buckets."""
    fa = np.bincount(av % p, minlength=p).astype(np.float64)
    fb = np.bincount(bv % p, minlength=p).astype(np.float64)
    h = _cyclic_conv_counts(fa, fb, p)
    fa_w = np.zeros(p, dtype=np.int64)
    np.add.at(fa_w, av % p, av)
    fb_w = np.zeros(p, dtype=np.int64)
    np.add.at(fb_w, bv % p, bv)
    w = _weighted_conv(fa_w, fb, p) + _weighted_conv(fb_w, fa, p)

    occ = np.nonzero(h)[0]
    hv = h[occ]
    wv = w[occ]
    good = wv % hv == 0
    cand = np.where(good, wv // np.maximum(hv, 1), -1)
    top = int(av.max()) + int(bv.max())
    good &= (cand >= 0) & (cand <= top) & (cand % p == occ)
    cand = cand[good]

    if cand.size == 0:
        return cand
    # Witness check: s is genuine iff some a in A has s - a in B.  Chunked
    # membership scan; sound regardless of bucket purity.
    bs = np.sort(bv)
    keep = np.zeros(cand.size, dtype=bool)
    chunk = max(1, (1 << 22) // max(1, av.size))
    for lo in range(0, cand.size, chunk):
        c = cand[lo : lo + chunk]
        need = c[:, None] - av[None, :]
        pos = np.searchsorted(bs, need)
        pos = np.minimum(pos, bs.size - 1)
        keep[lo : lo + chunk] = (bs[pos] == need).any(axis=1)
    return cand[keep]


def _support_matches(av, bv, found_shifted, q):
    fa = np.bincount(av % q, minlength=q).astype(np.float64)
    fb = np.bincount(bv % q, minlength=q).astype(np.float64)
    h = _cyclic_conv_counts(fa, fb, q)
    sup = np.zeros(q, dtype=bool)
    sup[np.nonzero(h)[0]] = True
    claimed = np.zeros(q, dtype=bool)
    claimed[found_shifted % q] = True
    return bool(np.array_equal(sup, claimed))


def sumset(a: IntSet, b: IntSet, seed=None) -> IntSet:
    """Output-sensitive A+B; identical output to ``sumset_naive``."""
    _check_bounds(a, b)
    na, nb = len(a), len(b)
    if na == 0 or nb == 0 or na * nb <= _NAIVE_CUTOFF_PAIRS:
        return sumset_naive(a, b)
    rng = rng_from(seed)
    u = max(a.universe_bound, b.universe_bound, 1)
    if (na + nb) * 4 * u > 2**62:
        return sumset_naive(a, b)  # weighted accumulators would overflow
    av = a.to_array() + a.universe_bound  # shift to nonnegative
    bv = b.to_array() + b.universe_bound
    logu = max(1, int(np.ceil(np.log(2 * u + 1))))

    t = 2 * (na + nb)
    found: set = set()
    stale_rounds = 0
    for _ in range(24):
        lo = 8 * t * logu
        if lo >= min(_FFT_PRIME_CAP, 8 * na * nb * logu):
            break  # dense regime: the direct pass below settles it
        p = sample_prime(lo, 2 * lo, rng)
        new = _round_candidates(av, bv, p, rng)
        before = len(found)
        found.update(int(x) for x in new)
        if len(found) == before:
            stale_rounds += 1
        else:
            stale_rounds = 0
        if found:
            arr = np.fromiter(found, dtype=np.int64, count=len(found))
            checks_ok = all(
                _support_matches(av, bv, arr, sample_prime(32 * t * logu, 64 * t * logu, rng))
                for _ in range(4)
            )
            if checks_ok:
                shift = a.universe_bound + b.universe_bound
                vals = np.sort(arr) - shift
                return IntSet(tuple(int(x) for x in vals), shift)
        if stale_rounds >= 2:
            t *= 2
            stale_rounds = 0
    # Direct counting pass over residues of the full pair set; exact.
    return sumset_naive(a, b)
