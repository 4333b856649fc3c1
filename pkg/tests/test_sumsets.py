from fractions import Fraction

import numpy as np
import pytest

from addlab.errors import EmptySetError
from addlab.intset import IntSet
from addlab.sumsets import doubling_constant, sumset, sumset_naive


def S(xs, u=None):
    return IntSet.from_iterable(xs, u)


class TestNaive:
    def test_identity_shift(self):
        b = S([3, 7, 9])
        assert sumset_naive(S([0]), b).elements == (3, 7, 9)

    def test_small(self):
        assert sumset_naive(S([0, 1]), S([0, 2])).elements == (0, 1, 2, 3)
        assert sumset_naive(S([0, 1, 2]), S([0, 1, 2])).elements == (0, 1, 2, 3, 4)

    def test_empty(self):
        assert len(sumset_naive(S([]), S([1, 2]))) == 0

    def test_bounds(self):
        rng = np.random.default_rng(0)
        for _ in range(40):
            a = S(rng.choice(1000, size=rng.integers(1, 30), replace=False).tolist())
            b = S(rng.choice(1000, size=rng.integers(1, 30), replace=False).tolist())
            s = sumset_naive(a, b)
            assert len(s) >= len(a) + len(b) - 1
            aa = sumset_naive(a, a)
            assert len(aa) <= len(a) * (len(a) + 1) // 2


class TestOutputSensitive:
    def test_identity(self):
        b = S([5, 6, 100])
        assert sumset(S([0]), b, seed=1).elements == (5, 6, 100)

    def test_exhaustive_small(self):
        rng = np.random.default_rng(2)
        for trial in range(60):
            a = S((rng.choice(200, size=rng.integers(1, 64), replace=False) - 100).tolist())
            b = S((rng.choice(200, size=rng.integers(1, 64), replace=False) - 100).tolist())
            assert sumset(a, b, seed=trial).elements == sumset_naive(a, b).elements

    def test_random_256(self):
        rng = np.random.default_rng(5)
        a = S(rng.choice(10**6, size=256, replace=False).tolist())
        b = S(rng.choice(10**6, size=256, replace=False).tolist())
        assert sumset(a, b, seed=9).elements == sumset_naive(a, b).elements

    def test_ap_structured(self):
        ap = S(list(range(0, 5 * 512, 5)))
        out = sumset(ap, ap, seed=3)
        assert len(out) == 1023
        assert out.elements == sumset_naive(ap, ap).elements

    def test_structured_plus_random(self):
        rng = np.random.default_rng(11)
        a = S((rng.integers(0, 50, size=300) * 7).tolist())
        b = S((rng.integers(0, 50, size=300) * 7 + 1).tolist())
        assert sumset(a, b, seed=4).elements == sumset_naive(a, b).elements

    def test_negative_values(self):
        rng = np.random.default_rng(13)
        a = S((rng.choice(4000, size=200, replace=False) - 2000).tolist())
        b = S((rng.choice(4000, size=200, replace=False) - 2000).tolist())
        assert sumset(a, b, seed=7).elements == sumset_naive(a, b).elements


class TestDoubling:
    def test_singleton(self):
        assert doubling_constant(S([7])) == Fraction(1, 1)

    def test_interval(self):
        assert doubling_constant(S(list(range(100)))) == Fraction(199, 100)

    def test_sidon(self):
        # Sidon set: all pairwise sums distinct, |A+A| = n(n+1)/2.
        sidon = S([0, 1, 3, 7, 12, 20])
        n = 6
        assert doubling_constant(sidon) == Fraction(n * (n + 1) // 2, n)

    def test_empty_error(self):
        with pytest.raises(EmptySetError):
            doubling_constant(S([]))


class TestRuzsa:
    def test_triangle_inequality(self):
        rng = np.random.default_rng(21)
        for _ in range(60):
            a = S(rng.choice(500, size=rng.integers(1, 40), replace=False).tolist())
            b = S(rng.choice(500, size=rng.integers(1, 40), replace=False).tolist())
            c = S(rng.choice(500, size=rng.integers(1, 40), replace=False).tolist())
            lhs = len(sumset_naive(a, b)) * len(c)
            rhs = len(sumset_naive(a, c)) * len(sumset_naive(b, c))
            assert lhs <= rhs
