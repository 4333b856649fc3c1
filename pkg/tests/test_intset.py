import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addlab.errors import OverflowRiskError
from addlab.intset import (
    IntSet,
    RelationWitness,
    additive_energy,
    find_relations,
    find_sidon_violation,
    is_sidon,
    read_set_file,
    representation_counts,
    solve_3sum_naive,
    write_set_file,
)


def S(*xs, u=None):
    return IntSet.from_iterable(xs, u)


def brute_energy(xs):
    xs = list(xs)
    return sum(
        1
        for a, b, c, d in itertools.product(xs, repeat=4)
        if a + b == c + d
    )


class TestEnergy:
    def test_empty(self):
        rep = representation_counts(S())
        assert rep.energy == 0 and rep.is_sidon

    def test_sidon_example(self):
        rep = representation_counts(S(0, 1, 3))
        assert rep.representation_counts == {0: 1, 1: 2, 2: 1, 3: 2, 4: 2, 6: 1}
        assert rep.energy == 15 == 2 * 9 - 3
        assert rep.is_sidon

    def test_ap_example(self):
        rep = representation_counts(S(0, 1, 2))
        assert rep.representation_counts == {0: 1, 1: 2, 2: 3, 3: 2, 4: 1}
        assert rep.energy == 19 == brute_energy([0, 1, 2])
        assert not rep.is_sidon

    def test_identities_random(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            xs = rng.choice(200, size=rng.integers(1, 12), replace=False) - 100
            a = IntSet.from_iterable(xs.tolist())
            rep = representation_counts(a)
            n = len(a)
            assert sum(rep.representation_counts.values()) == n * n
            assert rep.energy == brute_energy(a.elements)
            assert 2 * n * n - n <= rep.energy <= n**3
            assert rep.energy == additive_energy(a)

    @given(st.sets(st.integers(-40, 40), max_size=10))
    @settings(max_examples=60, deadline=None)
    def test_energy_bounds_prop(self, xs):
        a = IntSet.from_iterable(xs)
        n = len(a)
        e = additive_energy(a)
        assert 2 * n * n - n <= e <= n**3

    def test_overflow_guard(self):
        with pytest.raises(OverflowRiskError):
            IntSet((1,), 2**61)  # universe bound beyond the 62-bit budget
        big = IntSet((2**60,), 2**60)
        with pytest.raises(OverflowRiskError):
            find_relations(big, 3, 100, "all")  # 3 * 100 * 2^60 > 2^62


class TestSidonViolation:
    def test_sidon_absent(self):
        assert find_sidon_violation(S(0, 1, 3, 7)) is None

    def test_ap_witness(self):
        w = find_sidon_violation(S(0, 1, 2, 3))
        assert w is not None
        a, b, c, d = w.elements
        assert a + b == c + d and {a, b} != {c, d}
        # 0+2 = 1+1 beats 0+3 = 1+2 lexicographically (2a = b+c counts).
        assert w.elements == (0, 2, 1, 1)

    def test_smallest_witness_all_distinct(self):
        # 0+4 = 1+3 is the only violation here (no 2a = b+c collisions).
        w = find_sidon_violation(S(0, 1, 3, 4))
        assert w.elements == (0, 4, 1, 3)

    def test_singleton(self):
        assert find_sidon_violation(S(5)) is None

    def test_double_counts(self):
        # 2a = b + c counts as a violation.
        w = find_sidon_violation(S(0, 2, 4))
        assert w is not None
        assert w.elements == (0, 4, 2, 2)

    def test_consistency_with_energy(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            n = int(rng.integers(1, 20))
            xs = rng.choice(120, size=min(n, 30), replace=False)
            a = IntSet.from_iterable(xs.tolist())
            assert (find_sidon_violation(a) is None) == is_sidon(a)


def brute_relations(xs, k, ell, mode):
    """Reference search: literal loops over A^k and all coefficient tuples."""
    found = set()
    for coeffs in itertools.product(range(-ell, ell + 1), repeat=k):
        if sum(coeffs) != 0 or not any(coeffs):
            continue
        for elems in itertools.product(xs, repeat=k):
            if sum(c * e for c, e in zip(coeffs, elems)) != 0:
                continue
            w = RelationWitness(coeffs, elems, f"{k}-term")
            if mode == "nontrivial" and not w.is_nontrivial():
                continue
            if mode == "distinct" and len(set(elems)) != k:
                continue
            # Zero slots are wildcards: erase them for comparison.
            sig = tuple(sorted((e, c) for e, c in zip(elems, coeffs) if c != 0))
            found.add(sig)
    return found


class TestRelations:
    def test_paper_3term_4relation(self):
        rels = find_relations(S(101, 103, 109), 3, 4, "nontrivial")
        sigs = {w.signature() for w in rels}
        assert ((101, 3), (103, -4), (109, 1)) in sigs
        for w in rels:
            w.validate(4)
            assert w.is_nontrivial()

    def test_paper_no_3term_3relation(self):
        assert find_relations(S(101, 103, 109), 3, 3, "nontrivial") == []

    def test_ap_relation(self):
        rels = find_relations(S(0, 1, 2), 3, 2, "nontrivial")
        sigs = {w.signature() for w in rels}
        assert ((0, 1), (1, -2), (2, 1)) in sigs

    @pytest.mark.parametrize("k,ell,mode", [
        (3, 2, "nontrivial"), (3, 3, "all"), (4, 1, "nontrivial"),
        (4, 2, "distinct"), (4, 2, "nontrivial"),
    ])
    def test_matches_bruteforce(self, k, ell, mode):
        rng = np.random.default_rng(k * 100 + ell * 10)
        for _ in range(8):
            xs = sorted(rng.choice(30, size=5, replace=False).tolist())
            got = find_relations(IntSet.from_iterable(xs), k, ell, mode)
            got_sigs = {
                tuple(sorted((e, c) for e, c in zip(w.elements, w.coefficients) if c != 0))
                for w in got
            }
            assert got_sigs == brute_relations(xs, k, ell, mode)

    def test_4term_1relation_iff_sidon(self):
        rng = np.random.default_rng(11)
        for _ in range(60):
            n = int(rng.integers(1, 14))
            xs = rng.choice(100, size=n, replace=False)
            a = IntSet.from_iterable(xs.tolist())
            empty = find_relations(a, 4, 1, "nontrivial") == []
            assert empty == (find_sidon_violation(a) is None)

    def test_solution_count_bounded_by_energy(self):
        # Fixed nonzero coefficient vectors never beat the additive energy.
        rng = np.random.default_rng(5)
        for _ in range(10):
            xs = rng.choice(60, size=8, replace=False).tolist()
            e = brute_energy(xs)
            for coeffs in itertools.product((-3, -2, -1, 1, 2, 3), repeat=4):
                cnt = sum(
                    1
                    for elems in itertools.product(xs, repeat=4)
                    if sum(c * x for c, x in zip(coeffs, elems)) == 0
                )
                assert cnt <= e

    def test_cost_counter(self):
        rels = find_relations(S(1, 2, 3, 4), 4, 2, "nontrivial")
        assert rels.cost > 0


class TestNaive3Sum:
    def test_zero_singleton(self):
        w = solve_3sum_naive(S(0))
        assert w is not None and w.elements == (0, 0, 0)

    def test_absent(self):
        assert solve_3sum_naive(S(1, 2, 3)) is None

    def test_positive(self):
        w = solve_3sum_naive(S(-3, 1, 2))
        assert w is not None
        assert sum(w.elements) == 0
        assert w.elements == (-3, 1, 2)

    def test_tripartite(self):
        w = solve_3sum_naive(S(0), S(5), S(-5))
        assert w is not None and w.elements == (0, 5, -5)
        assert solve_3sum_naive(S(1, 2), S(10), S(100)) is None

    def test_exhaustive_small(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            xs = rng.integers(-8, 9, size=rng.integers(0, 6))
            a = IntSet.from_iterable(xs.tolist())
            expected = any(
                x + y + z == 0
                for x, y, z in itertools.product(a.elements, repeat=3)
            )
            got = solve_3sum_naive(a)
            assert (got is not None) == expected
            if got:
                assert sum(got.elements) == 0
                assert all(e in a for e in got.elements)


class TestIntSetType:
    def test_invariants(self):
        with pytest.raises(ValueError):
            IntSet((3, 1), 5)
        with pytest.raises(ValueError):
            IntSet((1, 1), 5)
        with pytest.raises(ValueError):
            IntSet((9,), 5)

    def test_from_iterable_dedups(self):
        a = IntSet.from_iterable([5, -2, 5, 0])
        assert a.elements == (-2, 0, 5)
        assert a.universe_bound == 5

    def test_file_roundtrip(self, tmp_path):
        a = IntSet.from_iterable([3, -7, 11])
        p = tmp_path / "s.txt"
        write_set_file(p, a)
        b = read_set_file(p)
        assert b.elements == a.elements and b.universe_bound == 11

    def test_file_comments(self, tmp_path):
        p = tmp_path / "s.txt"
        p.write_text("# header\n1\n\n-4\n# x\n9\n")
        assert read_set_file(p).elements == (-4, 1, 9)
