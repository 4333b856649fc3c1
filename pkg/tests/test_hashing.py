import math

import numpy as np
import pytest

from addlab.errors import DepthTooLargeError, OutOfUniverseError
from addlab.hashing import (
    BaseHash,
    ComposedHash,
    default_ell,
    delta_set,
    hash_eval,
    pair_collision_rate,
    sample_base_hash,
    sample_composed_hash,
    triple_collision_rate,
)
from addlab.intset import IntSet, find_relations
from addlab.primes import is_probable_prime


class TestBaseHash:
    def test_forced_example(self):
        h = BaseHash(p=11, r=3, ell=2, universe_bound=3)
        # (r*x mod p) * ell // p, mod always into {0..p-1}
        assert h(1) == (3 % 11) * 2 // 11 == 0
        assert h(2) == (6 % 11) * 2 // 11 == 1
        assert h(-3) == ((-9) % 11) * 2 // 11 == 0
        s = h(1) + h(2) + h(-3)
        ell = 2
        assert s in {0, ell, ell - 1, ell - 2, 2 * ell, 2 * ell - 1, 2 * ell - 2}

    def test_zero_maps_to_zero(self):
        for seed in range(5):
            h = sample_base_hash(100, 7, seed=seed)
            assert h(0) == 0

    def test_determinism(self):
        a = sample_base_hash(2**16, 8, seed=42)
        b = sample_base_hash(2**16, 8, seed=42)
        assert (a.p, a.r) == (b.p, b.r)

    def test_sampled_primes_valid(self):
        u = 2**16
        for seed in range(200):
            h = sample_base_hash(u, 4, seed=seed)
            assert 2 * u <= h.p <= 4 * u
            assert is_probable_prime(h.p, rounds=20, rng=0)
            assert 1 <= h.r < h.p

    def test_out_of_universe(self):
        h = sample_base_hash(50, 4, seed=0)
        with pytest.raises(OutOfUniverseError):
            h(51)

    def test_array_matches_scalar(self):
        h = sample_base_hash(10**6, 16, seed=3)
        xs = np.array([-10**6, -17, 0, 5, 999999], dtype=np.int64)
        assert h.eval_array(xs).tolist() == [h(int(x)) for x in xs]


class TestComposedHash:
    def test_single_layer_offset(self):
        h = sample_composed_hash(1000, m=7, ell=7, seed=1)
        assert h.depth == 1
        for x in (-5, 0, 3):
            assert h(x) == 1 + h.layers[0](x)

    def test_depth_rule(self):
        h = sample_composed_hash(10**6, m=168, ell=13, seed=2)
        assert h.depth == 1  # 13^2 = 169 > 168
        h2 = sample_composed_hash(10**6, m=169, ell=13, seed=2)
        assert h2.depth == 2
        assert all(1 <= h2(x) <= 169 for x in range(-50, 50))

    def test_depth_zero(self):
        h = sample_composed_hash(1000, m=3, ell=10, seed=0)
        assert h.depth == 0
        assert h(17) == 1
        assert delta_set(h).offsets == (3,)

    def test_range(self):
        h = sample_composed_hash(5000, m=64, ell=4, seed=5)
        xs = np.arange(-5000, 5001)
        hv = h.eval_array(xs)
        assert hv.min() >= 1 and hv.max() <= 64


class TestDeltaSet:
    def test_ell5_d1(self):
        h = sample_composed_hash(10**4, m=5, ell=5, seed=0)
        assert h.depth == 1
        assert delta_set(h).offsets == (3, 6, 7, 8, 11, 12, 13)

    def test_ell2_d2_exhaustive(self):
        u = 64
        h = sample_composed_hash(u, m=4, ell=2, seed=7)
        assert h.depth == 2
        d = delta_set(h)
        assert len(d) <= 49
        for x in range(-u, u + 1):
            for y in range(-u, u + 1):
                z = -x - y
                if abs(z) <= u:
                    assert h(x) + h(y) + h(z) in d

    def test_depth_cap(self):
        layers = tuple(sample_base_hash(100, 2, seed=s) for s in range(8))
        h = ComposedHash(layers, 2**8)
        with pytest.raises(DepthTooLargeError):
            delta_set(h, cap=7**7)

    def test_almost_linearity_random(self):
        u = 2**20
        rng = np.random.default_rng(3)
        for d_target, m in ((1, 12), (2, 200), (3, 2500)):
            h = sample_composed_hash(u, m=m, ell=12, seed=int(rng.integers(1 << 30)))
            assert h.depth == d_target
            d = delta_set(h)
            xs = rng.integers(-(u // 2), u // 2, size=2000)
            ys = rng.integers(-(u // 2), u // 2, size=2000)
            zs = -xs - ys
            hv = h.eval_array(xs) + h.eval_array(ys) + h.eval_array(zs)
            assert np.isin(hv, d.to_array()).all()


class TestUniversality:
    def test_pair_collision_rate(self):
        u, ell = 2**16, 16
        rate = pair_collision_rate(u, ell, x=12345, y=-999, n_samples=20000, seed=1)
        sigma = math.sqrt((2 / ell) * (1 - 2 / ell) / 20000)
        assert rate <= 2 / ell + 3 * sigma

    def test_triple_collision_rate(self):
        u, ell = 2**16, 16
        x, y, z = 3, 12347, 54001  # no small-coefficient relation
        assert find_relations(IntSet.from_iterable([x, y, z]), 3, ell, "nontrivial") == []
        rate = triple_collision_rate(u, ell, x, y, z, n_samples=20000, seed=2)
        assert rate <= 64 * math.log(u) / ell**2

    def test_default_ell(self):
        assert default_ell(2**20) == math.ceil(math.exp(math.log(2**20) ** (1 / 3)))
