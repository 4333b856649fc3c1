import itertools

import numpy as np
import pytest

from addlab.cycles import (
    Enumerator,
    Graph,
    cycle_stats,
    degeneracy_order,
    enumerate_4cycles,
    enumerate_4cycles_dense,
    enumerate_4cycles_sparse,
    four_cycles_bruteforce,
)
from addlab.errors import HybridDensityError


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, list(itertools.combinations(range(n), 2)))


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def random_graph(n, m, seed):
    rng = np.random.default_rng(seed)
    seen = set()
    while len(seen) < m:
        u, v = rng.integers(0, n, size=2)
        if u != v:
            seen.add((min(u, v), max(u, v)))
    return Graph(n, sorted(seen))


def quad_bruteforce(g):
    """Literal quadruple-loop reference, for cross-checking the oracle."""
    out = set()
    for quad in itertools.combinations(range(g.n), 4):
        for perm in itertools.permutations(quad):
            w, x, y, z = perm
            if w == min(perm) and x < z:
                if (g.has_edge(w, x) and g.has_edge(x, y)
                        and g.has_edge(y, z) and g.has_edge(z, w)):
                    out.add((w, x, y, z))
    return out


def emitted_set(enum):
    out = []
    for c in enum:
        out.append(c)
    return out


class TestGraph:
    def test_validation(self):
        with pytest.raises(ValueError):
            Graph(3, [(0, 0)])
        with pytest.raises(ValueError):
            Graph(3, [(0, 1), (1, 0)])
        with pytest.raises(ValueError):
            Graph(2, [(0, 5)])

    def test_file_roundtrip(self, tmp_path):
        g = petersen()
        p = tmp_path / "g.txt"
        g.to_file(p)
        h = Graph.from_file(p)
        assert h.n == g.n and h.m == g.m
        assert np.array_equal(h.indices, g.indices)


class TestDegeneracy:
    def test_star(self):
        g = Graph(4, [(0, 1), (0, 2), (0, 3)])
        order, dseq, m_suffix, d_plus = degeneracy_order(g)
        assert dseq.tolist() == [1, 1, 1, 0]
        assert order[3] == 0  # center last

    def test_c4(self):
        order, dseq, _, _ = degeneracy_order(cycle_graph(4))
        assert dseq.tolist() == [2, 1, 1, 0]

    def test_empty(self):
        g = Graph(5, [])
        _, dseq, m_suffix, _ = degeneracy_order(g)
        assert dseq.tolist() == [0] * 5
        assert m_suffix[0] == 0

    def test_suffix_quantities(self):
        g = random_graph(40, 120, seed=1)
        order, dseq, m_suffix, d_plus = degeneracy_order(g)
        assert m_suffix[0] == g.m
        assert d_plus[0] == dseq.max()
        for i in range(g.n - 1):
            assert dseq[i] - 1 <= dseq[i + 1]


class TestOracle:
    def test_matches_quad_loop(self):
        for seed in range(12):
            g = random_graph(12, 24, seed)
            _, rows = four_cycles_bruteforce(g)
            assert {tuple(r) for r in rows.tolist()} == quad_bruteforce(g)

    def test_known_counts(self):
        assert four_cycles_bruteforce(cycle_graph(4), want_list=False)[0] == 1
        assert four_cycles_bruteforce(complete_graph(4), want_list=False)[0] == 3
        k23 = Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
        assert four_cycles_bruteforce(k23, want_list=False)[0] == 3
        assert four_cycles_bruteforce(petersen(), want_list=False)[0] == 0


ALGOS = ["dense", "sparse", "sparse-radix"]


class TestEnumerators:
    @pytest.mark.parametrize("algo", ALGOS)
    def test_c4(self, algo):
        got = emitted_set(Enumerator(cycle_graph(4), algo))
        assert got == [(0, 1, 2, 3)]

    @pytest.mark.parametrize("algo", ALGOS)
    def test_k4(self, algo):
        got = emitted_set(Enumerator(complete_graph(4), algo))
        assert sorted(got) == [(0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)]

    @pytest.mark.parametrize("algo", ALGOS)
    def test_petersen_girth5(self, algo):
        assert emitted_set(Enumerator(petersen(), algo)) == []

    @pytest.mark.parametrize("algo", ALGOS)
    def test_random_exactness(self, algo):
        for seed in range(25):
            n = int(np.random.default_rng(seed).integers(8, 40))
            m = min(n * (n - 1) // 2, 3 * n)
            g = random_graph(n, m, seed + 100)
            got = emitted_set(Enumerator(g, algo))
            _, rows = four_cycles_bruteforce(g)
            assert len(got) == len(set(got)), "duplicate emission"
            assert set(got) == {tuple(r) for r in rows.tolist()}

    @pytest.mark.parametrize("algo", ALGOS)
    def test_dense_graphs(self, algo):
        for seed in range(6):
            g = random_graph(18, 110, seed + 500)
            got = emitted_set(Enumerator(g, algo))
            _, rows = four_cycles_bruteforce(g)
            assert set(got) == {tuple(r) for r in rows.tolist()}
            assert len(got) == len(rows)

    def test_cross_algorithm_agreement(self):
        g = random_graph(128, 512, seed=7)
        sets = [set(emitted_set(Enumerator(g, a))) for a in ALGOS]
        assert sets[0] == sets[1] == sets[2]
        cnt, _ = four_cycles_bruteforce(g, want_list=False)
        assert len(sets[0]) == cnt

    def test_auto_pick(self):
        # auto is sparse when m^{4/3} < n^2, else dense
        assert Enumerator(random_graph(10, 25, 3), "auto").algorithm == "dense"
        assert Enumerator(random_graph(50, 100, 3), "auto").algorithm == "sparse"

    def test_delay_meter(self):
        g = random_graph(64, 256, seed=11)
        e = Enumerator(g, "dense")
        e.preprocess()
        assert e.preprocess_steps > 0
        list(e)
        assert e.max_delay_steps <= 64
        assert e.cycles_emitted == four_cycles_bruteforce(g, want_list=False)[0]


class TestHybrid:
    def test_density_guard(self):
        with pytest.raises(HybridDensityError):
            Enumerator(random_graph(40, 60, 1), "hybrid", delta=0.1)

    def test_agreement(self):
        n = 64
        m = int(n ** 1.7)
        g = random_graph(n, m, seed=9)
        got = emitted_set(Enumerator(g, "hybrid", delta=0.1, seed=5))
        _, rows = four_cycles_bruteforce(g)
        assert len(got) == len(set(got))
        assert set(got) == {tuple(r) for r in rows.tolist()}

    def test_agreement_larger(self):
        n = 128
        m = int(n ** 1.62)
        g = random_graph(n, m, seed=13)
        got = emitted_set(Enumerator(g, "hybrid", delta=0.1, seed=2))
        want = set(emitted_set(Enumerator(g, "dense")))
        assert set(got) == want and len(got) == len(want)


class TestStats:
    def test_c4_walks(self):
        count, walks, _ = cycle_stats(cycle_graph(4), k_max=6)
        assert count == 1
        assert walks[4] == 32
        assert walks[6] == 128
        assert walks[6] <= walks[4] * 2 ** 2  # spectral bound at d = 2

    def test_edgeless(self):
        count, walks, quasi = cycle_stats(Graph(6, []), k_max=8)
        assert count == 0 and quasi
        assert all(v == 0 for v in walks.values())

    def test_k4(self):
        count, _, quasi = cycle_stats(complete_graph(4))
        assert count == 3
        assert not quasi  # max degree 3 > ceil(sqrt(4))

    def test_spectral_bound_random(self):
        for seed in range(10):
            g = random_graph(24, 60, seed)
            _, walks, _ = cycle_stats(g, k_max=8)
            d = int(g.degrees().max())
            for k in range(5, 9):
                assert walks[k] <= walks[4] * d ** (k - 4)
