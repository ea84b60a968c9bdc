import pytest

from fasdlab.digraph import INFINITE, GraphError, girth, is_acyclic, max_degree
from fasdlab.generators import (
    directed_cycle,
    gadget_co,
    gadget_co_prime,
    gadget_dg,
    gadget_h3,
    gadget_h4,
    gadget_h5,
    is_digon_odd_cycle,
    paley_graph,
    prime_in_progression,
    random_orgraph,
    random_two_regular_orgraph,
    rotational_tournament,
    split4_degree3,
    split_k,
)


class TestBasicFamilies:
    def test_directed_cycle_girth(self):
        assert girth(directed_cycle(3)) == 3
        assert girth(directed_cycle(2)) == 2  # digon

    def test_directed_cycle_rejects_small(self):
        with pytest.raises(GraphError):
            directed_cycle(1)

    def test_rotational_tournament_regular(self):
        for n in (3, 5, 7):
            t = rotational_tournament(n)
            k = (n - 1) // 2
            assert all(t.out_degree(v) == t.in_degree(v) == k for v in range(n))
            assert t.m == n * (n - 1) // 2
            assert not t.has_digon()

    def test_rotational_tournament_rejects_even(self):
        with pytest.raises(GraphError):
            rotational_tournament(4)


class TestSplits:
    def test_split2_of_3_cycle_is_6_cycle(self):
        d = split_k(directed_cycle(3), 2)
        assert d.n == 6 and d.m == 6
        assert girth(d) == 6

    def test_split_multiplies_girth(self):
        for n, k in ((5, 2), (5, 3), (7, 2), (7, 3)):
            t = rotational_tournament(n)
            assert girth(split_k(t, k)) == k * girth(t)

    def test_h4_structure(self):
        h4 = gadget_h4()
        assert h4.n == 14 and h4.m == 28  # 21 tournament arcs + 7 split arcs
        assert max_degree(h4) == 4
        assert girth(h4) == 6

    def test_h3_structure(self):
        h3 = gadget_h3()
        assert h3.n == 15 and h3.m == 20  # 10 tournament arcs + 10 chain arcs
        assert max_degree(h3) == 3
        assert girth(h3) == 9

    def test_h5_structure(self):
        h5 = gadget_h5()
        assert h5.n == 10 and h5.m == 25
        assert max_degree(h5) == 5
        assert girth(h5) == 4

    def test_split4_counts_and_degree(self):
        d = rotational_tournament(7)  # 3-regular
        s = split4_degree3(d)
        assert s.m == 2 * d.m
        assert s.n == 4 * d.n
        assert max_degree(s) == 3
        assert not s.has_digon()

    def test_split4_rejects_non_3_regular(self):
        with pytest.raises(GraphError):
            split4_degree3(directed_cycle(5))


class TestDgGadget:
    def test_arc_counts(self):
        # a = 3(k-1) + 6
        assert gadget_dg(8).m == 15
        assert gadget_dg(4).m == 9
        assert gadget_dg(12).m == 21

    def test_girth_equals_g(self):
        for g in (4, 6, 8, 10, 12):
            assert girth(gadget_dg(g)) == g

    def test_max_degree_3(self):
        for g in (4, 8, 16):
            assert max_degree(gadget_dg(g)) == 3

    def test_rejects_odd(self):
        with pytest.raises(GraphError):
            gadget_dg(7)


class TestCoFamily:
    def test_co_is_detected(self):
        for length in (3, 5, 7):
            assert is_digon_odd_cycle(gadget_co(length))

    def test_non_members_rejected(self):
        assert not is_digon_odd_cycle(directed_cycle(5))
        assert not is_digon_odd_cycle(gadget_co_prime(5))

    def test_co_prime_structure(self):
        d = gadget_co_prime(5)
        assert d.n == 10 and d.m == 15
        assert girth(d) == 4
        # plus side: in 1 out 2; minus side: in 2 out 1
        for v in range(5):
            assert d.out_degree(2 * v) == 2 and d.in_degree(2 * v) == 1
            assert d.out_degree(2 * v + 1) == 1 and d.in_degree(2 * v + 1) == 2


class TestPaley:
    def test_paley_13_is_6_regular(self):
        g = paley_graph(13)
        assert all(g.degree(v) == 6 for v in range(13))

    def test_paley_5_is_5_cycle(self):
        g = paley_graph(5)
        # squares mod 5 are {1, 4}: the graph is the cycle 0-1-2-3-4
        assert sorted(g.edges) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]

    def test_rejects_bad_modulus(self):
        with pytest.raises(GraphError):
            paley_graph(7)
        with pytest.raises(GraphError):
            paley_graph(21)  # 21 = 1 mod 4 but composite


class TestRandomOrgraph:
    def test_respects_declared_bounds(self):
        for seed in range(25):
            d = random_orgraph(20, 4, 4, seed=seed)
            assert max_degree(d) <= 4
            g = girth(d)
            assert g is INFINITE or g >= 4
            assert not d.has_digon()

    def test_deterministic_per_seed(self):
        a = random_orgraph(15, 3, 5, seed=11)
        b = random_orgraph(15, 3, 5, seed=11)
        assert a.arcs == b.arcs

    def test_backbone_gives_cycles(self):
        d = random_orgraph(12, 4, 3, seed=2)
        assert not is_acyclic(d)[0]

    def test_weighted_instances(self):
        d = random_orgraph(10, 4, 3, seed=4, weighted=True)
        assert d.weighted and all(w > 0 for w in d.weights)

    def test_two_regular_generator(self):
        for seed in range(5):
            d = random_two_regular_orgraph(9, seed=seed)
            assert all(d.out_degree(v) == d.in_degree(v) == 2 for v in range(9))
            assert not d.has_digon()


def sieve_oracle(p, k, limit=2_000_000):
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    for x in range(2, limit):
        if sieve[x] and x % (2**k) == 1 and x % p == 4 % p:
            return x
    raise AssertionError("oracle found no prime")


class TestPrimeInProgression:
    def test_matches_sieve_oracle(self):
        for p, k in ((5, 2), (5, 3), (13, 2), (3, 4)):
            x = prime_in_progression(p, k)
            assert x == sieve_oracle(p, k)

    def test_congruences_hold(self):
        x = prime_in_progression(5, 2)
        assert x % 4 == 1 and x % 5 == 4

    def test_crt_residue_unique(self):
        # both congruences pin x mod 2^k * p
        x = prime_in_progression(11, 3)
        assert x % 8 == 1 and x % 11 == 4


class TestSplit4FasRelation:
    def test_feedback_sets_map_back_three_to_one(self):
        # the degree-reducing split: a FAS of the split graph maps to a FAS of
        # the original with at most triple the size, so fas(split) >= fas(D)/3
        import math

        from fasdlab.digraph import eulerian_orient, is_acyclic
        from fasdlab.ordering import backward_arc_ids, fas_exact, fas_upper_heuristic

        d = eulerian_orient(paley_graph(13))  # 3-regular orientation
        s = split4_degree3(d)
        assert s.m == 2 * d.m and max_degree(s) == 3

        order = fas_upper_heuristic(s, seed=2)
        f_prime = set(backward_arc_ids(s, order))
        exact = fas_exact(d).value
        assert len(f_prime) >= math.ceil(exact / 3)

        # map the split FAS back: original arcs one-to-one, internal arcs of a
        # chain become the original arcs entering that vertex
        into = {v: [] for v in range(d.n)}
        for a, (u, v) in enumerate(d.arcs):
            into[v].append(a)
        mapped = set()
        for a in f_prime:
            u, v = s.arcs[a]
            if u // 4 == v // 4:
                mapped.update(into[u // 4])
            else:
                # original arcs appear after the 3n internal arcs, in order
                mapped.add(a - 3 * d.n)
        keep = [uv for a, uv in enumerate(d.arcs) if a not in mapped]
        from fasdlab.digraph import Digraph as DG

        assert is_acyclic(DG(d.n, keep))[0]
        assert len(mapped) <= 3 * len(f_prime)
