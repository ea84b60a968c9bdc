import math
import random

import pytest

from fasdlab.digraph import Digraph, Graph, GraphError, eulerian_orient
from fasdlab.generators import circulant_graph, paley_graph
from fasdlab.ordering import fas_exact
from fasdlab.spectral import (
    dense_spectrum,
    halving_statistic,
    lambda_extremes,
    mixing_check,
    orientation_fas_lower_bound,
    random_orientation_experiment,
)


def complete_graph(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_minus_matching(n):
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if not (u % 2 == 0 and v == u + 1)
    ]
    return Graph(n, edges)


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def oracle_lambda(g):
    spec = dense_spectrum(g)
    d = g.regular_degree()
    rest = sorted(abs(x) for x in spec)
    # remove one copy of d (the principal eigenvalue)
    rest.remove(max(rest))
    return rest[-1] if rest else 0.0


class TestLambdaExtremes:
    def test_complete_k4(self):
        rep = lambda_extremes(complete_graph(4))
        assert abs(rep.lam - 1.0) < 1e-8

    def test_cycles_match_closed_form(self):
        for n in (4, 5, 6, 8, 13):
            rep = lambda_extremes(cycle_graph(n))
            spec = [2 * math.cos(2 * math.pi * k / n) for k in range(n)]
            want = sorted(abs(x) for x in spec)[-2]
            assert abs(rep.lam - want) < 1e-7

    def test_paley_13_closed_form(self):
        rep = lambda_extremes(paley_graph(13))
        assert abs(rep.lam - (1 + math.sqrt(13)) / 2) < 1e-9

    def test_paley_17_closed_form(self):
        rep = lambda_extremes(paley_graph(17))
        assert abs(rep.lam - (1 + math.sqrt(17)) / 2) < 1e-9

    def test_agrees_with_dense_oracle(self):
        graphs = [
            complete_graph(6),
            cycle_graph(9),
            paley_graph(13),
            circulant_graph(12, [1, 3]),
            complete_minus_matching(10),
        ]
        for g in graphs:
            rep = lambda_extremes(g)
            assert abs(rep.lam - oracle_lambda(g)) < 1e-6

    def test_bipartite_flags_and_lambda_prime(self):
        rep = lambda_extremes(cycle_graph(4))
        assert rep.bipartite
        assert abs(rep.lam - 2.0) < 1e-8  # -d is in the spectrum
        assert abs(rep.lam_prime - 0.0) < 1e-7

    def test_rejects_non_regular(self):
        with pytest.raises(GraphError):
            lambda_extremes(Graph(3, [(0, 1)]))


class TestMixingCheck:
    def test_full_sets_zero_deviation(self):
        g = complete_graph(4)
        rep = lambda_extremes(g)
        chk = mixing_check(g, range(4), range(4), rep.lam)
        assert chk.e_st == 12.0  # d * n with both-endpoint pairs counted twice
        assert chk.deviation < 1e-9 and chk.holds

    def test_empty_set(self):
        g = complete_graph(4)
        chk = mixing_check(g, [], [0, 1], 1.0)
        assert chk.e_st == 0.0 and chk.holds

    def test_never_violated_on_paley(self):
        for q in (13, 17):
            g = paley_graph(q)
            lam = lambda_extremes(g).lam
            rng = random.Random(q)
            for _ in range(400):
                s = rng.sample(range(q), rng.randrange(0, q + 1))
                t = rng.sample(range(q), rng.randrange(0, q + 1))
                assert mixing_check(g, s, t, lam).holds

    def test_equal_halves_corollary(self):
        g = complete_minus_matching(10)
        lam = lambda_extremes(g).lam
        rng = random.Random(0)
        for _ in range(100):
            s = rng.sample(range(10), 5)
            t = [v for v in range(10) if v not in s]
            chk = mixing_check(g, s, t, lam)
            assert chk.holds
            assert chk.e_st >= chk.equal_halves_lower - 1e-9


class TestOrientationBound:
    def test_k10_minus_matching_pipeline(self):
        g = complete_minus_matching(10)
        rep = lambda_extremes(g)
        assert abs(rep.lam - 2.0) < 1e-8  # spectrum of J - I - M off the top
        d = eulerian_orient(g)
        ob = orientation_fas_lower_bound(d, rep.lam, compute_exact_up_to=12)
        assert ob.bound == pytest.approx((8 - 2.0) * 10 / 8)
        assert ob.holds

    def test_directed_4_cycle(self):
        g = cycle_graph(4)
        d = eulerian_orient(g)
        lam = lambda_extremes(g).lam  # = 2 since C4 is bipartite
        ob = orientation_fas_lower_bound(d, lam, fas_value=fas_exact(d).value)
        assert ob.bound == pytest.approx(0.0)
        assert ob.holds
        # with the bipartite-excluded eigenvalue the bound tightens to 1 = fas
        lam_prime = lambda_extremes(g).lam_prime
        ob2 = orientation_fas_lower_bound(d, lam_prime, fas_value=fas_exact(d).value)
        assert ob2.bound == pytest.approx(1.0)
        assert ob2.holds

    def test_rejects_odd_order(self):
        g = paley_graph(13)
        d = eulerian_orient(g)
        with pytest.raises(GraphError):
            orientation_fas_lower_bound(d, 2.3)

    def test_rejects_non_eulerian(self):
        d = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        with pytest.raises(GraphError):
            orientation_fas_lower_bound(d, 1.0)

    def test_bound_below_exact_on_circulants(self):
        for n in (8, 12, 16):
            g = circulant_graph(n, [1, 2])
            lam = lambda_extremes(g).lam
            d = eulerian_orient(g)
            ob = orientation_fas_lower_bound(d, lam, compute_exact_up_to=16)
            assert ob.holds


class TestOrientationExperiment:
    def test_rejects_bad_order(self):
        with pytest.raises(GraphError):
            random_orientation_experiment(cycle_graph(4), 2, 2)

    def test_statistic_below_bas_and_mean(self):
        g = circulant_graph(16, [1, 2, 3])
        exp = random_orientation_experiment(g, trials=40, orderings_budget=3, seed=1)
        # empirical mean of the level-1 cross count within 4 sigma of e/2
        assert abs(exp.mean_level1 - exp.expected_level1) <= 4 * exp.sigma_level1
        assert exp.min_statistic <= exp.min_bas_seen

    def test_hoeffding_tail_respected(self):
        g = circulant_graph(16, [1, 2, 3, 4])
        exp = random_orientation_experiment(g, trials=120, orderings_budget=1, seed=3)
        for level, (total, violations) in exp.hoeffding.items():
            if total:
                # alpha = sqrt(e) gives tail bound exp(-2) ~ 0.135
                assert violations / total <= math.exp(-2) + 0.12

    def test_statistic_reversal_symmetry(self):
        g = circulant_graph(8, [1, 2])
        rng = random.Random(5)
        arcs = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in g.edges]
        d = Digraph(8, arcs)
        rev = Digraph(8, [(v, u) for u, v in arcs])
        order = list(range(8))
        rng.shuffle(order)
        assert halving_statistic(d, order) == halving_statistic(rev, order[::-1])
