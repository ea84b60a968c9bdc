import pytest

from fasdlab.coloring import verify_good_coloring
from fasdlab.delta3 import (
    degree_classes,
    fas_sixth,
    fvs_brute,
    fvs_exact,
    good_g_coloring,
)
from fasdlab.digraph import Digraph, GraphError, girth, is_acyclic, strong_components
from fasdlab.generators import (
    directed_cycle,
    gadget_co,
    gadget_co_prime,
    gadget_dg,
    gadget_h3,
    random_orgraph,
)
from fasdlab.ordering import fas_exact


class TestDegreeClasses:
    def test_directed_cycle_all_balanced(self):
        dc = degree_classes(directed_cycle(6))
        assert dc.x11 == (0, 1, 2, 3, 4, 5)
        assert dc.x12 == () and dc.x21 == ()
        assert dc.complete

    def test_h3_classes(self):
        dc = degree_classes(gadget_h3())
        # chain heads collect two tournament arcs, chain tails emit two
        assert len(dc.x12) == 5 and len(dc.x21) == 5 and len(dc.x11) == 5
        assert dc.complete

    def test_balanced_counts_on_strong_instances(self):
        for seed in range(30):
            d = random_orgraph(16, 3, 3, seed=seed)
            comps = [c for c in strong_components(d) if len(c) >= 2]
            for comp in comps:
                sub = _induce(d, comp)
                dc = degree_classes(sub)
                assert len(dc.x12) == len(dc.x21)

    def test_incomplete_flag(self):
        d = Digraph(4, [(0, 1), (0, 2), (0, 3)])
        assert not degree_classes(d).complete


def _induce(d, comp):
    idx = {v: i for i, v in enumerate(comp)}
    arcs = [(idx[u], idx[v]) for u, v in d.arcs if u in idx and v in idx]
    return Digraph(len(comp), arcs)


class TestGoodGColoring:
    def test_directed_cycles(self):
        for g in (3, 4, 5):
            for n in (g, g + 1, g + 4):
                d = directed_cycle(n)
                c = good_g_coloring(d, g)
                assert verify_good_coloring(d, c, g)[0]

    def test_h3_with_each_g(self):
        d = gadget_h3()
        for g in (3, 4, 5):
            c = good_g_coloring(d, g)
            assert verify_good_coloring(d, c, g)[0]

    def test_rejects_degree_4(self):
        from fasdlab.generators import gadget_h4

        with pytest.raises(GraphError):
            good_g_coloring(gadget_h4(), 3)

    def test_rejects_low_girth(self):
        with pytest.raises(GraphError):
            good_g_coloring(directed_cycle(3), 4)

    def test_every_class_nonempty_on_cyclic_inputs(self):
        d = directed_cycle(7)
        c = good_g_coloring(d, 5)
        assert set(c.values()) == {1, 2, 3, 4, 5}

    def test_random_g3(self):
        for seed in range(120):
            d = random_orgraph(6 + seed % 22, 3, 3, seed=seed)
            c = good_g_coloring(d, 3)
            assert verify_good_coloring(d, c, 3)[0]

    def test_random_g4(self):
        for seed in range(120):
            d = random_orgraph(7 + seed % 22, 3, 4, seed=seed)
            c = good_g_coloring(d, 4)
            assert verify_good_coloring(d, c, 4)[0]

    def test_random_g5(self):
        for seed in range(200):
            d = random_orgraph(8 + seed % 25, 3, 5, seed=seed)
            c = good_g_coloring(d, 5)
            assert verify_good_coloring(d, c, 5)[0]

    def test_acyclic_input(self):
        d = Digraph(4, [(0, 1), (1, 2), (0, 3)])
        c = good_g_coloring(d, 5)
        assert verify_good_coloring(d, c, 5)[0]

    def test_dg_gadgets_girth_6_plus(self):
        for g in (6, 8, 10):
            d = gadget_dg(g)
            for target in (3, 4, 5):
                c = good_g_coloring(d, target)
                assert verify_good_coloring(d, c, target)[0]


class TestFvsExact:
    def test_directed_cycle_needs_one(self):
        cert = fvs_exact(directed_cycle(7))
        assert len(cert.vertices) == 1 and cert.within_half

    def test_digon_odd_cycle_exception(self):
        cert = fvs_exact(gadget_co(5))
        assert len(cert.vertices) == 3  # (n + 1) / 2
        assert cert.exceptional and not cert.within_half

    def test_digon_triangle(self):
        cert = fvs_exact(gadget_co(3))
        assert len(cert.vertices) == 2 and cert.exceptional

    def test_matches_brute_oracle(self):
        for seed in range(25):
            d = random_orgraph(9, 4, 3, seed=seed)
            assert len(fvs_exact(d).vertices) == len(fvs_brute(d))

    def test_brute_oracle_on_digons(self):
        for length in (3, 5):
            d = gadget_co(length)
            assert len(fvs_exact(d).vertices) == len(fvs_brute(d))

    def test_half_bound_or_exception(self):
        for seed in range(25):
            d = random_orgraph(12, 4, 3, seed=seed)
            cert = fvs_exact(d)
            assert cert.within_half or cert.exceptional

    def test_removal_is_acyclic(self):
        for seed in range(10):
            d = random_orgraph(10, 4, 3, seed=seed)
            cert = fvs_exact(d)
            drop = set(cert.vertices)
            keep = [(u, v) for u, v in d.arcs if u not in drop and v not in drop]
            assert is_acyclic(Digraph(d.n, keep))[0]

    def test_budget_refusal(self):
        with pytest.raises(Exception):
            fvs_exact(directed_cycle(30))


class TestFasSixth:
    def check(self, d):
        fas = fas_sixth(d)
        keep = [uv for a, uv in enumerate(d.arcs) if a not in set(fas)]
        assert is_acyclic(Digraph(d.n, keep))[0]
        assert 6 * len(fas) <= d.m
        return fas

    def test_directed_6_cycle(self):
        fas = self.check(directed_cycle(6))
        assert len(fas) == 1

    def test_directed_12_cycle(self):
        fas = self.check(directed_cycle(12))
        assert len(fas) <= 2

    def test_dg_gadgets(self):
        for g in (6, 8, 10, 12):
            self.check(gadget_dg(g))

    def test_co_prime_out_of_scope(self):
        # girth 4 < 6: rejected
        with pytest.raises(GraphError):
            fas_sixth(gadget_co_prime(5))

    def test_random_instances(self):
        for seed in range(150):
            d = random_orgraph(8 + seed % 30, 3, 6, seed=seed)
            self.check(d)

    def test_matches_exact_on_small(self):
        for seed in range(40):
            d = random_orgraph(8 + seed % 7, 3, 6, seed=seed)
            fas = self.check(d)
            assert len(fas) >= fas_exact(d).value

    def test_rejects_high_degree(self):
        from fasdlab.generators import gadget_h5

        with pytest.raises(GraphError):
            fas_sixth(gadget_h5())

    def test_acyclic_gives_empty(self):
        d = Digraph(4, [(0, 1), (1, 2), (2, 3)])
        assert fas_sixth(d) == ()


class TestSpecialColoringToolkit:
    def _instance(self):
        # build a degree-3 girth-5 instance with an adjacent (1,2)->(2,1) pair
        from fasdlab.delta3 import degree_classes
        from fasdlab.digraph import strong_components

        for seed in range(200):
            d = random_orgraph(14, 3, 5, seed=seed, arc_target=21)
            comps = [c for c in strong_components(d) if len(c) >= 2]
            for comp in comps:
                cset = set(comp)
                for a, (u, v) in enumerate(d.arcs):
                    if u in cset and v in cset:
                        du = (d.out_degree(u), d.in_degree(u))
                        dv = (d.out_degree(v), d.in_degree(v))
                        if du == (1, 2) and dv == (2, 1):
                            return d, u, v
        raise AssertionError("no toolkit instance found")

    def _toolkit(self):
        from fasdlab.delta3 import SpecialColoringToolkit

        d, p1, p2 = self._instance()
        star = [v for v in range(d.n) if v not in (p1, p2)]
        idx = {v: i for i, v in enumerate(star)}
        sub_arcs = [
            (idx[u], idx[v]) for u, v in d.arcs if u in idx and v in idx
        ]
        sub = Digraph(len(star), sub_arcs)
        star_coloring = good_g_coloring(sub, 5)
        back = {}
        j = 0
        for a, (u, v) in enumerate(d.arcs):
            if u in idx and v in idx:
                back[a] = star_coloring[j]
                j += 1
            else:
                back[a] = 1
        return SpecialColoringToolkit(d, p1, p2, back), d, p1, p2

    def test_make_special_monochromatic(self):
        tk, _, _, _ = self._toolkit()
        tk.make_special()
        assert tk.is_special()

    def test_swap_twice_is_identity(self):
        tk, _, _, _ = self._toolkit()
        tk.make_special()
        before = tk.coloring
        x = tk.ws[0]
        ci, co = tk.class_colors(x)
        if ci is None or co is None:
            return
        tk.swap_in_out(x)
        tk.swap_in_out(x)
        assert tk.coloring == before

    def test_normalize_distinct_outcomes(self):
        tk, _, _, _ = self._toolkit()
        tk.make_special()
        kind = tk.normalize_distinct()
        w1, w2 = tk.ws
        q1, q2 = tk.qs
        a1 = tk.class_colors(w1)[0]
        a2 = tk.class_colors(w2)[0]
        b1 = tk.class_colors(q1)[1]
        b2 = tk.class_colors(q2)[1]
        if kind == "ok":
            assert len({a1, a2, b1, b2}) == 4
        elif kind == "w":
            assert a1 == a2
        else:
            assert b1 == b2

    def test_rejects_non_special_for_swap(self):
        from fasdlab.digraph import GraphError as GE

        tk, _, _, _ = self._toolkit()
        if tk.is_special():
            # force a polychromatic class if one has two arcs
            sp = tk._sp
            broken = False
            for x in tk.ws + tk.qs:
                ids = sp.in_ids(x)
                if len(ids) >= 2:
                    sp.coloring[ids[0]] = 1
                    sp.coloring[ids[1]] = 2
                    broken = True
                    break
            if not broken:
                return
        with pytest.raises(GE):
            tk.swap_in_out(tk.ws[0])


class TestPeelOverlapRegression:
    def test_class_path_closing_back_g3(self):
        # the peeled path's exit arc returns to its entry: p1 p2 p3 p1 cycle
        arcs = [(0, 1), (1, 2), (2, 0), (3, 0), (2, 4), (4, 3)]
        d = Digraph(5, arcs)
        c = good_g_coloring(d, 3)
        assert verify_good_coloring(d, c, 3)[0]

    def test_class_path_closing_back_g4(self):
        arcs = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (3, 5), (5, 6), (6, 4)]
        d = Digraph(7, arcs)
        assert girth(d) == 4
        c = good_g_coloring(d, 4)
        assert verify_good_coloring(d, c, 4)[0]

    def test_class_path_closing_back_g5(self):
        arcs = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (4, 6), (6, 7), (7, 8), (8, 5)]
        d = Digraph(9, arcs)
        assert girth(d) == 5
        c = good_g_coloring(d, 5)
        assert verify_good_coloring(d, c, 5)[0]
