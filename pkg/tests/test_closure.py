"""Closure by alternating refinement and small-class individualization."""

import random

import pytest

from minoriso.closure import (
    closure_t,
    closure_t_pair,
    components_and_separators,
    is_tcr_bounded,
    t_for_h,
)
from minoriso.corpus import wide_bipartite_planar
from minoriso.errors import InputError
from minoriso.graphs import Graph, VertexColoring, relabel
from minoriso.refine import color_refine, wl2

from oracles import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    grid_graph,
    path_graph,
)


class TestThreshold:
    def test_default_values(self):
        # ceil((4 h log2 h)^3)
        assert t_for_h(2) == 512
        assert t_for_h(3) == 6881
        assert t_for_h(5, a=1, log_base=2) == 1565

    def test_h_too_small(self):
        with pytest.raises(InputError):
            t_for_h(1)


class TestVertexClosure:
    def test_star_small_leaf_class_absorbed(self):
        m = 6
        g = complete_bipartite(1, m)
        r = closure_t(g, None, None, [0], m)
        assert sorted(r.d) == list(range(m + 1))

    def test_star_large_leaf_class_blocks(self):
        m = 6
        g = complete_bipartite(1, m)
        r = closure_t(g, None, None, [0], m - 1)
        assert r.d == (0,)

    def test_marked_cycle_needs_threshold_two(self):
        # one marked vertex leaves reflection pairs of size 2, so t = 1
        # cannot split them and the closure stays put; t = 2 individualizes
        # each pair and the cycle becomes discrete
        g = cycle_graph(7)
        assert closure_t(g, None, None, [0], 1).d == (0,)
        assert sorted(closure_t(g, None, None, [0], 2).d) == list(range(7))

    def test_seed_always_inside_closure(self):
        rng = random.Random(3)
        for _ in range(20):
            n = rng.randint(2, 10)
            edges = [
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.3
            ]
            g = Graph(n, edges)
            x = rng.sample(range(n), rng.randint(0, n))
            r = closure_t(g, None, None, x, rng.randint(1, 4))
            assert set(x) <= set(r.d)

    def test_closure_is_idempotent(self):
        rng = random.Random(5)
        for _ in range(15):
            n = rng.randint(3, 9)
            edges = [
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.35
            ]
            g = Graph(n, edges)
            t = rng.randint(1, 3)
            r1 = closure_t(g, None, None, [0], t)
            r2 = closure_t(g, None, None, r1.d, t)
            assert set(r2.d) == set(r1.d)

    def test_final_partition_is_a_fixpoint(self):
        g = grid_graph(3, 4)
        r = closure_t(g, None, None, [0], 3)
        again = color_refine(g, r.final_coloring)
        assert again.num_colors == r.final_coloring.num_colors

    def test_singleton_round_tracks_d(self):
        g = complete_bipartite(1, 4)
        r = closure_t(g, None, None, [0], 4)
        for v in range(g.n):
            assert (r.singleton_round[v] >= 0) == (v in r.d)

    def test_bad_seed_rejected(self):
        with pytest.raises(InputError):
            closure_t(cycle_graph(4), None, None, [9], 1)


class TestPairClosure:
    def test_discrete_pairs_need_no_seed(self):
        # a rigid graph: path with one chord; 2-WL pins every vertex
        g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 3)])
        pc = wl2(g)
        assert len({pc.get(v, v) for v in range(6)}) == 6
        r = closure_t_pair(g, pc, [], 1)
        assert sorted(r.d) == list(range(6))

    def test_prime_cycle_without_seed_stays_empty(self):
        p = 7
        g = cycle_graph(p)
        r = closure_t_pair(g, wl2(g), [], p - 1)
        assert r.d == ()

    def test_prime_cycle_with_seed_becomes_discrete(self):
        # the seeded class is a singleton; the surviving reflection pairs
        # have size 2, so any t >= 2 finishes the job
        p = 7
        g = cycle_graph(p)
        r = closure_t_pair(g, wl2(g), [0], 2)
        assert sorted(r.d) == list(range(p))
        assert closure_t_pair(g, wl2(g), [0], 1).d == (0,)


class TestTcrBounded:
    def test_discrete_coloring(self):
        chi = VertexColoring.from_raw([0, 1, 2])
        assert is_tcr_bounded(Graph(3), chi, None, [], 1)

    def test_complete_graph_at_exact_threshold(self):
        g = complete_graph(5)
        assert is_tcr_bounded(g, None, None, [], 5)
        assert not is_tcr_bounded(g, None, None, [], 4)


class TestComponentsAndSeparators:
    def test_full_closure_leaves_nothing(self):
        assert components_and_separators(cycle_graph(5), range(5)) == []

    def test_path_split_at_midpoint(self):
        got = components_and_separators(path_graph(5), [2])
        assert got == [((0, 1), (2,)), ((3, 4), (2,))]

    def test_order_by_smallest_component_vertex(self):
        g = Graph(7, [(0, 3), (3, 1), (3, 2), (2, 6)])
        got = components_and_separators(g, [3, 2])
        comps = [z for z, _ in got]
        assert comps == sorted(comps)

    def test_grid_separators_below_six(self):
        g = grid_graph(6, 6)
        t = 3 * 6**3
        rng = random.Random(11)
        for _ in range(5):
            x = rng.sample(range(36), rng.randint(0, 4))
            r = closure_t(g, None, None, x, t)
            for _, s in components_and_separators(g, r.d):
                assert len(s) < 6

    def test_wide_planar_instance_is_non_vacuous(self):
        # middle class bigger than t survives refinement, so the closure
        # leaves real components with hub separators
        rng = random.Random(13)
        g = wide_bipartite_planar(400, rng)
        t = 375
        r = closure_t(g, None, None, [], t)
        pieces = components_and_separators(g, r.d)
        assert pieces
        for z, s in pieces:
            assert 0 < len(s) < 5


class TestInvariance:
    def test_closure_set_commutes_with_relabeling(self):
        rng = random.Random(17)
        for _ in range(15):
            n = rng.randint(3, 9)
            edges = [
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.3
            ]
            g = Graph(n, edges)
            perm = list(range(n))
            rng.shuffle(perm)
            h = relabel(g, perm)
            x = rng.sample(range(n), rng.randint(0, 2))
            t = rng.randint(1, 3)
            d1 = set(closure_t(g, None, None, x, t).d)
            d2 = set(closure_t(h, None, None, [perm[v] for v in x], t).d)
            assert d2 == {perm[v] for v in d1}

    def test_final_partition_commutes_with_relabeling(self):
        rng = random.Random(19)
        g = grid_graph(3, 3)
        perm = list(range(9))
        rng.shuffle(perm)
        h = relabel(g, perm)
        r1 = closure_t(g, None, None, [0], 2)
        r2 = closure_t(h, None, None, [perm[0]], 2)
        p1 = {frozenset(perm[v] for v in cl) for cl in r1.partition()}
        p2 = {frozenset(cl) for cl in r2.partition()}
        assert p1 == p2
