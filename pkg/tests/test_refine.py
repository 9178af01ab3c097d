"""1-WL and 2-WL refinement: stable classes, canonical names, invariance."""

import random

import pytest

from minoriso.errors import InputError
from minoriso.graphs import ArcColoring, Graph, VertexColoring, check_biregular, relabel
from minoriso.refine import (
    color_refine,
    color_refine_trace,
    diagonal_classes,
    edge_color_map,
    partitions_equivalent,
    refine_bundle,
    wl2,
    wl2_bundle,
    wl2_pair,
)

from oracles import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    grid_graph,
    path_graph,
)


def random_graph(rng, n, p=0.3):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, edges)


class TestColorRefine:
    def test_cycle_stays_uniform(self):
        c = color_refine(cycle_graph(6))
        assert c.num_colors == 1

    def test_path_splits_ends_from_middle(self):
        c = color_refine(path_graph(4))
        assert c.classes() == [(0, 3), (1, 2)]

    def test_star_splits_center(self):
        c = color_refine(complete_bipartite(1, 5))
        assert c.classes() == [(1, 2, 3, 4, 5), (0,)] or c.classes() == [
            (0,),
            (1, 2, 3, 4, 5),
        ]
        assert c.num_colors == 2

    def test_initial_colors_respected(self):
        g = cycle_graph(6)
        chi = VertexColoring.from_raw([1, 0, 0, 0, 0, 0])
        c = color_refine(g, chi)
        # distance classes around the mark; the reflection survives 1-WL
        assert c.num_colors == 4
        assert c.colors[1] == c.colors[5] and c.colors[2] == c.colors[4]

    def test_arc_colors_respected(self):
        g = path_graph(3)
        ac = ArcColoring.from_raw({(0, 1): 1, (1, 0): 1, (1, 2): 2, (2, 1): 2})
        c = color_refine(g, None, ac)
        # the ends see differently colored arcs, so they separate
        assert c.colors[0] != c.colors[2]

    def test_size_mismatch_rejected(self):
        with pytest.raises(InputError):
            color_refine(cycle_graph(4), VertexColoring.uniform(5))


class TestTraceShape:
    def test_rounds_refine_monotonically(self):
        tr = color_refine_trace(grid_graph(3, 4))
        for a, b in zip(tr.rounds, tr.rounds[1:]):
            # b refines a: vertices sharing a b-color share an a-color
            rep = {}
            for v in range(len(a.colors)):
                rep.setdefault(b.colors[v], a.colors[v])
                assert rep[b.colors[v]] == a.colors[v]
        assert tr.round_count == len(tr.rounds)

    def test_one_more_round_is_equivalent(self):
        g = grid_graph(4, 5)
        stable = color_refine(g)
        again = color_refine(g, stable)
        assert partitions_equivalent(stable, again)


class TestWl2:
    def test_complete_graph_has_two_pair_colors(self):
        pc = wl2(complete_graph(4))
        assert pc.num_colors == 2

    def test_five_cycle_has_three_pair_colors(self):
        pc = wl2(cycle_graph(5))
        assert pc.num_colors == 3
        diag = {pc.get(v, v) for v in range(5)}
        edge = {pc.get(0, 1), pc.get(1, 0)}
        non = {pc.get(0, 2)}
        assert len(diag) == 1 and not diag & edge and not edge & non

    def test_hexagon_differs_from_twin_triangles(self):
        g1 = cycle_graph(6)
        g2 = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        pc1, pc2 = wl2_pair(g1, None, g2, None)
        sizes1 = sorted(len(vs) for vs in pc1.classes())
        sizes2 = sorted(len(vs) for vs in pc2.classes())
        assert sizes1 != sizes2

    def test_diagonal_refines_one_dimensional(self):
        rng = random.Random(3)
        for _ in range(20):
            g = random_graph(rng, rng.randint(2, 10))
            one = color_refine(g)
            two = wl2(g)
            rep = {}
            for v in range(g.n):
                d = two.get(v, v)
                rep.setdefault(d, one.colors[v])
                assert rep[d] == one.colors[v]

    def test_empty_graph(self):
        pc = wl2(Graph(0))
        assert pc.n == 0 and len(pc.colors) == 0


class TestPartitionsEquivalent:
    def test_reflexive(self):
        c = VertexColoring.from_raw([0, 1, 1, 2])
        assert partitions_equivalent(c, c)

    def test_distinct_vs_uniform(self):
        a = VertexColoring.from_raw([0, 1])
        b = VertexColoring.uniform(2)
        assert not partitions_equivalent(a, b)

    def test_name_shuffle_still_equivalent(self):
        a = VertexColoring.from_raw([0, 0, 1, 2])
        b = VertexColoring.from_raw([5, 5, 2, 0])
        assert partitions_equivalent(a, b)

    def test_domain_mismatch_rejected(self):
        with pytest.raises(InputError):
            partitions_equivalent(VertexColoring.uniform(2), VertexColoring.uniform(3))


class TestCanonicalNaming:
    def test_vertex_names_commute_with_relabeling(self):
        rng = random.Random(17)
        for _ in range(30):
            g = random_graph(rng, rng.randint(2, 12))
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = relabel(g, perm)
            cg = color_refine(g)
            ch = color_refine(h)
            for v in range(g.n):
                assert ch.colors[perm[v]] == cg.colors[v]

    def test_pair_names_commute_with_relabeling(self):
        rng = random.Random(18)
        for _ in range(12):
            g = random_graph(rng, rng.randint(2, 9))
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = relabel(g, perm)
            pg = wl2(g)
            ph = wl2(h)
            for u in range(g.n):
                for v in range(g.n):
                    assert ph.get(perm[u], perm[v]) == pg.get(u, v)

    def test_bundle_pools_ids_across_graphs(self):
        g = cycle_graph(5)
        cols, _ = refine_bundle([g, g], [[0] * 5, [0] * 5])
        assert cols[0] == cols[1]

    def test_wl2_bundle_round_count(self):
        out, rounds = wl2_bundle([cycle_graph(6)], [None], want_rounds=True)
        assert rounds >= 1
        again, rounds2 = wl2_bundle([cycle_graph(6)], [None], want_rounds=True)
        assert rounds == rounds2 and out[0].colors == again[0].colors


class TestStableClassStructure:
    def test_stable_classes_induce_biregular_blocks(self):
        rng = random.Random(23)
        for _ in range(20):
            g = random_graph(rng, rng.randint(3, 11))
            chi = color_refine(g)
            classes = list(chi.classes())
            for a in classes:
                for b in classes:
                    assert check_biregular(g, a, b) is not None

    def test_diagonal_classes_and_edge_map_cover(self):
        g = grid_graph(3, 3)
        pc = wl2(g)
        dc = diagonal_classes(pc)
        assert sorted(v for vs in dc.values() for v in vs) == list(range(9))
        em = edge_color_map(g, pc)
        assert sorted(e for es in em.values() for e in es) == g.edges()
