"""Graph construction, subgraph operators, contraction, and predicates."""

import random

import pytest

from minoriso.errors import InputError
from minoriso.graphs import (
    Graph,
    VertexColoring,
    bipartite_block,
    check_biregular,
    connected_components,
    contract_partition,
    induced_subgraph,
    is_connected,
    neighborhood,
    relabel,
)

from oracles import complete_bipartite, complete_graph, cycle_graph, grid_graph, path_graph


def petersen():
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return Graph(10, edges)


class TestGraphBasics:
    def test_rejects_self_loop(self):
        with pytest.raises(InputError):
            Graph(3, [(1, 1)])

    def test_rejects_out_of_range_edge(self):
        with pytest.raises(InputError):
            Graph(2, [(0, 2)])

    def test_duplicate_edges_collapse(self):
        g = Graph(3, [(0, 1), (1, 0), (0, 1)])
        assert g.num_edges == 1

    def test_adjacency_is_symmetric_and_sorted(self):
        g = Graph(4, [(2, 0), (3, 0), (1, 0)])
        assert g.adj[0] == (1, 2, 3)
        for u in range(4):
            for v in g.adj[u]:
                assert u in g.adj[v]

    def test_degree_and_has_edge(self):
        g = cycle_graph(5)
        assert all(g.degree(v) == 2 for v in range(5))
        assert g.has_edge(0, 4) and not g.has_edge(0, 2)


class TestVertexColoring:
    def test_from_raw_ranks_by_value(self):
        c = VertexColoring.from_raw([7, 3, 7, 100])
        assert c.colors == (1, 0, 1, 2)
        assert c.num_colors == 3

    def test_uniform(self):
        c = VertexColoring.uniform(4)
        assert c.colors == (0, 0, 0, 0) and c.num_colors == 1

    def test_classes_ordered_by_color(self):
        c = VertexColoring.from_raw([2, 0, 2, 1])
        assert c.classes() == [(1,), (3,), (0, 2)]

    def test_rejects_sparse_ids(self):
        with pytest.raises(InputError):
            VertexColoring((0, 2), 3)


class TestInducedSubgraph:
    def test_triangle_restricted_to_pair_is_one_edge(self):
        sub, idx = induced_subgraph(complete_graph(3), [0, 1])
        assert sub.n == 2 and sub.edges() == [(0, 1)]
        assert idx == [0, 1]

    def test_full_vertex_set_is_identity(self):
        g = cycle_graph(6)
        sub, idx = induced_subgraph(g, range(6))
        assert sub == g and idx == list(range(6))

    def test_grid_row_is_a_path(self):
        g = grid_graph(10, 10)
        row = [3 * 10 + j for j in range(10)]
        sub, idx = induced_subgraph(g, row)
        assert sub == path_graph(10)
        assert idx == row

    def test_out_of_range_rejected(self):
        with pytest.raises(InputError):
            induced_subgraph(complete_graph(3), [0, 5])


class TestBipartiteBlock:
    def test_even_cycle_across_parity_is_itself(self):
        g = cycle_graph(4)
        blk, idx = bipartite_block(g, [0, 2], [1, 3])
        assert blk == g and idx == [0, 1, 2, 3]

    def test_no_crossing_edges_gives_edgeless(self):
        g = Graph(4, [(0, 1), (2, 3)])
        blk, _ = bipartite_block(g, [0, 1], [2, 3])
        assert blk.num_edges == 0

    def test_petersen_spokes_form_perfect_matching(self):
        blk, idx = bipartite_block(petersen(), range(5), range(5, 10))
        assert blk.n == 10 and blk.num_edges == 5
        assert all(blk.degree(v) == 1 for v in range(10))
        assert idx == list(range(10))

    def test_inside_edges_dropped(self):
        blk, _ = bipartite_block(complete_graph(4), [0, 1], [2, 3])
        assert sorted(blk.edges()) == [(0, 2), (0, 3), (1, 2), (1, 3)]


class TestComponents:
    def test_edgeless(self):
        assert connected_components(Graph(3)) == [(0,), (1,), (2,)]

    def test_cycle_is_single_component(self):
        assert connected_components(cycle_graph(6)) == [tuple(range(6))]

    def test_two_triangles(self):
        g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert connected_components(g) == [(0, 1, 2), (3, 4, 5)]

    def test_is_connected_edge_cases(self):
        assert is_connected(Graph(0)) and is_connected(Graph(1))
        assert not is_connected(Graph(2))


class TestContraction:
    def test_hexagon_with_paired_blocks_is_triangle(self):
        g = cycle_graph(6)
        q = contract_partition(g, [(0, 1), (2, 3), (4, 5)])
        assert q == complete_graph(3)

    def test_singletons_reproduce_graph(self):
        g = grid_graph(3, 4)
        assert contract_partition(g, [(v,) for v in range(g.n)]) == g

    def test_k4_two_pairs_is_single_edge(self):
        q = contract_partition(complete_graph(4), [(0, 1), (2, 3)])
        assert q == Graph(2, [(0, 1)])

    def test_disconnected_block_rejected(self):
        with pytest.raises(InputError):
            contract_partition(path_graph(4), [(0, 2), (1, 3)])

    def test_overlap_rejected(self):
        with pytest.raises(InputError):
            contract_partition(path_graph(3), [(0, 1), (1, 2)])

    def test_missing_vertex_rejected(self):
        with pytest.raises(InputError):
            contract_partition(path_graph(3), [(0, 1)])


class TestNeighborhood:
    def test_star_center(self):
        g = complete_bipartite(1, 4)
        assert neighborhood(g, [0]) == (1, 2, 3, 4)

    def test_path_midpoint(self):
        assert neighborhood(path_graph(5), [2]) == (1, 3)

    def test_grid_center_block_boundary(self):
        g = grid_graph(5, 5)
        block = [5 * i + j for i in (1, 2, 3) for j in (1, 2, 3)]
        ring = neighborhood(g, block)
        assert len(ring) == 12
        expected = {5 * 0 + j for j in (1, 2, 3)} | {5 * 4 + j for j in (1, 2, 3)}
        expected |= {5 * i + 0 for i in (1, 2, 3)} | {5 * i + 4 for i in (1, 2, 3)}
        assert set(ring) == expected

    def test_result_disjoint_from_input(self):
        g = complete_graph(5)
        assert set(neighborhood(g, [0, 1])) == {2, 3, 4}


class TestBiregular:
    def test_complete_bipartite(self):
        g = complete_bipartite(2, 3)
        assert check_biregular(g, [0, 1], [2, 3, 4]) == (3, 2)

    def test_matching(self):
        g = Graph(6, [(0, 3), (1, 4), (2, 5)])
        assert check_biregular(g, [0, 1, 2], [3, 4, 5]) == (1, 1)

    def test_uneven_degrees_give_none(self):
        g = complete_bipartite(1, 4)
        # second vertex of the left side is isolated toward the leaves
        g2 = Graph(6, g.edges())
        assert check_biregular(g2, [0, 5], [1, 2, 3, 4]) is None

    def test_double_counting_identity(self):
        rng = random.Random(7)
        for _ in range(30):
            a = rng.randint(1, 5)
            b = rng.randint(1, 5)
            g = complete_bipartite(a, b)
            d1, d2 = check_biregular(g, range(a), range(a, a + b))
            assert d1 * a == d2 * b == g.num_edges


class TestRelabelCommutation:
    def test_components_commute_with_relabeling(self):
        rng = random.Random(11)
        for _ in range(25):
            n = rng.randint(2, 12)
            edges = [
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.25
            ]
            g = Graph(n, edges)
            perm = list(range(n))
            rng.shuffle(perm)
            h = relabel(g, perm)
            got = {frozenset(c) for c in connected_components(h)}
            want = {
                frozenset(perm[v] for v in c) for c in connected_components(g)
            }
            assert got == want

    def test_neighborhood_commutes_with_relabeling(self):
        rng = random.Random(12)
        g = grid_graph(4, 4)
        for _ in range(20):
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = relabel(g, perm)
            x = rng.sample(range(g.n), rng.randint(1, 5))
            assert set(neighborhood(h, [perm[v] for v in x])) == {
                perm[v] for v in neighborhood(g, x)
            }

    def test_contraction_commutes_with_relabeling(self):
        rng = random.Random(13)
        g = cycle_graph(8)
        blocks = [(0, 1), (2,), (3, 4, 5), (6, 7)]
        base = contract_partition(g, blocks)
        for _ in range(20):
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = relabel(g, perm)
            mapped = [tuple(sorted(perm[v] for v in blk)) for blk in blocks]
            assert contract_partition(h, mapped) == base
