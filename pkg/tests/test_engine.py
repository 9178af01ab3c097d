"""Backtracking search for colored isomorphisms, checked against full scans."""

import itertools
import random

import pytest

from minoriso.engine import (
    BTStruct,
    automorphism_generators,
    find_isomorphism,
    isomorphism_coset,
)
from minoriso.errors import InputError
from minoriso.graphs import ArcColoring, Graph, relabel
from minoriso.perm import PermGroup

from oracles import (
    brute_iso_decision,
    brute_restricted_maps,
    cycle_graph,
    engine_restricted_maps,
    grid_graph,
    path_graph,
)


def random_graph(rng, n, p=0.35):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, edges)


def verifies(g1, g2, phi, raw1=None, raw2=None):
    if sorted(phi) != list(range(g1.n)):
        return False
    if raw1 is not None and any(raw1[v] != raw2[phi[v]] for v in range(g1.n)):
        return False
    mapped = {tuple(sorted((phi[u], phi[v]))) for u, v in g1.edges()}
    return mapped == {tuple(sorted(e)) for e in g2.edges()}


class TestFindIsomorphism:
    def test_struct_rejects_bad_colors(self):
        with pytest.raises(InputError):
            BTStruct(cycle_graph(3), (0, 0))

    def test_relabeled_copies_map_back(self):
        rng = random.Random(2)
        for _ in range(40):
            g = random_graph(rng, rng.randint(1, 10))
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = relabel(g, perm)
            phi = find_isomorphism(BTStruct(g, (0,) * g.n), BTStruct(h, (0,) * h.n))
            assert phi is not None and verifies(g, h, phi)

    def test_decision_matches_brute_force(self):
        rng = random.Random(4)
        for _ in range(60):
            n = rng.randint(1, 6)
            g1 = random_graph(rng, n, 0.4)
            g2 = random_graph(rng, n, 0.4)
            raw = (0,) * n
            want = brute_iso_decision(g1, raw, g2, raw)
            phi = find_isomorphism(BTStruct(g1, raw), BTStruct(g2, raw))
            assert (phi is not None) == want
            if phi is not None:
                assert verifies(g1, g2, phi)

    def test_colors_constrain_the_map(self):
        g = path_graph(3)
        a = BTStruct(g, (5, 6, 7))
        b = BTStruct(g, (7, 6, 5))
        phi = find_isomorphism(a, b)
        assert phi == (2, 1, 0)
        c = BTStruct(g, (5, 6, 6))
        assert find_isomorphism(a, c) is None

    def test_arc_colors_constrain_the_map(self):
        # orient one edge of each square differently; plain search succeeds,
        # arc-respecting search must fail
        g = cycle_graph(4)

        def oriented(u, v):
            arcs = {(a, b): 0 for a, b in [(x, y) for x, y in g.edges()]}
            arcs.update({(b, a): 0 for a, b in list(arcs)})
            arcs[(u, v)] = 1
            arcs[(v, u)] = 2
            return ArcColoring.from_raw(arcs)

        s1 = BTStruct(g, (0,) * 4, oriented(0, 1))
        s3 = BTStruct(g, (0,) * 4, oriented(1, 2))
        assert find_isomorphism(s1, s1) is not None
        phi = find_isomorphism(s1, s3)
        assert phi is not None and phi[0] == 1 and phi[1] == 2
        # the reversed mark is still reachable, but only by the map that
        # swaps the marked endpoints
        rev = find_isomorphism(s1, BTStruct(g, (0,) * 4, oriented(1, 0)))
        assert rev is not None and rev[0] == 1 and rev[1] == 0
        # two marks with clashing colors leave nothing to match
        arcs = {(u, v): 0 for u, v in g.edges()}
        arcs.update({(v, u): 0 for u, v in g.edges()})
        arcs[(0, 1)] = arcs[(1, 0)] = 1
        arcs[(2, 3)] = arcs[(3, 2)] = 1
        two_marks = BTStruct(g, (0,) * 4, ArcColoring.from_raw(arcs))
        assert find_isomorphism(s1, two_marks) is None

    def test_pins_force_images(self):
        g = cycle_graph(6)
        s = BTStruct(g, (0,) * 6)
        phi = find_isomorphism(s, s, pins=[(0, 3)])
        assert phi is not None and phi[0] == 3
        assert find_isomorphism(s, s, pins=[(0, 0), (1, 3)]) is None

    def test_size_mismatch(self):
        assert (
            find_isomorphism(
                BTStruct(cycle_graph(3), (0,) * 3), BTStruct(cycle_graph(4), (0,) * 4)
            )
            is None
        )


class TestAutomorphisms:
    def count_brute(self, g, raw):
        n = g.n
        e = {tuple(sorted(x)) for x in g.edges()}
        cnt = 0
        for p in itertools.permutations(range(n)):
            if any(raw[v] != raw[p[v]] for v in range(n)):
                continue
            if {tuple(sorted((p[u], p[v]))) for u, v in g.edges()} == e:
                cnt += 1
        return cnt

    def test_group_orders_match_brute_counts(self):
        rng = random.Random(8)
        cases = [cycle_graph(5), cycle_graph(6), path_graph(4), grid_graph(2, 3)]
        for _ in range(15):
            cases.append(random_graph(rng, rng.randint(2, 6)))
        for g in cases:
            raw = (0,) * g.n
            gens = automorphism_generators(BTStruct(g, raw))
            got = PermGroup(g.n, gens).order() if gens else 1
            assert got == self.count_brute(g, raw)

    def test_fixed_points_are_respected(self):
        g = cycle_graph(6)
        gens = automorphism_generators(BTStruct(g, (0,) * 6), fixed=(0,))
        grp = PermGroup(6, gens) if gens else None
        assert grp is not None and grp.order() == 2
        for p in grp.elements():
            assert p[0] == 0

    def test_colored_automorphisms(self):
        g = cycle_graph(6)
        raw = (1, 0, 0, 1, 0, 0)
        gens = automorphism_generators(BTStruct(g, raw))
        got = PermGroup(6, gens).order() if gens else 1
        assert got == self.count_brute(g, raw)


class TestIsomorphismCoset:
    def test_coset_size_counts_all_isomorphisms(self):
        rng = random.Random(12)
        for _ in range(20):
            n = rng.randint(2, 6)
            g1 = random_graph(rng, n, 0.4)
            perm = list(range(n))
            rng.shuffle(perm)
            g2 = relabel(g1, perm)
            raw = (0,) * n
            gens, rep = isomorphism_coset(BTStruct(g1, raw), BTStruct(g2, raw))
            assert rep is not None
            size = PermGroup(n, gens).order() if gens else 1
            e2 = {tuple(sorted(e)) for e in g2.edges()}
            brute = sum(
                1
                for p in itertools.permutations(range(n))
                if {tuple(sorted((p[u], p[v]))) for u, v in g1.edges()} == e2
            )
            assert size == brute

    def test_empty_coset_on_nonisomorphic(self):
        gens, rep = isomorphism_coset(
            BTStruct(path_graph(4), (0,) * 4), BTStruct(cycle_graph(4), (0,) * 4)
        )
        assert rep is None and gens == []


class TestRestrictedImageSets:
    def test_engine_agrees_with_brute_restriction(self):
        # the restriction set must be closed under automorphisms, so pick a
        # union of stable color classes
        from minoriso.graphs import VertexColoring
        from minoriso.refine import color_refine

        rng = random.Random(21)
        ran = 0
        while ran < 25:
            n = rng.randint(2, 6)
            g1 = random_graph(rng, n, 0.4)
            perm = list(range(n))
            rng.shuffle(perm)
            g2 = relabel(g1, perm)
            raw1 = tuple(rng.randint(0, 1) for _ in range(n))
            raw2 = tuple(raw1[perm.index(v)] for v in range(n))
            stable = color_refine(g1, VertexColoring.from_raw(list(raw1)))
            classes = stable.classes()
            pick = rng.sample(classes, rng.randint(1, len(classes)))
            s1 = sorted(v for cl in pick for v in cl)
            want = brute_restricted_maps(g1, raw1, g2, raw2, s1)
            got = engine_restricted_maps(g1, raw1, g2, raw2, s1)
            assert got == want
            ran += 1
