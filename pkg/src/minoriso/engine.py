"""Backtracking isomorphism and automorphism search over colored graphs.

The search refines the two graphs as one bundle, so color ids are directly
comparable, then branches on the smallest non-singleton class.  A branch dies
as soon as the pooled class histograms of the two sides disagree.  This is the
desk-scale workhorse behind the base cases of the recursive test; it is exact,
just not fast on adversarial inputs.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass

from .errors import InputError, InternalError
from .graphs import Graph
from .refine import refine_bundle


@dataclass(frozen=True)
class BTStruct:
    """A graph plus raw vertex color values (any comparable type) and
    optional arc colors.  Two structs searched together must use the same
    color-value scheme, since values are pooled across both."""

    g: Graph
    colors: tuple
    acol: object = None

    def __post_init__(self):
        if len(self.colors) != self.g.n:
            raise InputError("BTStruct: colors do not match graph")


def _refined_pair(s1, s2, pins1, pins2):
    """Pooled refinement with pinned vertices individualized; None on
    histogram mismatch."""

    def init(s, pins):
        marks = {v: k for k, v in enumerate(pins)}
        return [
            (1, marks[v], 0) if v in marks else (0, 0, s.colors[v])
            for v in range(s.g.n)
        ]

    cols, _ = refine_bundle(
        [s1.g, s2.g], [init(s1, pins1), init(s2, pins2)], [s1.acol, s2.acol]
    )
    c1, c2 = cols
    if Counter(c1) != Counter(c2):
        return None
    return c1, c2


def _classes_of(c):
    by = defaultdict(list)
    for v, col in enumerate(c):
        by[col].append(v)
    return by


def _target_class(by1):
    """Smallest non-singleton class, ties by color id."""
    best = None
    for col, vs in by1.items():
        if len(vs) >= 2 and (best is None or (len(vs), col) < best):
            best = (len(vs), col)
    return None if best is None else best[1]


def _extract_map(s1, s2, c1, c2):
    pos2 = {}
    for v, col in enumerate(c2):
        pos2[col] = v
    phi = tuple(pos2[col] for col in c1)
    # discrete stable colorings force this; keep as an internal check
    for u in range(s1.g.n):
        if {phi[w] for w in s1.g.adj[u]} != set(s2.g.adj[phi[u]]):
            raise InternalError("refinement leaf failed edge check")
    if s1.acol is not None or s2.acol is not None:
        for u, w in s1.g.edges():
            a1 = s1.acol.get(u, w) if s1.acol else None
            a2 = s2.acol.get(phi[u], phi[w]) if s2.acol else None
            b1 = s1.acol.get(w, u) if s1.acol else None
            b2 = s2.acol.get(phi[w], phi[u]) if s2.acol else None
            if a1 != a2 or b1 != b2:
                raise InternalError("refinement leaf failed arc color check")
    return phi


def _search(s1, s2, pins1, pins2):
    r = _refined_pair(s1, s2, pins1, pins2)
    if r is None:
        return None
    c1, c2 = r
    by1 = _classes_of(c1)
    target = _target_class(by1)
    if target is None:
        return _extract_map(s1, s2, c1, c2)
    by2 = _classes_of(c2)
    v1 = min(by1[target])
    for v2 in sorted(by2[target]):
        out = _search(s1, s2, pins1 + [v1], pins2 + [v2])
        if out is not None:
            return out
    return None


def find_isomorphism(s1, s2, pins=()):
    """One color/arc-preserving isomorphism s1 -> s2 respecting the pinned
    pairs, or None.  Returns a tuple of images."""
    if s1.g.n != s2.g.n:
        return None
    p1, p2 = [], []
    for u, w in pins:
        p1.append(u)
        p2.append(w)
    return _search(s1, s2, p1, p2)


def _orbit_of(v, gens, n):
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def automorphism_generators(s, fixed=()):
    """Generators of the color/arc-preserving automorphism group fixing the
    given vertices pointwise.

    One level per canonically chosen base vertex: every candidate image not
    already in the orbit of the base vertex under this level's generators is
    searched once; the found automorphisms generate the level transversals,
    so the union over all levels generates the full group.
    """
    n = s.g.n
    gens = []
    prefix = list(fixed)
    while True:
        r = _refined_pair(s, s, prefix, prefix)
        if r is None:
            raise InternalError("self refinement mismatch")
        c1, _ = r
        by = _classes_of(c1)
        target = _target_class(by)
        if target is None:
            return gens
        members = sorted(by[target])
        v1 = members[0]
        level_gens = []
        for v2 in members[1:]:
            if v2 in _orbit_of(v1, level_gens, n):
                continue
            phi = _search(s, s, prefix + [v1], prefix + [v2])
            if phi is not None:
                level_gens.append(phi)
        gens.extend(level_gens)
        prefix.append(v1)


def isomorphism_coset(s1, s2):
    """(generators of Aut(s1), one isomorphism s1 -> s2 or None)."""
    rep = find_isomorphism(s1, s2)
    if rep is None:
        return [], None
    return automorphism_generators(s1), rep
