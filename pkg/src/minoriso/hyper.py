"""Isomorphism of hypergraphs whose hyperedges carry labeling cosets.

Two structures live here.  A coset-labeled hypergraph attaches to every
hyperedge a labeling coset of that edge plus an integer color; a bijection
between two such hypergraphs is an isomorphism when it maps hyperedges to
hyperedges and, edge by edge, transports the attached coset onto the target
edge's coset exactly.  A multiple-labeling-coset structure instead carries a
set of labeling cosets of the whole vertex set, each weighted by an integer,
and an isomorphism must transport every weighted coset onto an equally
weighted member of the other side.

Both solvers return the full isomorphism set as a coset (automorphism group
times one representative).  The hypergraph solver backtracks over the
stabilizer chain of the ambient coset's group, pruning branches as soon as a
decided vertex or a fully decided hyperedge violates the transport
condition.  The multiple-coset solver exhausts all bijections of its (small)
vertex set.  Neither is fast in general; both are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial

from .errors import CapacityError, InputError, InternalError
from .perm import (
    ENUMERATE_CAP,
    Coset,
    LabelingCoset,
    PermGroup,
    _group_from_elements,
    enumerate_small,
    identity_perm,
    inverse,
    mult,
)


@dataclass(frozen=True)
class CosetLabeledHypergraph:
    """Hypergraph on vertices 0..n-1; edge i carries cosets[i], colors[i].

    Edges are strictly increasing vertex tuples, pairwise distinct; the
    domain of each labeling coset must equal its edge.
    """

    n: int
    edges: tuple
    cosets: tuple
    colors: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise InputError("hypergraph: bad vertex count")
        if not len(self.edges) == len(self.cosets) == len(self.colors):
            raise InputError("hypergraph: edge labels misaligned")
        seen = set()
        for e, lc, c in zip(self.edges, self.cosets, self.colors):
            if not e or any(e[i] >= e[i + 1] for i in range(len(e) - 1)):
                raise InputError("hypergraph: edge not strictly increasing")
            if e[0] < 0 or e[-1] >= self.n:
                raise InputError("hypergraph: edge vertex out of range")
            if e in seen:
                raise InputError("hypergraph: duplicate hyperedge")
            seen.add(e)
            if not isinstance(lc, LabelingCoset) or lc.domain != e:
                raise InputError("hypergraph: label domain differs from edge")
            if not isinstance(c, int) or c < 0:
                raise InputError("hypergraph: edge color must be a natural")


def labeled_hypergraph(n, items):
    """Build a CosetLabeledHypergraph from (vertices, coset, color) triples.

    Vertex iterables are sorted; edges are ordered by (size, tuple) so equal
    inputs produce identical structures.
    """
    norm = []
    for verts, lc, c in items:
        e = tuple(sorted(verts))
        norm.append((e, lc, c))
    norm.sort(key=lambda item: (len(item[0]), item[0]))
    return CosetLabeledHypergraph(
        n,
        tuple(e for e, _, _ in norm),
        tuple(lc for _, lc, _ in norm),
        tuple(c for _, _, c in norm),
    )


@dataclass(frozen=True)
class MultipleLabelingCoset:
    """A set of labeling cosets of the full vertex set, each weighted.

    cosets[i] must label all of 0..n-1 and carry weight pvals[i]; members
    must be pairwise distinct as cosets.
    """

    n: int
    cosets: tuple
    pvals: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise InputError("labeling-coset set: bad vertex count")
        if len(self.cosets) != len(self.pvals):
            raise InputError("labeling-coset set: weights misaligned")
        dom = tuple(range(self.n))
        for lc, p in zip(self.cosets, self.pvals):
            if not isinstance(lc, LabelingCoset) or lc.domain != dom:
                raise InputError("labeling-coset set: member domain mismatch")
            if not isinstance(p, int) or p < 0:
                raise InputError("labeling-coset set: weight must be a natural")
        for i in range(len(self.cosets)):
            for j in range(i + 1, len(self.cosets)):
                if self.cosets[i].same_coset(self.cosets[j]):
                    raise InputError("labeling-coset set: members not distinct")


def labeling_intersection(a, b):
    """Intersection of two labeling cosets on the same domain, None if empty.

    Computed by explicit enumeration, so both cosets must be small.
    """
    if a.domain != b.domain:
        raise InputError("labeling intersection: domain mismatch")
    common = sorted(set(enumerate_small(a)) & set(enumerate_small(b)))
    if not common:
        return None
    rep = common[0]
    irep = inverse(rep)
    grp = _group_from_elements(len(a.domain), [mult(lam, irep) for lam in common])
    if grp.order() != len(common):
        raise InternalError("labeling intersection is not a coset")
    return LabelingCoset(a.domain, grp, rep)


def label_symmetry(lc):
    """Group of label substitutions relating member labelings of the coset.

    For any two labelings in the coset, the substitution taking the first to
    the second lies in this group, and every group element arises that way.
    """
    k = len(lc.domain)
    ir = inverse(lc.rho)
    return PermGroup(k, [mult(mult(ir, g), lc.rho) for g in lc.group.generators])


class _Side:
    """Precomputed lookups for one hypergraph in a search."""

    def __init__(self, h):
        self.h = h
        self.index = {e: i for i, e in enumerate(h.edges)}
        self.pos = [{v: i for i, v in enumerate(e)} for e in h.edges]
        self.thetas = [label_symmetry(lc) for lc in h.cosets]
        self.rhos = [lc.rho for lc in h.cosets]
        self.inv_rhos = [inverse(lc.rho) for lc in h.cosets]
        self.keys = [
            (len(e), c, lc.size())
            for e, lc, c in zip(h.edges, h.cosets, h.colors)
        ]
        incid = [[] for _ in range(h.n)]
        for i, e in enumerate(h.edges):
            for v in e:
                incid[v].append(self.keys[i])
        self.sigs = [tuple(sorted(ks)) for ks in incid]


class _Search:
    """Backtracking state over the stabilizer chain of the ambient group.

    Candidate maps have the form phi = theta(g(x)) with g drawn from the
    chain.  Slot j of newly/ready lists the vertices and edges that become
    fully decided once levels below j are chosen; slot 0 is decided before
    any choice.
    """

    def __init__(self, s1, s2, group, theta):
        self.s1 = s1
        self.s2 = s2
        self.group = group
        self.theta = theta
        self.n = s1.h.n
        self.levels = group.chain()
        self.m = len(self.levels)
        fixed = []
        for i in range(self.m):
            gens = self.levels[i][2]
            fixed.append(
                frozenset(
                    x for x in range(self.n) if all(s[x] == x for s in gens)
                )
            )
        fixed.append(frozenset(range(self.n)))
        self.newly = [sorted(fixed[0])]
        for j in range(1, self.m + 1):
            self.newly.append(sorted(fixed[j] - fixed[j - 1]))
        self.ready = [[] for _ in range(self.m + 1)]
        for i, e in enumerate(s1.h.edges):
            slot = 0
            while not set(e) <= fixed[slot]:
                slot += 1
            self.ready[slot].append(i)

    def _edge_ok(self, ei, pref):
        s1, s2, theta = self.s1, self.s2, self.theta
        imgs = [theta[pref[x]] for x in s1.h.edges[ei]]
        j = s2.index.get(tuple(sorted(imgs)))
        if j is None:
            return False
        if s1.h.colors[ei] != s2.h.colors[j]:
            return False
        if s1.thetas[ei] != s2.thetas[j]:
            return False
        pos2 = s2.pos[j]
        f = tuple(pos2[y] for y in imgs)
        shift = mult(mult(s1.inv_rhos[ei], f), s2.rhos[j])
        return s1.thetas[ei].contains(shift)

    def _slot_ok(self, j, pref):
        for x in self.newly[j]:
            y = self.theta[pref[x]]
            if self.s1.sigs[x] != self.s2.sigs[y]:
                return False
        return all(self._edge_ok(ei, pref) for ei in self.ready[j])

    def _down(self, i, pref):
        """First full chain element below pref passing all checks."""
        if i == self.m:
            return pref
        _, trans, _ = self.levels[i]
        for w in sorted(trans):
            nxt = mult(trans[w], pref)
            if self._slot_ok(i + 1, nxt):
                out = self._down(i + 1, nxt)
                if out is not None:
                    return out
        return None

    def first_map(self):
        """Least valid map as a chain element, or None."""
        ident = identity_perm(self.n)
        if not self._slot_ok(0, ident):
            return None
        return self._down(0, ident)

    def forced(self, i, w):
        """Valid element of chain level i sending its base point to w."""
        _, trans, _ = self.levels[i]
        nxt = trans[w]
        if not self._slot_ok(i + 1, nxt):
            return None
        return self._down(i + 1, nxt)


def _orbit(v, gens):
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


def _aut_generators(side, group):
    """Generators of the subgroup of `group` preserving side's hypergraph.

    One level per base point of the chain: each candidate image of the base
    point not already reached by this level's generators is searched once,
    so the found elements form level transversals and together generate the
    whole automorphism subgroup.
    """
    search = _Search(side, side, group, identity_perm(side.h.n))
    gens = []
    for i, (b, trans, _) in enumerate(search.levels):
        level = []
        for w in sorted(trans):
            if w == b or w in _orbit(b, level):
                continue
            g = search.forced(i, w)
            if g is not None:
                level.append(g)
        gens.extend(level)
    return gens


def coset_labeled_hypergraph_iso(h1, h2, gd):
    """All isomorphisms h1 -> h2 inside the ambient coset gd, as a Coset.

    gd supplies both the allowed maps (group times representative) and the
    vertex correspondence; it must be nonempty and match the vertex sets.
    """
    if not isinstance(gd, Coset) or gd.is_empty():
        raise InputError("hypergraph iso: ambient coset empty or missing")
    if gd.group.n != h1.n or h1.n != h2.n:
        raise InputError("hypergraph iso: ambient coset domain mismatch")
    empty = Coset.empty(h1.n)
    if len(h1.edges) != len(h2.edges):
        return empty
    s1, s2 = _Side(h1), _Side(h2)
    if sorted(s1.keys) != sorted(s2.keys):
        return empty
    if sorted(s1.sigs) != sorted(s2.sigs):
        return empty
    search = _Search(s1, s2, gd.group, gd.rep)
    g0 = search.first_map()
    if g0 is None:
        return empty
    rep = mult(g0, gd.rep)
    return Coset(PermGroup(h1.n, _aut_generators(s1, gd.group)), rep)


def multiple_labeling_coset_iso(x1, x2):
    """All isomorphisms x1 -> x2 as a Coset, by exhausting bijections.

    The vertex sets must be small; the search space is |V|! candidates.
    """
    if not isinstance(x1, MultipleLabelingCoset) or not isinstance(
        x2, MultipleLabelingCoset
    ):
        raise InputError("labeling-coset iso: bad arguments")
    n = x1.n
    empty = Coset.empty(n)
    if x2.n != n or len(x1.cosets) != len(x2.cosets):
        return empty
    if factorial(n) > ENUMERATE_CAP:
        raise CapacityError("labeling-coset domain too large to enumerate")
    thetas1 = [label_symmetry(lc) for lc in x1.cosets]
    thetas2 = [label_symmetry(lc) for lc in x2.cosets]
    keys1 = sorted((p, t.order()) for p, t in zip(x1.pvals, thetas1))
    keys2 = sorted((p, t.order()) for p, t in zip(x2.pvals, thetas2))
    if keys1 != keys2:
        return empty
    cands = []
    for i, t1 in enumerate(thetas1):
        row = [
            j
            for j, t2 in enumerate(thetas2)
            if x1.pvals[i] == x2.pvals[j] and t1 == t2
        ]
        if not row:
            return empty
        cands.append(row)
    inv_rhos1 = [inverse(lc.rho) for lc in x1.cosets]
    rhos2 = [lc.rho for lc in x2.cosets]
    valid = []
    for phi in permutations(range(n)):
        ok = True
        for i, row in enumerate(cands):
            ir = inv_rhos1[i]
            t1 = thetas1[i]
            if not any(
                t1.contains(mult(mult(ir, phi), rhos2[j])) for j in row
            ):
                ok = False
                break
        if ok:
            valid.append(phi)
    if not valid:
        return empty
    rep = valid[0]
    irep = inverse(rep)
    auts = [mult(p, irep) for p in valid]
    group = _group_from_elements(n, auts)
    if group.order() != len(valid):
        raise InternalError("labeling-coset automorphisms failed to close")
    return Coset(group, rep)
