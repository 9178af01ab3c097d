"""Permutation groups with a deterministic Schreier-Sims stabilizer chain.

Permutations are tuples of images on the domain 0..n-1, composed left to
right: mult(p, q) applies p first, then q.  Cosets are right cosets
group * rep, so every coset element applies a group element first and the
representative last.  The chain construction is deterministic (no random
sifting) so failures reproduce exactly.  A base prefix can be prescribed,
which is how pointwise stabilizers are extracted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, InputError

ENUMERATE_CAP = 10**6
FACTOR_CAP = 10**4


def identity_perm(n):
    return tuple(range(n))


def mult(p, q):
    """Compose: apply p, then q."""
    return tuple(q[i] for i in p)


def inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _check_perm(p, n):
    if len(p) != n or sorted(p) != list(range(n)):
        raise InputError("not a permutation of 0..%d" % (n - 1))


def _orbit_transversal(gens, b, n):
    """BFS orbit of b; trans[w] maps b to w."""
    trans = {b: identity_perm(n)}
    queue = [b]
    head = 0
    while head < len(queue):
        w = queue[head]
        head += 1
        u = trans[w]
        for s in gens:
            img = s[w]
            if img not in trans:
                trans[img] = mult(u, s)
                queue.append(img)
    return trans


class PermGroup:
    """Group given by generators, with a verified stabilizer chain."""

    def __init__(self, n, generators, base_prefix=()):
        self.n = n
        gens = []
        ident = identity_perm(n)
        for g in generators:
            g = tuple(g)
            _check_perm(g, n)
            if g != ident and g not in gens:
                gens.append(g)
        self.generators = tuple(gens)
        prefix = list(base_prefix)
        if len(set(prefix)) != len(prefix) or any(not 0 <= b < n for b in prefix):
            raise InputError("bad base prefix")
        self._build(prefix)
        for g in self.generators:
            if not self.contains(g):
                raise InputError("stabilizer chain failed to verify")

    def _level_gens(self, i):
        base = self._base
        return [
            s
            for s in self._sgs
            if all(s[base[j]] == base[j] for j in range(i))
        ]

    def _build(self, base):
        n = self.n
        sgs = list(self.generators)
        for g in sgs:
            if all(g[b] == b for b in base):
                base.append(min(x for x in range(n) if g[x] != x))
        self._base = base
        self._sgs = sgs
        trans = [None] * len(base)
        ident = identity_perm(n)
        i = len(base) - 1
        while i >= 0:
            gens_i = self._level_gens(i)
            trans[i] = _orbit_transversal(gens_i, base[i], n)
            done = True
            for w in sorted(trans[i]):
                uw = trans[i][w]
                for s in gens_i:
                    g = mult(uw, s)
                    delta = g[base[i]]
                    resid = mult(g, inverse(trans[i][delta]))
                    if resid == ident:
                        continue
                    h, j = self._strip_from(resid, i + 1, trans)
                    if h == ident:
                        continue
                    if all(h[b] == b for b in base):
                        base.append(min(x for x in range(n) if h[x] != x))
                        trans.append(None)
                    sgs.append(h)
                    i = j
                    done = False
                    break
                if not done:
                    break
            if done:
                i -= 1
        self._trans = trans

    def _strip_from(self, p, start, trans):
        base = self._base
        ident = identity_perm(self.n)
        for j in range(start, len(base)):
            if trans[j] is None:
                trans[j] = _orbit_transversal(self._level_gens(j), base[j], self.n)
            w = p[base[j]]
            if w not in trans[j]:
                return p, j
            p = mult(p, inverse(trans[j][w]))
            if p == ident:
                return p, j
        return p, len(base)

    @property
    def base(self):
        return tuple(self._base)

    @property
    def strong_generators(self):
        return tuple(self._sgs)

    def order(self):
        o = 1
        for t in self._trans:
            o *= len(t)
        return o

    def sift(self, p):
        """Residue of p against the chain; identity iff p is a member."""
        p = tuple(p)
        _check_perm(p, self.n)
        resid, _ = self._strip_from(p, 0, self._trans)
        return resid

    def contains(self, p):
        return self.sift(p) == identity_perm(self.n)

    def orbits(self):
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for x, y in enumerate(g):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
        cells = {}
        for x in range(self.n):
            cells.setdefault(find(x), []).append(x)
        return tuple(sorted(tuple(c) for c in cells.values()))

    def orbit_of(self, x):
        for cell in self.orbits():
            if x in cell:
                return cell
        raise InputError("point out of range")

    def chain(self):
        """Stabilizer chain as (base point, transversal, level generators).

        Level i generators fix the first i base points and generate that
        stabilizer; the transversal maps w to an element sending the level's
        base point to w.  The group after the last level is trivial.
        """
        return [
            (b, dict(self._trans[i]), tuple(self._level_gens(i)))
            for i, b in enumerate(self._base)
        ]

    def pointwise_stabilizer(self, a):
        pts = sorted(set(a))
        if any(not 0 <= x < self.n for x in pts):
            raise InputError("stabilizer points out of range")
        if not pts:
            return self
        rebuilt = PermGroup(self.n, self._sgs, base_prefix=pts)
        stab_gens = [
            s
            for s in rebuilt.strong_generators
            if all(s[b] == b for b in pts)
        ]
        return PermGroup(self.n, stab_gens)

    def elements(self, cap=None):
        """All elements in a deterministic order, built from the chain."""
        if cap is not None and self.order() > cap:
            raise CapacityError("group too large to enumerate")
        out = [identity_perm(self.n)]
        for t in reversed(self._trans):
            reps = [t[w] for w in sorted(t)]
            out = [mult(p, u) for u in reps for p in out]
        return sorted(set(out))

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        if self.n != other.n or self.order() != other.order():
            return False
        return all(other.contains(g) for g in self.generators)

    def __hash__(self):
        # weak but consistent with __eq__
        return hash((self.n, self.order()))

    def __repr__(self):
        return "PermGroup(n=%d, order=%d)" % (self.n, self.order())


def bsgs(generators, n=None, base_prefix=()):
    gens = [tuple(g) for g in generators]
    if n is None:
        if not gens:
            raise InputError("bsgs: empty generator list needs explicit n")
        n = len(gens[0])
    return PermGroup(n, gens, base_prefix=base_prefix)


def trivial_group(n):
    return PermGroup(n, [])


def order(g):
    return g.order()


def contains(g, p):
    return g.contains(p)


def orbits(g):
    return g.orbits()


def pointwise_stabilizer(g, a):
    return g.pointwise_stabilizer(a)


@dataclass(frozen=True)
class Coset:
    """Right coset group * rep; rep None marks the empty coset."""

    group: PermGroup
    rep: tuple | None

    @staticmethod
    def empty(n):
        return Coset(trivial_group(n), None)

    @staticmethod
    def from_group(group):
        return Coset(group, identity_perm(group.n))

    def is_empty(self):
        return self.rep is None

    def size(self):
        return 0 if self.rep is None else self.group.order()

    def contains(self, p):
        if self.rep is None:
            return False
        return self.group.contains(mult(p, inverse(self.rep)))


def coset_restrict(c, a):
    """Restrict every coset element to the invariant set a.

    Positions in the result follow the sorted order of a on the source side
    and the sorted order of rep(a) on the target side.
    """
    pts = sorted(set(a))
    if any(not 0 <= x < c.group.n for x in pts):
        raise InputError("coset_restrict: point out of range")
    if c.rep is None:
        return Coset.empty(len(pts))
    pos = {x: i for i, x in enumerate(pts)}
    for g in c.group.generators:
        if any(g[x] not in pos for x in pts):
            raise InputError("coset_restrict: set not invariant under group")
    img = sorted(c.rep[x] for x in pts)
    if len(set(img)) != len(pts):
        raise InputError("coset_restrict: rep not injective on set")
    ipos = {y: i for i, y in enumerate(img)}
    sub_gens = [tuple(pos[g[x]] for x in pts) for g in c.group.generators]
    sub_rep = tuple(ipos[c.rep[x]] for x in pts)
    return Coset(PermGroup(len(pts), sub_gens), sub_rep)


@dataclass(frozen=True)
class LabelingCoset:
    """All labelings delta * rho of a vertex set, for delta in the group.

    domain lists the labeled vertices in sorted order; group and rho act on
    positions into that list, and labels are 0..len(domain)-1.
    """

    domain: tuple
    group: PermGroup
    rho: tuple

    def __post_init__(self):
        k = len(self.domain)
        if self.group.n != k:
            raise InputError("labeling coset: group domain mismatch")
        _check_perm(self.rho, k)

    def size(self):
        return self.group.order()

    def contains_labeling(self, lam):
        """lam: position -> label."""
        return self.group.contains(mult(tuple(lam), inverse(self.rho)))

    def same_coset(self, other):
        if self.domain != other.domain:
            return False
        if self.group.order() != other.group.order():
            return False
        if not self.group.contains(mult(other.rho, inverse(self.rho))):
            return False
        return all(self.group.contains(g) for g in other.group.generators)


def enumerate_small(c, cap=ENUMERATE_CAP):
    """Explicit element list of a Coset or LabelingCoset, canonical order."""
    if isinstance(c, Coset):
        if c.rep is None:
            return []
        if c.group.order() > cap:
            raise CapacityError("coset too large to enumerate")
        return sorted(mult(d, c.rep) for d in c.group.elements())
    if isinstance(c, LabelingCoset):
        if c.group.order() > cap:
            raise CapacityError("labeling coset too large to enumerate")
        return sorted(mult(d, c.rho) for d in c.group.elements())
    raise InputError("enumerate_small: unsupported value")


def _close_under(n, gens):
    closure = {identity_perm(n)}
    queue = [identity_perm(n)]
    while queue:
        p = queue.pop()
        for s in gens:
            q = mult(p, s)
            if q not in closure:
                closure.add(q)
                queue.append(q)
    return closure


def _group_from_elements(n, elems):
    """Greedy small generating set, then a PermGroup."""
    gens = []
    have = {identity_perm(n)}
    for x in sorted(elems):
        if x not in have:
            gens.append(x)
            have = _close_under(n, gens)
    return PermGroup(n, gens)


def _normal_closure(group, seed):
    """Normal closure of seed in group, as an element set (group is small)."""
    gens = list(group.generators)
    closure_gens = [tuple(seed)]
    closure = _close_under(group.n, closure_gens)
    while True:
        new = None
        for h in sorted(closure):
            for g in gens:
                c = mult(mult(inverse(g), h), g)
                if c not in closure:
                    new = c
                    break
            if new:
                break
        if new is None:
            return closure
        closure_gens.append(new)
        closure = _close_under(group.n, closure_gens)


def _quotient_group(parent, normal_set):
    """Coset action of the quotient as a permutation group on coset indices."""
    elems = parent.elements()
    cosets = []
    index = {}
    for x in sorted(elems):
        key = frozenset(mult(h, x) for h in normal_set)
        if key not in index:
            index[key] = len(cosets)
            cosets.append(key)
    gens = []
    for g in parent.generators:
        img = []
        for c in cosets:
            x = min(c)
            img.append(index[frozenset(mult(h, mult(x, g)) for h in normal_set)])
        gens.append(tuple(img))
    return PermGroup(len(cosets), gens)


def composition_factors_small(g, max_order=FACTOR_CAP):
    """Multiset of composition factor orders, by brute-force normal search."""
    if g.order() > max_order:
        raise CapacityError("group too large for composition factors")
    if g.order() == 1:
        return []
    elems = set(g.elements())
    ident = identity_perm(g.n)
    for x in sorted(elems):
        if x == ident:
            continue
        nc = _normal_closure(g, x)
        if len(nc) < len(elems):
            sub = _group_from_elements(g.n, nc)
            quo = _quotient_group(g, nc)
            return sorted(
                composition_factors_small(sub, max_order)
                + composition_factors_small(quo, max_order)
            )
    return [g.order()]
