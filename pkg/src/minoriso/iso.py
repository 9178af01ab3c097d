"""Decomposition-driven isomorphism for graphs excluding a small clique minor.

The solver compares two connected colored graphs by locating a canonical
start class in each, growing it to a closure set whose vertices are pinned
by color refinement, and splitting the rest into components hanging off
small separators.  Components are compared recursively; their boundary
symmetries are re-encoded as a coset-labeled hypergraph on the closure set,
which a backtracking search solves exactly.  The same recursion, run on a
single graph against itself, yields a rooted tree decomposition whose bags
are the closure sets.

Everything here is exact: no step is allowed to report a wrong answer, and
steps whose guarantees need the full closure strength (t at least 3 h^3)
degrade into explicit errors rather than silent misbehavior when run with a
weaker setting.
"""

from dataclasses import dataclass

from .closure import closure_t, components_and_separators, t_for_h
from .engine import BTStruct, automorphism_generators, find_isomorphism
from .errors import CapacityError, InputError, InternalError, MinorDetected
from .graphs import (
    Graph,
    VertexColoring,
    connected_components,
    induced_subgraph,
    is_connected,
)
from .hyper import (
    MultipleLabelingCoset,
    coset_labeled_hypergraph_iso,
    labeled_hypergraph,
    labeling_intersection,
    multiple_labeling_coset_iso,
)
from .initial import find_initial_class
from .perm import (
    Coset,
    LabelingCoset,
    PermGroup,
    coset_restrict,
    enumerate_small,
    inverse,
    mult,
    trivial_group,
)


@dataclass(frozen=True)
class IsoCoset:
    """All isomorphisms between two graphs, restricted to a boundary set.

    src lists the boundary vertices of the first graph in increasing order,
    dst the image boundary in the second (None when no isomorphism exists).
    The coset acts on positions: src[i] is sent to dst[e[i]] for each coset
    element e.
    """

    src: tuple
    dst: tuple
    coset: Coset

    @staticmethod
    def empty(src):
        src = tuple(sorted(src))
        return IsoCoset(src, None, Coset.empty(len(src)))

    def is_empty(self):
        return self.dst is None

    def size(self):
        return self.coset.size()

    def mappings(self):
        """Yield each restricted isomorphism as a src-vertex -> dst-vertex dict."""
        if self.dst is None:
            return
        for e in enumerate_small(self.coset):
            yield {self.src[i]: self.dst[e[i]] for i in range(len(self.src))}

    def contains_mapping(self, m):
        """Whether the boundary bijection m (src vertex -> dst vertex) occurs."""
        if self.dst is None:
            return False
        if set(m) != set(self.src) or set(m.values()) != set(self.dst):
            return False
        dpos = {v: i for i, v in enumerate(self.dst)}
        p = tuple(dpos[m[v]] for v in self.src)
        return self.coset.contains(p)


@dataclass(frozen=True)
class IsoOutcome:
    """Decision of a whole-graph comparison.

    kind is "iso", "non-iso", or "minor-found"; coset carries the boundary
    coset for decided runs, reason a short explanation otherwise.  mapping is
    one concrete vertex map (a tuple of images) when kind is "iso".
    """

    kind: str
    coset: IsoCoset = None
    reason: str = None
    mapping: tuple = None


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted tree decomposition; node ids are 0..len(bags)-1, root is 0.

    bags[i] is the sorted vertex tuple of node i; edges hold (parent, child)
    pairs.
    """

    bags: tuple
    edges: tuple

    def num_nodes(self):
        return len(self.bags)

    def adhesion(self):
        """Largest intersection of two adjacent bags."""
        return max(
            (len(set(self.bags[a]) & set(self.bags[b])) for a, b in self.edges),
            default=0,
        )

    def width(self):
        return max((len(b) for b in self.bags), default=0) - 1


def check_tree_decomposition(g, td):
    """Validate shape, edge coverage, and connected bag occurrences.

    Raises InternalError on any violation; the solver promises all three.
    """
    nn = len(td.bags)
    if nn == 0:
        raise InternalError("tree decomposition has no nodes")
    adj = [[] for _ in range(nn)]
    seen_child = set()
    for a, b in td.edges:
        if not (0 <= a < nn and 0 <= b < nn):
            raise InternalError("tree decomposition edge out of range")
        if b in seen_child or b == 0:
            raise InternalError("tree decomposition node has two parents")
        seen_child.add(b)
        adj[a].append(b)
        adj[b].append(a)
    if len(td.edges) != nn - 1:
        raise InternalError("tree decomposition is not a tree")
    reach, stack = {0}, [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in reach:
                reach.add(w)
                stack.append(w)
    if len(reach) != nn:
        raise InternalError("tree decomposition is disconnected")
    occ = [[] for _ in range(g.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                raise InternalError("bag vertex out of range")
            occ[v].append(i)
    for u, v in g.edges():
        if not any(u in set(td.bags[i]) and v in set(td.bags[i]) for i in range(nn)):
            raise InternalError(f"edge ({u},{v}) not covered by any bag")
    for v in range(g.n):
        nodes = occ[v]
        if not nodes:
            raise InternalError(f"vertex {v} occurs in no bag")
        nset = set(nodes)
        comp, stack = {nodes[0]}, [nodes[0]]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in nset and w not in comp:
                    comp.add(w)
                    stack.append(w)
        if comp != nset:
            raise InternalError(f"occurrence of vertex {v} is disconnected")


class _Ctx:
    """Per-run state: parameters, the subproblem memo, and tree-mode output."""

    def __init__(self, h, t, decomp_only=False):
        self.h = h
        self.t = t
        self.decomp_only = decomp_only
        self.memo = {}
        self.bags = []
        self.tree_edges = []
        self.reseeds = 0

    def new_node(self, parent):
        nid = len(self.bags)
        self.bags.append(None)
        if parent is not None:
            self.tree_edges.append((parent, nid))
        return nid


@dataclass(frozen=True)
class _CompPack:
    """A component plus its separator, cut out and normalized.

    key is a full structural fingerprint (order, edges, flagged colors,
    boundary positions) used to memoize recursive comparisons; idx maps
    local ids back to the parent graph.
    """

    key: tuple
    sub: Graph
    idx: tuple
    sraw: tuple
    sloc: tuple


def _component_pack(g, raw, comp, sep):
    verts = sorted(set(comp) | set(sep))
    sub, idx = induced_subgraph(g, verts)
    sset = set(sep)
    sraw = tuple((raw[idx[v]], 0 if idx[v] in sset else 1) for v in range(sub.n))
    sloc = tuple(v for v in range(sub.n) if idx[v] in sset)
    key = (sub.n, tuple(sub.edges()), sraw, sloc)
    return _CompPack(key, sub, tuple(idx), sraw, sloc)


def _phi(ctx, pa, pb):
    """Memoized recursive boundary coset between two packed components."""
    key = (pa.key, pb.key)
    res = ctx.memo.get(key)
    if res is None:
        res = _solve(ctx, pa.sub, pa.sraw, pb.sub, pb.sraw, pa.sloc, pb.sloc)
        ctx.memo[key] = res
    return res


def _start_class(ctx, g, raw):
    """Canonical start class of a connected colored graph.

    Returns (class color, sorted members).  A certified minor is returned
    as (exception, None) instead of raised, so the caller can compare the
    two sides: the search is deterministic and isomorphism-invariant, hence
    detection on exactly one side separates the graphs.
    """
    try:
        out = find_initial_class(g, VertexColoring.from_raw(raw), ctx.h, ctx.t)
    except MinorDetected as exc:
        return exc, None
    c = out.chi_prime.get(out.x[0], out.x[0])
    x = tuple(sorted(out.x_map[v] for v in out.x))
    return c, x


def _check_separators(ctx, comps):
    """At full closure strength a separator of size >= h certifies a minor."""
    if ctx.t < 3 * ctx.h ** 3:
        return
    for _, sep in comps:
        if len(sep) >= ctx.h:
            raise MinorDetected(
                f"component separator of size {len(sep)} at closure strength "
                f"t={ctx.t} forces a K_{ctx.h} minor"
            )


def _set_bag(ctx, node, org1, verts):
    if node is not None:
        ctx.bags[node] = tuple(sorted(org1[v] for v in verts))


def _restrict_to_boundary(uni, d1s, d2s, s1, s2):
    """Cut a closure-set coset down to the boundary, with image checks."""
    src = tuple(sorted(s1))
    pos1 = {v: i for i, v in enumerate(d1s)}
    spos = [pos1[v] for v in src]
    img = sorted(uni.rep[p] for p in spos)
    dst = tuple(d2s[q] for q in img)
    if set(dst) != set(s2):
        raise InternalError("isomorphisms moved the boundary off its image class")
    try:
        rc = coset_restrict(uni, spos)
    except InputError as exc:
        raise InternalError(f"boundary restriction failed: {exc}")
    return IsoCoset(src, dst, rc)


def _base_case(ctx, g1, raw1, g2, raw2, s1, s2, node, org1):
    """Below h vertices the direct color-refined backtracking search is exact."""
    src = tuple(sorted(s1))
    _set_bag(ctx, node, org1, range(g1.n))
    bt1 = BTStruct(g1, tuple(raw1))
    bt2 = BTStruct(g2, tuple(raw2))
    rep = find_isomorphism(bt1, bt2)
    if rep is None:
        return IsoCoset.empty(src)
    gens = automorphism_generators(bt1)
    uni = Coset(PermGroup(g1.n, gens), rep)
    return _restrict_to_boundary(uni, list(range(g1.n)), list(range(g2.n)), s1, s2)


def _flag_closure(raw, d):
    ds = set(d)
    return tuple((raw[v], 1 if v in ds else 0) for v in range(len(raw)))


def _closure_pair(ctx, g1, raw1, g2, raw2):
    """Start classes, closure sets, and the re-seeding loop, in lockstep.

    Returns (raw1, raw2, x1, x2, d1, d2, comps1, comps2) or None when an
    invariant mismatch separates the graphs; raises MinorDetected when a
    minor is certified on both sides (or by a large separator).
    """
    n = g1.n
    c1, x1 = _start_class(ctx, g1, raw1)
    c2, x2 = _start_class(ctx, g2, raw2)
    if x1 is None and x2 is None:
        raise c1
    if x1 is None or x2 is None:
        return None
    if c1 != c2 or len(x1) != len(x2):
        return None
    d1 = closure_t(g1, VertexColoring.from_raw(raw1), None, x1, ctx.t).d
    d2 = closure_t(g2, VertexColoring.from_raw(raw2), None, x2, ctx.t).d
    while True:
        if len(d1) != len(d2):
            return None
        comps1 = components_and_separators(g1, d1)
        comps2 = components_and_separators(g2, d2)
        _check_separators(ctx, comps1)
        _check_separators(ctx, comps2)
        if len(comps1) != len(comps2):
            return None
        if not (len(comps1) == 1 and len(d1) < ctx.h):
            return (raw1, raw2, x1, x2, d1, d2, comps1, comps2)
        # one small component: refold closure membership into the colors and
        # re-seed from a start class of the outside part
        ctx.reseeds += 1
        raw1 = _flag_closure(raw1, d1)
        raw2 = _flag_closure(raw2, d2)
        sub1, idx1 = induced_subgraph(g1, sorted(set(range(n)) - set(d1)))
        sub2, idx2 = induced_subgraph(g2, sorted(set(range(n)) - set(d2)))
        c1, x1loc = _start_class(ctx, sub1, tuple(raw1[v] for v in idx1))
        c2, x2loc = _start_class(ctx, sub2, tuple(raw2[v] for v in idx2))
        if x1loc is None and x2loc is None:
            raise c1
        if x1loc is None or x2loc is None:
            return None
        if c1 != c2 or len(x1loc) != len(x2loc):
            return None
        x1 = tuple(sorted(idx1[v] for v in x1loc))
        x2 = tuple(sorted(idx2[v] for v in x2loc))
        nd1 = closure_t(g1, VertexColoring.from_raw(raw1), None, x1, ctx.t).d
        nd2 = closure_t(g2, VertexColoring.from_raw(raw2), None, x2, ctx.t).d
        if not (set(nd1) > set(d1) and set(nd2) > set(d2)):
            raise InternalError("re-seeded closure failed to grow")
        d1, d2 = nd1, nd2


def _uf_find(par, x):
    while par[x] != x:
        par[x] = par[par[x]]
        x = par[x]
    return x


def _classify_components(ctx, packs, units):
    """Partition components of both graphs by mutual isomorphism.

    Returns (class index per unit, boundary coset per unit against its class
    representative).  Cheap fingerprints prune the pair matrix before any
    recursion.
    """
    par = {u: u for u in units}
    buckets = {}
    for u in units:
        pk = packs[u]
        buckets.setdefault((pk.sub.n, tuple(sorted(pk.sraw)), len(pk.key[1]), len(pk.sloc)), []).append(u)
    for group in buckets.values():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                a, b = group[i], group[j]
                if _uf_find(par, a) == _uf_find(par, b):
                    continue
                if not _phi(ctx, packs[a], packs[b]).is_empty():
                    par[_uf_find(par, a)] = _uf_find(par, b)
    roots = {}
    for u in units:
        roots.setdefault(_uf_find(par, u), []).append(u)
    classes = sorted((sorted(ms) for ms in roots.values()), key=lambda ms: ms[0])
    cls_of, lam = {}, {}
    for ci, members in enumerate(classes):
        rep = members[0]
        for u in members:
            cls_of[u] = ci
            lam[u] = _phi(ctx, packs[u], packs[rep])
            if lam[u].is_empty():
                raise InternalError("component class member lost its representative")
    return cls_of, lam


def _boundary_structures(comps_by_side, packs, cls_of, lam):
    """One multiple-labeling-coset instance per distinct separator, per side.

    Components sharing a separator contribute their recursive boundary
    cosets; equal cosets are pooled and weighted by the multiset of their
    component classes, ranked jointly across both sides so the weights are
    comparable integers.
    """
    entries_by_key = {}
    for side in (1, 2):
        groups = {}
        for j, (_, sep) in enumerate(comps_by_side[side]):
            groups.setdefault(tuple(sep), []).append(j)
        for sep, js in groups.items():
            s = len(sep)
            entries = []
            for j in js:
                u = (side, j)
                lc = LabelingCoset(tuple(range(s)), lam[u].coset.group, lam[u].coset.rep)
                for held in entries:
                    if held[0].same_coset(lc):
                        held[1].append(cls_of[u])
                        break
                else:
                    entries.append((lc, [cls_of[u]]))
            entries_by_key[(side, sep)] = entries
    weights = sorted(
        {tuple(sorted(ms)) for entries in entries_by_key.values() for _, ms in entries}
    )
    wrank = {w: i for i, w in enumerate(weights)}
    structs = {}
    for (side, sep), entries in entries_by_key.items():
        structs[(side, sep)] = MultipleLabelingCoset(
            len(sep),
            tuple(lc for lc, _ in entries),
            tuple(wrank[tuple(sorted(ms))] for _, ms in entries),
        )
    return structs


def _classify_separators(structs):
    """Partition separators of both graphs by boundary-structure isomorphism.

    Returns (class index per separator key, label coset per key against its
    class representative).
    """
    punits = sorted(structs)
    pair = {}

    def multi(a, b):
        if (a, b) not in pair:
            pair[(a, b)] = multiple_labeling_coset_iso(structs[a], structs[b])
        return pair[(a, b)]

    par = {p: p for p in punits}
    for i in range(len(punits)):
        for j in range(i + 1, len(punits)):
            a, b = punits[i], punits[j]
            if _uf_find(par, a) == _uf_find(par, b):
                continue
            if not multi(a, b).is_empty():
                par[_uf_find(par, a)] = _uf_find(par, b)
    roots = {}
    for p in punits:
        roots.setdefault(_uf_find(par, p), []).append(p)
    classes = sorted((sorted(ms) for ms in roots.values()), key=lambda ms: ms[0])
    qidx, seplabel = {}, {}
    for qi, members in enumerate(classes):
        rep = members[0]
        for p in members:
            qidx[p] = qi
            seplabel[p] = multi(p, rep)
            if seplabel[p].is_empty():
                raise InternalError("separator class member lost its representative")
    return qidx, seplabel


_SWAP2 = PermGroup(2, [(1, 0)])


def _static_parts(g, d_sorted, pos, comps, qidx, seplabel, side):
    """Hyperedge parts that do not depend on the individualized vertex:
    graph edges inside the closure set and one part per separator."""
    parts = {}
    sub, _ = induced_subgraph(g, d_sorted)
    for u, v in sub.edges():
        dom = (u, v) if u < v else (v, u)
        lc = LabelingCoset(dom, _SWAP2, (0, 1))
        parts.setdefault(dom, []).append((lc, (0, 0)))
    seen = set()
    for _, sep in comps:
        sep = tuple(sep)
        if sep in seen:
            continue
        seen.add(sep)
        dom = tuple(sorted(pos[v] for v in sep))
        sl = seplabel[(side, sep)]
        lc = LabelingCoset(dom, sl.group, sl.rep)
        parts.setdefault(dom, []).append((lc, (1, qidx[(side, sep)])))
    return parts


def _assemble(n, static_parts, d_sorted, raw, vmark):
    """Add the individualized vertex colors, then merge coincident parts.

    Returns a list of (domain, merged coset, color key); coincident parts
    intersect their cosets and pool their colors."""
    parts = {dom: list(held) for dom, held in static_parts.items()}
    for p in range(n):
        v = d_sorted[p]
        lc = LabelingCoset((p,), trivial_group(1), (0,))
        parts.setdefault((p,), []).append((lc, (2, (raw[v], 1 if v == vmark else 0))))
    out = []
    for dom in sorted(parts):
        held = parts[dom]
        lc = held[0][0]
        for other, _ in held[1:]:
            lc = labeling_intersection(lc, other)
            if lc is None:
                raise InternalError("coincident hyperedge labels do not intersect")
        out.append((dom, lc, tuple(sorted(fam for _, fam in held))))
    return out


def _rank_colors(items1, items2):
    keys = sorted({ck for _, _, ck in items1} | {ck for _, _, ck in items2})
    rank = {ck: i for i, ck in enumerate(keys)}
    return (
        [(dom, lc, rank[ck]) for dom, lc, ck in items1],
        [(dom, lc, rank[ck]) for dom, lc, ck in items2],
    )


def _union_cosets(n, found):
    """Exact union of cosets of the same group, as one coset of the
    generated overgroup; every input must sift back in."""
    rep0 = found[0].rep
    gens = []
    for res in found:
        gens.extend(res.group.generators)
    for res in found[1:]:
        gens.append(mult(res.rep, inverse(rep0)))
    uni = Coset(PermGroup(n, gens), rep0)
    for res in found:
        if not uni.contains(res.rep):
            raise InternalError("isomorphism union failed to close")
    return uni


def _solve(ctx, g1, raw1, g2, raw2, s1, s2, node=None, org1=None):
    """Boundary-restricted isomorphism coset between two colored graphs.

    s1 and s2 are the boundary sets (unions of color classes on each side);
    the result restricts every color-preserving isomorphism to s1.  In tree
    mode (ctx.decomp_only) only the closure sets are collected, into the
    node ids handed down through `node`.
    """
    src = tuple(sorted(s1))
    n = g1.n
    if g2.n != n or sorted(raw1) != sorted(raw2):
        return IsoCoset.empty(src)
    if n == 0:
        _set_bag(ctx, node, org1, ())
        return IsoCoset((), (), Coset.from_group(trivial_group(0)))
    if n < ctx.h:
        return _base_case(ctx, g1, raw1, g2, raw2, s1, s2, node, org1)

    got = _closure_pair(ctx, g1, tuple(raw1), g2, tuple(raw2))
    if got is None:
        return IsoCoset.empty(src)
    raw1, raw2, x1, x2, d1, d2, comps1, comps2 = got
    if not (set(s1) <= set(d1) and set(s2) <= set(d2)):
        # boundary classes of size at most t are always absorbed
        raise CapacityError(
            "boundary class too large to pin at this closure strength, "
            "rerun with a larger t"
        )
    if not (set(x1) <= set(d1) and set(x2) <= set(d2)):
        raise InternalError("start class escaped the closure set")
    _set_bag(ctx, node, org1, d1)

    comps_by_side = {1: comps1, 2: comps2}
    packs = {}
    units = []
    for side in (1, 2):
        g, raw = (g1, raw1) if side == 1 else (g2, raw2)
        for j, (comp, sep) in enumerate(comps_by_side[side]):
            pk = _component_pack(g, raw, comp, sep)
            if pk.sub.n >= n:
                raise CapacityError(
                    "component subproblem did not shrink; the separator is too "
                    "large for this closure strength, rerun with a larger t"
                )
            packs[(side, j)] = pk
            units.append((side, j))

    if ctx.decomp_only:
        for j, _ in enumerate(comps1):
            pk = packs[(1, j)]
            child = ctx.new_node(node)
            corg = tuple(org1[v] for v in pk.idx)
            _solve(ctx, pk.sub, pk.sraw, pk.sub, pk.sraw, pk.sloc, pk.sloc,
                   node=child, org1=corg)
        return IsoCoset(src, src, Coset.from_group(trivial_group(len(src))))

    if units:
        cls_of, lam = _classify_components(ctx, packs, units)
        structs = _boundary_structures(comps_by_side, packs, cls_of, lam)
        qidx, seplabel = _classify_separators(structs)
    else:
        qidx, seplabel = {}, {}

    d1s, d2s = sorted(d1), sorted(d2)
    pos1 = {v: i for i, v in enumerate(d1s)}
    pos2 = {v: i for i, v in enumerate(d2s)}
    nd = len(d1s)
    static1 = _static_parts(g1, d1s, pos1, comps1, qidx, seplabel, 1)
    static2 = _static_parts(g2, d2s, pos2, comps2, qidx, seplabel, 2)

    v1 = x1[0]
    sub_d1, _ = induced_subgraph(g1, d1s)
    sub_d2, _ = induced_subgraph(g2, d2s)
    bt1 = BTStruct(sub_d1, tuple((raw1[v], 1 if v == v1 else 0) for v in d1s))
    ambient = PermGroup(nd, automorphism_generators(bt1))

    found = []
    for v2 in x2:
        bt2 = BTStruct(sub_d2, tuple((raw2[v], 1 if v == v2 else 0) for v in d2s))
        rep = find_isomorphism(bt1, bt2)
        if rep is None:
            continue
        items1 = _assemble(nd, static1, d1s, raw1, v1)
        items2 = _assemble(nd, static2, d2s, raw2, v2)
        items1, items2 = _rank_colors(items1, items2)
        h1 = labeled_hypergraph(nd, items1)
        h2 = labeled_hypergraph(nd, items2)
        res = coset_labeled_hypergraph_iso(h1, h2, Coset(ambient, rep))
        if not res.is_empty():
            found.append(res)
    if not found:
        return IsoCoset.empty(src)
    uni = _union_cosets(nd, found)
    return _restrict_to_boundary(uni, d1s, d2s, s1, s2)


def _check_params(h, t):
    if not isinstance(h, int) or h < 2:
        raise InputError("h must be an integer >= 2")
    t = t_for_h(h) if t is None else t
    if not isinstance(t, int) or t < h:
        raise InputError("t must be an integer >= h")
    return t


def _raw_of(g, chi, name):
    if chi is None:
        return (0,) * g.n
    if len(chi.colors) != g.n:
        raise InputError(f"{name}: coloring does not match graph")
    return tuple(chi.colors)


def iso_restricted(g1, chi1, g2, chi2, c0, h, t=None):
    """Isomorphisms of two connected colored graphs, restricted to a class.

    c0 names a color; the boundary sets are its classes on each side (empty
    when c0 is None or unused).  Both colorings must draw from one shared
    palette.  Returns an IsoCoset; raises MinorDetected when the search
    certifies a K_h minor.
    """
    t = _check_params(h, t)
    raw1 = _raw_of(g1, chi1, "iso_restricted")
    raw2 = _raw_of(g2, chi2, "iso_restricted")
    if not is_connected(g1) or not is_connected(g2):
        raise InputError("iso_restricted: graphs must be connected")
    s1 = tuple(v for v in range(g1.n) if c0 is not None and raw1[v] == c0)
    s2 = tuple(v for v in range(g2.n) if c0 is not None and raw2[v] == c0)
    ctx = _Ctx(h, t)
    return _solve(ctx, g1, raw1, g2, raw2, s1, s2)


def is_isomorphic(g1, chi1, g2, chi2, h, t=None):
    """Decide color-preserving isomorphism of two (possibly disconnected)
    colored graphs, or report a certified K_h minor.

    Returns an IsoOutcome with kind "iso", "non-iso", or "minor-found".
    """
    t = _check_params(h, t)
    raw1 = _raw_of(g1, chi1, "is_isomorphic")
    raw2 = _raw_of(g2, chi2, "is_isomorphic")
    if g1.n != g2.n or sorted(raw1) != sorted(raw2):
        return IsoOutcome("non-iso", reason="vertex or color counts differ")
    comps1 = connected_components(g1)
    comps2 = connected_components(g2)
    if len(comps1) != len(comps2):
        return IsoOutcome("non-iso", reason="component counts differ")
    ctx = _Ctx(h, t)

    def pack(g, raw, comp):
        sub, idx = induced_subgraph(g, comp)
        return sub, tuple(raw[v] for v in idx)

    def pack_idx(g, comp):
        return induced_subgraph(g, comp)[1]

    mapping = [None] * g1.n
    try:
        left = [pack(g1, raw1, c) for c in comps1]
        right = [pack(g2, raw2, c) for c in comps2]
        idx1s = [pack_idx(g1, c) for c in comps1]
        idx2s = [pack_idx(g2, c) for c in comps2]
        unmatched = list(range(len(right)))
        for i, (sub1, sraw1) in enumerate(left):
            hit = None
            for j in unmatched:
                sub2, sraw2 = right[j]
                if not _solve(ctx, sub1, sraw1, sub2, sraw2, (), ()).is_empty():
                    hit = j
                    break
            if hit is None:
                return IsoOutcome("non-iso", reason="a component has no match")
            unmatched.remove(hit)
            # concrete representative from the backtracking engine; the
            # recursive solver already certified one exists
            sub2, sraw2 = right[hit]
            rep = find_isomorphism(BTStruct(sub1, sraw1), BTStruct(sub2, sraw2))
            if rep is None:
                raise InternalError("engine found no map for a matched component")
            for p, q in enumerate(rep):
                mapping[idx1s[i][p]] = idx2s[hit][q]
    except MinorDetected as exc:
        return IsoOutcome("minor-found", reason=exc.reason)
    trivial = IsoCoset((), (), Coset.from_group(trivial_group(0)))
    return IsoOutcome("iso", coset=trivial, mapping=tuple(mapping))


def tree_decomposition(g, chi, h, t=None):
    """Rooted tree decomposition of a connected colored graph.

    Bags are the closure sets along the solver's recursion; the result is
    validated before it is returned.  Raises MinorDetected when the search
    certifies a K_h minor instead.
    """
    t = _check_params(h, t)
    raw = _raw_of(g, chi, "tree_decomposition")
    if not is_connected(g):
        raise InputError("tree_decomposition: graph must be connected")
    ctx = _Ctx(h, t, decomp_only=True)
    root = ctx.new_node(None)
    _solve(ctx, g, raw, g, raw, (), (), node=root, org1=tuple(range(g.n)))
    if any(b is None for b in ctx.bags):
        raise InternalError("tree decomposition left an unfilled bag")
    td = TreeDecomposition(tuple(ctx.bags), tuple(ctx.tree_edges))
    check_tree_decomposition(g, td)
    if t >= 3 * h ** 3 and td.adhesion() > h - 1:
        raise InternalError("adhesion exceeded its bound at full closure strength")
    return td
