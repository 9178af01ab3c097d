"""Packing vertex-disjoint subgraphs that agree with a colored tree, and
extracting topological clique witnesses from them.

A subgraph agrees with a colored tree when it has exactly one vertex per tree
color and realizes exactly the tree's color adjacencies.  Families of disjoint
agreeing subgraphs are grown one member at a time.  Each growth step walks the
tree segment by segment; a segment is a maximal path whose interior colors
have degree 2.  Augmenting a segment is a unit-capacity flow step: forward
edges leave the family, and landing on a used vertex forces a backward step
along that member's own segment edge.  Before committing to a segment end we
intersect the extension sets of the deeper branches, computed by running the
same reachability backwards, so a chosen anchor is always completable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InputError, InternalError
from .graphs import Graph, check_biregular, connected_components
from .refine import color_refine


@dataclass(frozen=True)
class ColoredTree:
    """Tree over color-class nodes; colors[i] is the graph color of node i."""

    tree: Graph
    colors: tuple

    def __post_init__(self):
        if len(self.colors) != self.tree.n:
            raise InputError("colored tree: color list does not match tree")
        if len(set(self.colors)) != self.tree.n:
            raise InputError("colored tree: node colors must be distinct")
        if self.tree.n > 0 and len(connected_components(self.tree)) != 1:
            raise InputError("colored tree: not a tree")
        if self.tree.n > 0 and self.tree.num_edges != self.tree.n - 1:
            raise InputError("colored tree: not a tree")

    def node_of_color(self, c):
        return self.colors.index(c)


def tree_load(tree):
    """The packing denominator: 2 * #nodes of degree <= 1 + #nodes of
    degree >= 3."""
    low = sum(1 for v in range(tree.tree.n) if tree.tree.degree(v) <= 1)
    high = sum(1 for v in range(tree.tree.n) if tree.tree.degree(v) >= 3)
    return 2 * low + high


@dataclass(frozen=True)
class AgreeingTreeFamily:
    tree: ColoredTree
    members: tuple  # each member: tuple of (color, vertex) sorted by color

    def member_dicts(self):
        return [dict(m) for m in self.members]

    def guarantee(self, m):
        return m // max(tree_load(self.tree), 1)


def _freeze_member(d):
    return tuple(sorted(d.items()))


def member_agrees(g, chi, tree, member):
    """Independent agreement check for one member (color -> vertex dict)."""
    if set(member) != set(tree.colors):
        return False
    for c, v in member.items():
        if not (0 <= v < g.n) or chi.colors[v] != c:
            return False
    if len(set(member.values())) != len(member):
        return False
    for a, b in tree.tree.edges():
        if not g.has_edge(member[tree.colors[a]], member[tree.colors[b]]):
            return False
    return True


def family_is_valid(g, chi, tree, members):
    seen = set()
    for m in members:
        if not member_agrees(g, chi, tree, m):
            return False
        vs = set(m.values())
        if vs & seen:
            return False
        seen |= vs
    return True


def _classes_by_color(chi):
    out = {}
    for v, c in enumerate(chi.colors):
        out.setdefault(c, []).append(v)
    return out


def _layer_reach(g, layers, fam_paths, starts, targets=None, want_path=False):
    """Residual reachability for the layered path structure.

    layers: list of vertex lists (pairwise disjoint color classes).
    fam_paths: vertex-disjoint family paths, one vertex per layer.
    starts: free vertices in layers[0].

    want_path False: sorted free vertices of the last layer reachable
    (within targets if given).  want_path True: (goal, add_arcs, del_arcs)
    for the first target reached, or None.
    """
    s = len(layers)
    layer_of = {}
    for i, lay in enumerate(layers):
        for v in lay:
            layer_of[v] = i
    used_succ, used_pred, used = {}, {}, set()
    for p in fam_paths:
        used.update(p)
        for i in range(s - 1):
            used_succ[p[i]] = p[i + 1]
            used_pred[p[i + 1]] = p[i]
    targset = None if targets is None else set(targets)
    parent = {}
    seen = set()
    dq = deque()
    for x in sorted(starts):
        if x in used:
            raise InternalError("augmentation start is already used")
        seen.add(x)
        parent[x] = None
        dq.append(x)
    reached = []
    if s == 1:
        hits = [x for x in sorted(starts) if targset is None or x in targset]
        if want_path:
            return (hits[0], [], []) if hits else None
        return hits
    goal = None
    while dq and goal is None:
        v = dq.popleft()
        i = layer_of[v]
        if i == s - 1:
            continue
        nxt = set(layers[i + 1])
        for w in sorted(g.adj[v]):
            if w not in nxt:
                continue
            if used_succ.get(v) == w:
                continue
            if w in used:
                u = used_pred.get(w)
                if u is not None and u not in seen:
                    seen.add(u)
                    parent[u] = (v, w)
                    dq.append(u)
            else:
                if w in seen:
                    continue
                seen.add(w)
                if i + 1 == s - 1:
                    if targset is None or w in targset:
                        parent[w] = (v, None)
                        if want_path:
                            goal = w
                            break
                        reached.append(w)
                else:
                    parent[w] = (v, None)
                    dq.append(w)
    if not want_path:
        return sorted(reached)
    if goal is None:
        return None
    add_arcs, del_arcs = [], []
    cur = goal
    while parent[cur] is not None:
        pv, via = parent[cur]
        if via is None:
            add_arcs.append((pv, cur))
        else:
            add_arcs.append((pv, via))
            del_arcs.append((cur, via))
        cur = pv
    return goal, add_arcs, del_arcs


def _apply_augment(layers, fam_paths, add_arcs, del_arcs):
    """Symmetric difference, then decompose the new flow into paths."""
    s = len(layers)
    layer_of = {}
    for i, lay in enumerate(layers):
        for v in lay:
            layer_of[v] = i
    succ = {}
    for p in fam_paths:
        for i in range(s - 1):
            succ[p[i]] = p[i + 1]
    for u, w in del_arcs:
        if succ.get(u) != w:
            raise InternalError("augmentation removed a non-family arc")
        del succ[u]
    for u, w in add_arcs:
        if u in succ:
            raise InternalError("augmentation arc collision")
        succ[u] = w
    indeg = {}
    for u, w in succ.items():
        indeg[w] = indeg.get(w, 0) + 1
        if indeg[w] > 1:
            raise InternalError("augmentation broke vertex capacity")
    paths = []
    starts = [v for v in layers[0] if v in succ]
    for v in sorted(starts):
        path = [v]
        while layer_of[path[-1]] < s - 1:
            if path[-1] not in succ:
                raise InternalError("augmented flow path is incomplete")
            path.append(succ[path[-1]])
        paths.append(tuple(path))
    if len(succ) != sum(len(p) - 1 for p in paths):
        raise InternalError("augmented flow has stray arcs")
    return paths


def _validate_path_blocks(g, classes, colors):
    for a, b in zip(colors, colors[1:]):
        if a not in classes or b not in classes:
            raise InputError("path color with empty class")
        reg = check_biregular(g, classes[a], classes[b])
        if reg is None or reg[0] == 0 or reg[1] == 0:
            raise InputError("path block is not non-empty biregular")


def augment_path_family(g, chi, path_colors, family, x, targets=None):
    """Grow a disjoint family of paths agreeing with the colored path by one.

    family: list of color->vertex dicts.  x: candidate start vertices in the
    first color class, none used by the family.  targets optionally restricts
    admissible final vertices.  Returns the enlarged family or None.
    """
    path_colors = list(path_colors)
    if len(set(path_colors)) != len(path_colors):
        raise InputError("path colors must be distinct")
    classes = _classes_by_color(chi)
    if any(c not in classes for c in path_colors):
        raise InputError("path color with empty class")
    _validate_path_blocks(g, classes, path_colors)
    tree = ColoredTree(
        Graph(len(path_colors), list(zip(range(len(path_colors) - 1), range(1, len(path_colors))))),
        tuple(path_colors),
    )
    members = [dict(m) for m in family]
    if not family_is_valid(g, chi, tree, members):
        raise InputError("family is not a valid disjoint agreeing family")
    layers = [classes[c] for c in path_colors]
    fam_paths = [tuple(m[c] for c in path_colors) for m in members]
    used = set()
    for p in fam_paths:
        used.update(p)
    xs = sorted(set(x))
    if any(chi.colors[v] != path_colors[0] for v in xs):
        raise InputError("start vertices must lie in the first color class")
    if any(v in used for v in xs):
        raise InputError("start vertices must be unused")
    got = _layer_reach(g, layers, fam_paths, xs, targets=targets, want_path=True)
    if got is None:
        return None
    _, add_arcs, del_arcs = got
    if len(path_colors) == 1:
        new_paths = fam_paths + [(got[0],)]
    else:
        new_paths = _apply_augment(layers, fam_paths, add_arcs, del_arcs)
    return [dict(zip(path_colors, p)) for p in new_paths]


def _peel_segment(tree, start, step):
    """Nodes start, step, ... extended while interior degree is 2."""
    seg = [start, step]
    while tree.tree.degree(seg[-1]) == 2:
        nxts = [u for u in tree.tree.adj[seg[-1]] if u != seg[-2]]
        seg.append(nxts[0])
    return seg


def _segment_family(tree, members, seg):
    """Members covering the segment (all but the one missing its interior)."""
    c1 = tree.colors[seg[0]]
    c2 = tree.colors[seg[1]]
    fam, grower = [], None
    for m in members:
        if c2 in m:
            fam.append(m)
        elif c1 in m:
            if grower is not None:
                raise InternalError("two partial members at one segment")
            grower = m
        else:
            raise InternalError("member misses the segment anchor")
    if grower is None:
        raise InternalError("no partial member at segment")
    return fam, grower


def _deep_targets(g, tree, classes, members, node, banned):
    """Free vertices of node's class admissible for every deeper branch."""
    c = tree.colors[node]
    used = {m[c] for m in members if c in m}
    cand = set(classes.get(c, [])) - used
    for d in sorted(tree.tree.adj[node]):
        if d == banned:
            continue
        w = _branch_wset(g, tree, classes, members, node, d)
        cand &= w
        if not cand:
            break
    return cand


def _branch_wset(g, tree, classes, members, start, step):
    """Anchors in start's class from which the branch through step can be
    added disjointly: reversed segment reachability."""
    seg = _peel_segment(tree, start, step)
    deep = _deep_targets(g, tree, classes, members, seg[-1], seg[-2])
    if not deep:
        return set()
    colors = [tree.colors[u] for u in seg]
    layers = [classes[c] for c in colors]
    fam = [
        tuple(m[c] for c in colors)
        for m in members
        if colors[1] in m
    ]
    rev_layers = list(reversed(layers))
    rev_fam = [tuple(reversed(p)) for p in fam]
    return set(_layer_reach(g, rev_layers, rev_fam, sorted(deep)))


def _build_segment(g, tree, classes, members, seg):
    """Augment one segment; returns the updated member list."""
    colors = [tree.colors[u] for u in seg]
    layers = [classes[c] for c in colors]
    fam, grower = _segment_family(tree, members, seg)
    fam_paths = [tuple(m[c] for c in colors) for m in fam]
    x = grower[colors[0]]
    targets = _deep_targets(g, tree, classes, members, seg[-1], seg[-2])
    got = _layer_reach(g, layers, fam_paths, [x], targets=sorted(targets), want_path=True)
    if got is None:
        raise InternalError("segment augmentation failed for a certified anchor")
    _, add_arcs, del_arcs = got
    new_paths = _apply_augment(layers, fam_paths, add_arcs, del_arcs)
    end_node, prev_node = seg[-1], seg[-2]
    beyond = _nodes_beyond(tree, end_node, prev_node)
    beyond_colors = {tree.colors[u] for u in beyond}
    interior = set(colors[1:])
    donors = {}
    for m in fam:
        donors[m[colors[-1]]] = m
    by_start = {p[0]: p for p in new_paths}
    out = []
    for m in members:
        v = m[colors[0]]
        p = by_start.get(v)
        if p is None:
            raise InternalError("member start lost its flow path")
        keep = {c: w for c, w in m.items() if c not in interior and c not in beyond_colors}
        keep.update(zip(colors, p))
        donor = donors.get(p[-1])
        if donor is not None:
            for c in beyond_colors:
                if c in donor:
                    keep[c] = donor[c]
        out.append(keep)
    return out


def _nodes_beyond(tree, node, banned):
    seen = {node, banned}
    stack = [u for u in tree.tree.adj[node] if u != banned]
    found = []
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        found.append(u)
        stack.extend(tree.tree.adj[u])
    return found


def _extend_family(g, tree, classes, members):
    """One more disjoint agreeing tree, or None when no extension exists."""
    if tree.tree.n == 0:
        return None
    root = min(
        range(tree.tree.n), key=lambda u: (tree.tree.degree(u) > 1, u)
    )
    if tree.tree.n == 1:
        c = tree.colors[root]
        used = {m[c] for m in members if c in m}
        free = sorted(set(classes.get(c, [])) - used)
        if not free:
            return None
        return members + [{c: free[0]}]
    w = _deep_targets(g, tree, classes, members, root, banned=None)
    if not w:
        return None
    cur = members + [{tree.colors[root]: min(w)}]
    pending = deque((root, d) for d in sorted(tree.tree.adj[root]))
    while pending:
        start, step = pending.popleft()
        seg = _peel_segment(tree, start, step)
        cur = _build_segment(g, tree, classes, cur, seg)
        for d in sorted(tree.tree.adj[seg[-1]]):
            if d != seg[-2]:
                pending.append((seg[-1], d))
    return cur


def pack_agreeing_trees(g, chi, tree):
    """Pack disjoint agreeing trees greedily until no extension remains."""
    classes = _classes_by_color(chi)
    for a, b in tree.tree.edges():
        ca, cb = tree.colors[a], tree.colors[b]
        if ca not in classes or cb not in classes:
            raise InputError("tree color with empty class")
        reg = check_biregular(g, classes[ca], classes[cb])
        if reg is None or reg[0] == 0 or reg[1] == 0:
            raise InputError("tree block is not non-empty biregular")
    if tree.tree.n > 0 and tree.colors[0] not in classes:
        # single-node trees have no edges; still need the class to exist
        if tree.tree.n == 1:
            raise InputError("tree color with empty class")
    members = []
    while True:
        nxt = _extend_family(g, tree, classes, members)
        if nxt is None:
            break
        members = nxt
        if not family_is_valid(g, chi, tree, members):
            raise InternalError("packed family failed validation")
    return AgreeingTreeFamily(tree, tuple(_freeze_member(m) for m in members))


@dataclass(frozen=True)
class SteinerTree:
    vertices: tuple
    edges: tuple


def steiner_tree(h, terminals):
    """A subgraph-minimal tree containing all terminals: BFS tree, then
    repeated removal of non-terminal leaves."""
    terms = sorted(set(terminals))
    if any(not 0 <= v < h.n for v in terms):
        raise InputError("steiner terminal out of range")
    if not terms:
        return SteinerTree((), ())
    if len(connected_components(h)) != 1:
        raise InputError("steiner host graph is disconnected")
    root = terms[0]
    par = {root: None}
    dq = deque([root])
    while dq:
        v = dq.popleft()
        for w in h.adj[v]:
            if w not in par:
                par[w] = v
                dq.append(w)
    deg = {v: 0 for v in par}
    edges = set()
    for v, p in par.items():
        if p is not None:
            edges.add((min(v, p), max(v, p)))
            deg[v] += 1
            deg[p] += 1
    alive = set(par)
    tset = set(terms)
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if v not in tset and deg[v] <= 1:
                alive.discard(v)
                changed = True
                for a, b in list(edges):
                    if v in (a, b):
                        other = b if v == a else a
                        edges.discard((a, b))
                        deg[other] -= 1
                deg[v] = 0
    return SteinerTree(tuple(sorted(alive)), tuple(sorted(edges)))


@dataclass(frozen=True)
class TopologicalWitness:
    branch: tuple
    pairs: tuple  # unordered branch-vertex pairs, sorted
    paths: tuple  # paths[i] connects pairs[i], endpoints included


def validate_witness(g, wit):
    """Subdivision check: paths connect their pairs, edges exist, and
    internal vertices are fresh and pairwise disjoint."""
    if len(set(wit.branch)) != len(wit.branch):
        return False
    want = set()
    for i, a in enumerate(wit.branch):
        for b in wit.branch[i + 1 :]:
            want.add((min(a, b), max(a, b)))
    if {tuple(sorted(p)) for p in wit.pairs} != want:
        return False
    if len(wit.pairs) != len(want) or len(wit.paths) != len(want):
        return False
    seen_internal = set()
    for (a, b), path in zip(wit.pairs, wit.paths):
        if {path[0], path[-1]} != {a, b}:
            return False
        for u, v in zip(path, path[1:]):
            if not g.has_edge(u, v):
                return False
        inner = set(path[1:-1])
        if inner & set(wit.branch):
            return False
        if inner & seen_internal:
            return False
        if len(set(path)) != len(path):
            return False
        seen_internal |= inner
    return True


def extract_topological_clique(g, chi, v1, v2):
    """Build a topological clique on the individualized vertices, or report a
    small class.

    v1: branch vertices, each alone in its color class.  v2: the colored
    region; its classes must all have size >= 3 h^3 for the construction, and
    the first violating class is reported otherwise.  Returns
    (TopologicalWitness or None, violating color or None).
    """
    v1 = tuple(sorted(set(v1)))
    h = len(v1)
    if h < 2:
        raise InputError("need at least two branch vertices")
    v2 = sorted(set(v2))
    if set(v1) & set(v2):
        raise InputError("branch vertices overlap the region")
    classes = _classes_by_color(chi)
    if color_refine(g, chi).num_colors != chi.num_colors:
        raise InputError("coloring is not stable")
    for v in v1:
        if len(classes[chi.colors[v]]) != 1:
            raise InputError("branch vertex class is not a singleton")
    region_colors = sorted({chi.colors[v] for v in v2})
    for c in region_colors:
        if set(classes[c]) - set(v2):
            raise InputError("region must be a union of whole classes")
    # neighbors outside the region must be exactly the branch set
    outside = set()
    for v in v2:
        for w in g.adj[v]:
            if w not in v2 and w not in outside:
                outside.add(w)
    if v2 and outside != set(v1):
        raise InputError("region neighborhood is not the branch set")

    pairs = [(a, b) for i, a in enumerate(v1) for b in v1[i + 1 :]]
    direct = [p for p in pairs if g.has_edge(*p)]
    indirect = [p for p in pairs if not g.has_edge(*p)]
    if not indirect:
        return (
            TopologicalWitness(v1, tuple(pairs), tuple((a, b) for a, b in pairs)),
            None,
        )

    bound = 3 * h**3
    small = [
        c for c in region_colors if len(classes[c]) < bound
    ]
    if small:
        small.sort(key=lambda c: (len(classes[c]), c))
        return None, small[0]

    # class graph over the region
    cidx = {c: i for i, c in enumerate(region_colors)}
    cg_edges = set()
    v2set = set(v2)
    for v in v2:
        for w in g.adj[v]:
            if w in v2set and chi.colors[v] != chi.colors[w]:
                a, b = cidx[chi.colors[v]], cidx[chi.colors[w]]
                cg_edges.add((min(a, b), max(a, b)))
    cg = Graph(len(region_colors), sorted(cg_edges))
    if len(connected_components(cg)) != 1:
        raise InputError("region class graph is disconnected")

    # one adjacent region color per branch vertex
    term_color = {}
    for v in v1:
        adj_cols = sorted(chi.colors[w] for w in g.adj[v] if w in v2set)
        if not adj_cols:
            raise InputError("branch vertex has no neighbor in the region")
        term_color[v] = adj_cols[0]
    terms = sorted({cidx[term_color[v]] for v in v1})
    st = steiner_tree(cg, terms)
    node_list = st.vertices
    remap = {u: i for i, u in enumerate(node_list)}
    tg = Graph(len(node_list), [(remap[a], remap[b]) for a, b in st.edges])
    tre = ColoredTree(tg, tuple(region_colors[u] for u in node_list))
    fam = pack_agreeing_trees(g, chi, tre)
    need = len(indirect)
    if len(fam.members) < need:
        raise InternalError("packing produced too few trees for the witness")
    mdicts = fam.member_dicts()
    # tree paths between color nodes
    tadj = {i: list(tg.adj[i]) for i in range(tg.n)}

    def tree_path(src, dst):
        par = {src: None}
        dq = deque([src])
        while dq:
            u = dq.popleft()
            if u == dst:
                break
            for w2 in tadj[u]:
                if w2 not in par:
                    par[w2] = u
                    dq.append(w2)
        out = [dst]
        while par[out[-1]] is not None:
            out.append(par[out[-1]])
        return list(reversed(out))

    paths = {}
    for p in direct:
        paths[p] = tuple(p)
    for idx, (a, b) in enumerate(indirect):
        mem = mdicts[idx]
        na = remap[cidx[term_color[a]]]
        nb = remap[cidx[term_color[b]]]
        mid = [mem[tre.colors[u]] for u in tree_path(na, nb)]
        paths[(a, b)] = tuple([a] + mid + [b])
    wit = TopologicalWitness(
        v1, tuple(pairs), tuple(paths[p] for p in pairs)
    )
    if not validate_witness(g, wit):
        raise InternalError("constructed witness failed validation")
    return wit, None
