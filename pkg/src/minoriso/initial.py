"""Finding an isomorphism-invariant start class whose closure covers it.

Given a connected graph, the goal is a pair-colored graph together with one
diagonal color class X such that every member of X already determines the
whole of X under the t-bounded closure.  The search alternates three
mechanisms: contracting an edge-color class whose components have a small
side and recursing on the quotient, accepting the smallest vertex class
directly when its covering edge-color subgraph is connected or has mutually
covering components, and otherwise deriving a strictly finer vertex coloring
and restarting.  Restarts are bounded by the vertex count.
"""

from dataclasses import dataclass
from math import ceil, log

from .closure import DEFAULT_A, DEFAULT_LOG_BASE, closure_t_pair
from .errors import InputError, InternalError, MinorDetected
from .graphs import (
    Graph,
    PairColoring,
    VertexColoring,
    connected_components,
    contract_partition,
    induced_subgraph,
    is_connected,
    neighborhood,
)
from .refine import canonical_edge_color, diagonal_classes, edge_color_map, wl2


@dataclass(frozen=True)
class EdgeColorView:
    """One edge-color class of a stable pair coloring, seen as a subgraph."""

    color: int
    vertices: tuple
    edges: tuple
    components: tuple
    endpoint_colors: tuple
    s: int
    s_color: int

    @property
    def unicolored(self):
        return len(self.endpoint_colors) == 1

    @property
    def bicolored(self):
        return len(self.endpoint_colors) == 2

    @property
    def connected(self):
        return len(self.components) == 1


def edge_color_view(g, pc, c, emap=None):
    """Build the subgraph view for edge color c of the stable coloring pc.

    emap, when given, must be edge_color_map(g, pc); callers touching many
    colors share one scan that way.
    """
    if emap is None:
        emap = edge_color_map(g, pc)
    if c not in emap:
        raise InputError("edge_color_view: %r is not an edge color" % (c,))
    edges = tuple(emap[c])
    verts = tuple(sorted({u for e in edges for u in e}))
    pos = {v: i for i, v in enumerate(verts)}
    sub = Graph(len(verts), [(pos[u], pos[v]) for u, v in edges])
    comps = tuple(
        sorted(
            (tuple(sorted(verts[i] for i in comp)) for comp in connected_components(sub)),
            key=lambda cmp: cmp[0],
        )
    )
    endpoint_colors = tuple(sorted({pc.get(v, v) for v in verts}))
    if not 1 <= len(endpoint_colors) <= 2:
        raise InternalError("edge_color_view: endpoints span %d vertex colors" % len(endpoint_colors))
    profiles = []
    for comp in comps:
        prof = {}
        for v in comp:
            d = pc.get(v, v)
            prof[d] = prof.get(d, 0) + 1
        profiles.append(tuple(sorted(prof.items())))
    if len(set(profiles)) != 1:
        raise InternalError("edge_color_view: components are not color-equivalent")
    s, s_color = min((cnt, d) for d, cnt in profiles[0])
    return EdgeColorView(c, verts, edges, comps, endpoint_colors, s, s_color)


@dataclass(frozen=True)
class Factor:
    """Quotient of a graph by the components of one edge-color class.

    blocks[i] is the sorted tuple of original vertices merged into quotient
    vertex i; blocks are ordered by smallest member.
    """

    graph: Graph
    coloring: PairColoring
    blocks: tuple


def factor_by_edge_color(g, pc, c, emap=None):
    """Contract every component of the c-colored subgraph to one vertex.

    The quotient pair coloring is the canonical renaming of the multiset of
    original pair colors between two blocks.  Two such multisets must be
    equal or share no color at all; anything else means pc was not stable.
    """
    view = edge_color_view(g, pc, c, emap)
    in_sub = set(view.vertices)
    blocks = sorted(
        list(view.components) + [(v,) for v in range(g.n) if v not in in_sub],
        key=lambda b: b[0],
    )
    quotient = contract_partition(g, blocks)
    m = len(blocks)
    raw = []
    for b1 in blocks:
        for b2 in blocks:
            raw.append(tuple(sorted(pc.get(u, v) for u in b1 for v in b2)))
    distinct = sorted(set(raw))
    # equal-or-disjoint: each pair color may occur in only one multiset
    owner = {}
    for i, ms in enumerate(distinct):
        for col in set(ms):
            if owner.setdefault(col, i) != i:
                raise InternalError(
                    "factor_by_edge_color: neither equal nor disjoint color multisets"
                )
    rank = {ms: i for i, ms in enumerate(distinct)}
    coloring = PairColoring(m, tuple(rank[ms] for ms in raw), len(distinct))
    return Factor(quotient, coloring, tuple(tuple(b) for b in blocks))


@dataclass(frozen=True)
class LiftedMinor:
    """A pair-color class on one side of a bipartition, realized as a minor.

    vertices are the side-1 vertices, pairs the same-side pairs of the given
    color that share a neighbor, and matching assigns each pair a distinct
    common neighbor when complete.
    """

    color: int
    vertices: tuple
    pairs: tuple
    graph: Graph
    matching: tuple
    complete: bool


def _max_matching(pairs, right, adj):
    """Kuhn augmenting-path matching from the pairs side; pair -> neighbor."""
    match_r = {}
    match_l = {}

    def try_augment(p, seen):
        for w in adj[p]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match_r or try_augment(match_r[w], seen):
                match_r[w] = p
                match_l[p] = w
                return True
        return False

    for p in pairs:
        try_augment(p, set())
    return match_l


def cross_color_minor_lift(g, pc, part1, part2, h=None, a=DEFAULT_A, log_base=DEFAULT_LOG_BASE):
    """Classify side-1 pairs with a common neighbor by pair color and certify
    each class as a minor via a system of distinct common neighbors.

    The graph must be bipartite between part1 and part2 with a single edge
    color under pc.  When a class has more pairs than side-2 vertices, no
    full certificate exists; with h given that situation already forces a
    dense minor and MinorDetected is raised.
    """
    p1 = tuple(sorted(set(part1)))
    p2 = tuple(sorted(set(part2)))
    p1set = set(p1)
    if p1set & set(p2):
        raise InputError("cross_color_minor_lift: sides overlap")
    if p1set | set(p2) != set(range(g.n)):
        raise InputError("cross_color_minor_lift: sides must cover all vertices")
    ecs = set()
    for u, v in g.edges():
        if (u in p1set) == (v in p1set):
            raise InputError("cross_color_minor_lift: edge inside one side")
        ecs.add(canonical_edge_color(pc, u, v))
    if len(ecs) > 1:
        raise InputError("cross_color_minor_lift: more than one cross edge color")
    by_color = {}
    p2set = set(p2)
    for i, u in enumerate(p1):
        for v in p1[i + 1:]:
            common = [w for w in g.neighbors(u) if w in p2set and g.has_edge(v, w)]
            if common:
                cc = canonical_edge_color(pc, u, v)
                by_color.setdefault(cc, []).append((u, v))
    out = []
    pos = {v: i for i, v in enumerate(p1)}
    for cc in sorted(by_color):
        pairs = tuple(sorted(by_color[cc]))
        adj = {
            e: [w for w in g.neighbors(e[0]) if w in p2set and g.has_edge(e[1], w)]
            for e in pairs
        }
        match_l = _max_matching(pairs, p2, adj)
        want = min(len(pairs), len(p2))
        if len(match_l) < want:
            raise InputError(
                "cross_color_minor_lift: incidence graph is not biregular; "
                "pair coloring unstable on this bipartition"
            )
        complete = len(match_l) == len(pairs)
        if not complete and h is not None and len(p2) > a * h * log(h, log_base) * len(p1):
            raise MinorDetected(
                "matched pair class denser than the minor-free degree bound allows"
            )
        graph = Graph(len(p1), [(pos[u], pos[v]) for u, v in pairs])
        matching = tuple(sorted((e, match_l[e]) for e in match_l))
        out.append(LiftedMinor(cc, p1, pairs, graph, matching, complete))
    return tuple(out)


def _bipartition(g):
    """Two-color a connected bipartite graph; InputError on an odd cycle."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    raise InputError("graph is not bipartite")
    a = tuple(v for v in range(g.n) if side[v] == 0)
    b = tuple(v for v in range(g.n) if side[v] == 1)
    return a, b


def bipartite_closure_check(g, pc, t):
    """Whether the smaller side of a bipartite graph lies in every vertex's
    closure.  On a size tie both sides are tried."""
    if g.n == 0:
        return True
    if not is_connected(g):
        raise InputError("bipartite_closure_check: graph must be connected")
    a, b = _bipartition(g)
    if len(a) < len(b):
        candidates = [a]
    elif len(b) < len(a):
        candidates = [b]
    else:
        candidates = [a, b]
    closures = [set(closure_t_pair(g, pc, (v,), t).d) for v in range(g.n)]
    return any(all(set(side) <= cl for cl in closures) for side in candidates)


@dataclass(frozen=True)
class InitialColorOutput:
    """Result of the start-class search.

    x is a diagonal color class of chi_prime on g_prime; x_map identifies
    each of its vertices with a vertex of the input graph.  restarts counts
    coloring restarts over the whole recursion, defensive_refinements the
    restarts triggered by the irregular-quotient fallback (expected zero).
    """

    g_prime: Graph
    chi_prime: PairColoring
    x: tuple
    x_map: dict
    restarts: int
    defensive_refinements: int


def find_initial_class(g, vcol, h, t, a=DEFAULT_A, log_base=DEFAULT_LOG_BASE):
    """Search for a start class of g, recursing through quotients.

    Returns an InitialColorOutput or raises MinorDetected when a step finds
    evidence that forces a K_h minor.  t below the contract threshold
    ((a h log h)^3) is accepted for small-scale runs but weakens the
    closure-coverage guarantee.
    """
    if not isinstance(h, int) or h < 2:
        raise InputError("find_initial_class: h must be an integer >= 2")
    if t < h:
        raise InputError("find_initial_class: t must be at least h")
    if not is_connected(g):
        raise InputError("find_initial_class: graph must be connected")
    if g.n == 0:
        raise InputError("find_initial_class: graph is empty")
    init = vcol if vcol is not None else VertexColoring.uniform(g.n)
    return _find(g, init, h, t, a, log_base, 0)


def _find(g, init, h, t, a, log_base, depth):
    """Restart loop at one recursion level; init seeds the pair refinement."""
    if depth > 10000:
        raise InternalError("contraction recursion too deep")
    restarts = 0
    defensive = 0
    pc = wl2(g, init)
    while True:
        kind, payload = _attempt(g, pc, h, t, a, log_base, depth)
        if kind == "accept":
            out = payload
            return InitialColorOutput(
                out.g_prime,
                out.chi_prime,
                out.x,
                out.x_map,
                restarts + out.restarts,
                defensive + out.defensive_refinements,
            )
        labels, was_defensive = payload
        restarts += 1
        if was_defensive:
            defensive += 1
        if restarts > g.n:
            raise InternalError("restart budget exceeded")
        refined = VertexColoring.from_raw(labels)
        if refined.num_colors <= pc.diagonal().num_colors:
            raise InternalError("restart produced no strictly finer coloring")
        pc = wl2(g, refined)


def _accept(graph, coloring, x, x_map, restarts=0, defensive=0):
    return "accept", InitialColorOutput(graph, coloring, tuple(sorted(x)), x_map, restarts, defensive)


def _restart(labels, defensive=False):
    return "restart", (labels, defensive)


def _attempt(g, pc, h, t, a, log_base, depth):
    """One pass over the stable coloring pc; accept, restart, or recurse."""
    n = g.n
    if n == 1:
        return _accept(g, pc, (0,), {0: 0})
    diag = diagonal_classes(pc)
    emap = edge_color_map(g, pc)
    views = {c: edge_color_view(g, pc, c, emap) for c in emap}
    small = sorted(c for c, view in views.items() if view.s <= a * h ** 3)
    if small:
        return _contract_and_recurse(g, pc, views[small[0]], diag, h, t, a, log_base, depth)

    c_small = min((len(vs), c) for c, vs in diag.items())[1]
    v_class = set(diag[c_small])
    exact = sorted(c for c, view in views.items() if set(view.vertices) == v_class)
    if exact:
        c_edge = exact[0]
    else:
        covering = sorted(c for c, view in views.items() if v_class <= set(view.vertices))
        if not covering:
            raise InternalError("no edge color covers the smallest vertex class")
        c_edge = covering[0]
    view = views[c_edge]

    degree_bound = a * h * log(h, log_base)
    if 2 * len(view.edges) > degree_bound * len(view.vertices):
        raise MinorDetected("edge-color subgraph exceeds the minor-free degree bound")

    if view.connected:
        if t >= ceil((a * h * log(h, log_base)) ** 2):
            for v in sorted(v_class):
                if not v_class <= set(closure_t_pair(g, pc, (v,), t).d):
                    raise MinorDetected(
                        "closure fails to cover the accepted class; "
                        "only possible in the presence of a dense minor"
                    )
        return _accept(g, pc, sorted(v_class), {v: v for v in v_class})

    return _component_analysis(g, pc, view, diag, v_class, h, t, a, log_base)


def _contract_and_recurse(g, pc, view, diag, h, t, a, log_base, depth):
    """Small-side branch: quotient out the chosen edge color and recurse.

    When the recursive class consists of contracted blocks, attach the small
    side of each block as fresh pendant vertices and return those instead.
    """
    fac = factor_by_edge_color(g, pc, view.color)
    sub = _find(fac.graph, fac.coloring, h, t, a, log_base, depth + 1)
    image = {}
    used = set()
    for w in sub.x:
        j = sub.x_map[w]
        if j in used:
            raise InternalError("recursive class maps two vertices to one block")
        used.add(j)
        image[w] = j
    sizes = {len(fac.blocks[j]) for j in image.values()}
    if sizes == {1}:
        x_map = {w: fac.blocks[j][0] for w, j in image.items()}
        return _accept(sub.g_prime, sub.chi_prime, sub.x, x_map, sub.restarts, sub.defensive_refinements)
    if 1 in sizes:
        raise InternalError("recursive class mixes blocks and plain vertices")

    d_class = set(diag[view.s_color])
    f2 = sub.g_prime
    old_colors = sub.chi_prime
    copies = []
    for w in sorted(image):
        reps = sorted(set(fac.blocks[image[w]]) & d_class)
        if not reps:
            raise InternalError("contracted block misses the small-side color")
        for v in reps:
            copies.append((f2.n + len(copies), w, v))
    total = f2.n + len(copies)
    edges = list(f2.edges()) + [(w, cid) for cid, w, _ in copies]
    g_prime = Graph(total, edges)
    raw = {}
    for u1 in range(f2.n):
        for u2 in range(f2.n):
            raw[(u1, u2)] = (old_colors.get(u1, u2), 0)
    for cid, _, _ in copies:
        for u in range(total):
            if u == cid:
                continue
            raw[(u, cid)] = (1, 1)
            raw[(cid, u)] = (1, 1)
        raw[(cid, cid)] = (0, 1)
    rank = {val: i for i, val in enumerate(sorted(set(raw.values())))}
    flat = tuple(rank[raw[(u1, u2)]] for u1 in range(total) for u2 in range(total))
    chi_prime = PairColoring(total, flat, len(rank))
    x = tuple(cid for cid, _, _ in copies)
    x_map = {cid: v for cid, _, v in copies}
    return _accept(g_prime, chi_prime, x, x_map, sub.restarts, sub.defensive_refinements)


def _component_analysis(g, pc, view, diag, v_class, h, t, a, log_base):
    """Disconnected covering subgraph: closures per component, the cover
    relation, and either acceptance or a strictly finer coloring."""
    comps = view.components
    ell = len(comps)
    closures = []
    for comp in comps:
        rep = min(v for v in comp if v in v_class)
        closures.append(frozenset(closure_t_pair(g, pc, (rep,), t).d))

    order = sorted(diag)
    profiles = [tuple(len(cl & set(diag[d])) for d in order) for cl in closures]
    if len(set(profiles)) > 1:
        labels = [(pc.get(v, v), 0) for v in range(g.n)]
        for i, comp in enumerate(comps):
            for v in comp:
                if v in v_class:
                    labels[v] = (pc.get(v, v), 1, profiles[i])
        return _restart(labels)

    cover = [
        [set(comps[i2]) & v_class <= closures[i1] for i2 in range(ell)]
        for i1 in range(ell)
    ]
    for i in range(ell):
        if not cover[i][i]:
            raise InputError(
                "closure parameter t too small: a component does not cover itself"
            )
    for i1 in range(ell):
        for i2 in range(ell):
            if cover[i1][i2]:
                for i3 in range(ell):
                    if cover[i2][i3] and not cover[i1][i3]:
                        raise InputError(
                            "closure parameter t too small: component cover "
                            "relation is not transitive"
                        )
    if any(cover[i1][i2] != cover[i2][i1] for i1 in range(ell) for i2 in range(ell)):
        outdeg = [sum(cover[i]) for i in range(ell)]
        if len(set(outdeg)) == 1:
            raise InternalError("asymmetric transitive cover with uniform degrees")
        labels = [(pc.get(v, v), 0) for v in range(g.n)]
        for i, comp in enumerate(comps):
            for v in comp:
                if v in v_class:
                    labels[v] = (pc.get(v, v), 1, outdeg[i])
        return _restart(labels)

    cls = [-1] * ell
    r = 0
    for i in range(ell):
        if cls[i] < 0:
            for i2 in range(ell):
                if cover[i][i2]:
                    cls[i2] = r
            r += 1
    if r == 1:
        return _accept(g, pc, sorted(v_class), {v: v for v in v_class})

    groups, ep = _partition_claim(g, pc, view, comps, cls)

    degs = {gid: 0 for gid in groups}
    for g1, g2 in ep:
        degs[g1] += 1
        degs[g2] += 1
    if len(set(degs.values())) > 1:
        group_of = {}
        for gid in groups:
            for i in gid:
                group_of[i] = gid
        labels = [(pc.get(v, v), 0) for v in range(g.n)]
        for i, comp in enumerate(comps):
            for v in comp:
                if v in v_class:
                    labels[v] = (pc.get(v, v), 1, degs[group_of[i]])
        return _restart(labels, defensive=True)
    if degs and max(degs.values()) > a * h * log(h, log_base):
        raise MinorDetected("component quotient exceeds the minor-free degree bound")

    class_closure = {}
    for i in range(ell):
        class_closure.setdefault(cls[i], closures[i])
    pieces = {}
    for ci, cl in class_closure.items():
        rest = sorted(set(range(g.n)) - cl)
        sub, idx = induced_subgraph(g, rest)
        pieces[ci] = [tuple(idx[v] for v in comp) for comp in connected_components(sub)]
    ks = {ci: len(ps) for ci, ps in pieces.items()}
    counts = [ks[cls[i]] for i in range(ell)]
    if len(set(counts)) > 1:
        labels = [(pc.get(v, v), 0) for v in range(g.n)]
        for i, comp in enumerate(comps):
            for v in comp:
                if v in v_class:
                    labels[v] = (pc.get(v, v), 1, counts[i])
        return _restart(labels)

    members = {gid: sorted(gid) for gid in groups}
    q = set()
    for g1, g2 in ep:
        for ga, gb in ((g1, g2), (g2, g1)):
            for i in members[ga]:
                for i2 in members[gb]:
                    if cover[i][i2]:
                        continue
                    cl = class_closure[cls[i]]
                    outside = [v for v in comps[i2] if v in v_class and v not in cl]
                    if not outside:
                        raise InternalError("uncovered component has no outside vertex")
                    probe = outside[0]
                    spot = None
                    for j, piece in enumerate(pieces[cls[i]]):
                        if probe in piece:
                            spot = j
                            break
                    if spot is None:
                        raise InternalError("outside vertex not in any residual piece")
                    if not set(comps[i2]) <= set(pieces[cls[i]][spot]):
                        raise InputError(
                            "closure parameter t too small: component straddles "
                            "residual pieces"
                        )
                    q.add((cls[i], spot))
    if not q:
        raise InternalError("separator index set is empty despite a crossing pair")

    for d in order:
        d_set = set(diag[d])
        hit = set()
        for ci, j in sorted(q):
            hit.update(set(neighborhood(g, pieces[ci][j])) & d_set)
        if hit and hit != d_set:
            labels = [
                (pc.get(v, v), 1 if v in hit else 0) for v in range(g.n)
            ]
            return _restart(labels)
    raise InternalError("separator refinement produced no strictly finer coloring")


def _partition_claim(g, pc, view, comps, cls):
    """Find a partition of the component indices, grouped by merged factor
    vertices, and a pair-color-defined edge set on the groups containing a
    pair from two different cover classes.

    Works on the quotient by the covering edge color, repeatedly contracting
    further while no edge color connects two cover classes.
    """
    comp_index = {frozenset(comp): i for i, comp in enumerate(view.components)}
    fac = factor_by_edge_color(g, pc, view.color)
    graph = fac.graph
    coloring = fac.coloring
    indices = []
    for blk in fac.blocks:
        if len(blk) > 1:
            indices.append(frozenset([comp_index[frozenset(blk)]]))
        else:
            indices.append(frozenset())

    for _ in range(g.n + 1):
        stable = wl2(graph, coloring)
        class_of = []
        for idx in indices:
            seen = {cls[i] for i in idx}
            if len(seen) > 1:
                raise InternalError("factor vertex merged two cover classes")
            class_of.append(seen.pop() if seen else None)
        emap = edge_color_map(graph, stable)
        fired = None
        for cf in sorted(emap):
            verts = sorted({u for e in emap[cf] for u in e})
            pos = {v: i for i, v in enumerate(verts)}
            sub = Graph(len(verts), [(pos[u], pos[v]) for u, v in emap[cf]])
            for comp in connected_components(sub):
                present = {class_of[verts[i]] for i in comp if class_of[verts[i]] is not None}
                if len(present) >= 2:
                    fired = (cf, verts, emap[cf])
                    break
            if fired:
                break

        if fired is None:
            bearers = [v for v in range(graph.n) if indices[v]]
            chosen = None
            for cf in sorted(emap):
                verts = {u for e in emap[cf] for u in e}
                if set(bearers) <= verts:
                    chosen = cf
                    break
            if chosen is None:
                raise InternalError("no factor edge color covers all index bearers")
            fac2 = factor_by_edge_color(graph, stable, chosen, emap)
            merged = []
            for blk in fac2.blocks:
                merged.append(frozenset().union(*(indices[v] for v in blk)))
            graph, coloring, indices = fac2.graph, fac2.coloring, merged
            if graph.n <= 1:
                raise InternalError("factor recursion contracted everything")
            continue

        cf, verts, cf_edges = fired
        vcolors = {stable.get(v, v) for v in verts}
        bearer_set = {v for v in verts if indices[v]}
        if len(vcolors) == 1:
            crossing = [
                (u, v)
                for u, v in cf_edges
                if class_of[u] is not None and class_of[v] is not None and class_of[u] != class_of[v]
            ]
            if not crossing:
                raise InternalError("no cross-class edge in a single-color factor block")
        else:
            bearer_colors = {stable.get(v, v) for v in bearer_set}
            if len(bearer_colors) != 1:
                raise InternalError("index bearers span several vertex colors")
            others = [v for v in verts if v not in bearer_set]
            adj = {v: set() for v in verts}
            for u, v in cf_edges:
                adj[u].add(v)
                adj[v].add(u)
            seen_pairs = set()
            crossing = []
            for u in others:
                nb = sorted(w for w in adj[u] if w in bearer_set)
                for x1 in range(len(nb)):
                    for x2 in range(x1 + 1, len(nb)):
                        b1, b2 = nb[x1], nb[x2]
                        if (b1, b2) in seen_pairs:
                            continue
                        seen_pairs.add((b1, b2))
                        if (
                            class_of[b1] is not None
                            and class_of[b2] is not None
                            and class_of[b1] != class_of[b2]
                        ):
                            crossing.append((b1, b2))
            if not crossing:
                raise InternalError("no cross-class neighbor pair in a two-color factor block")

        cp = min(canonical_edge_color(stable, u, v) for u, v in crossing)
        all_bearers = [v for v in range(graph.n) if indices[v]]
        groups = [indices[v] for v in all_bearers]
        ep = set()
        for x1 in range(len(all_bearers)):
            for x2 in range(x1 + 1, len(all_bearers)):
                b1, b2 = all_bearers[x1], all_bearers[x2]
                if canonical_edge_color(stable, b1, b2) == cp:
                    ep.add((indices[b1], indices[b2]))
        return groups, ep
    raise InternalError("factor recursion failed to terminate")
