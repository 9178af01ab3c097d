"""Independent reference implementations used to check the package.

Everything here is deliberately naive: exhaustive permutation scans, explicit
group closure, first-principles validators.  Nothing imports the solver
internals except thin wrappers that exist to compare against it.
"""

import itertools

import numpy as np

from minoriso.graphs import Graph

_PERMS = {}


def perm_array(n):
    """All permutations of range(n) as one integer array, cached."""
    if n not in _PERMS:
        _PERMS[n] = np.array(
            list(itertools.permutations(range(n))), dtype=np.int64
        )
    return _PERMS[n]


def graph_certificate(g):
    """Brute canonical form: minimum adjacency bitstring over all relabelings.

    Only for small graphs (n <= 8).  Two graphs are isomorphic exactly when
    their certificates match.
    """
    n = g.n
    if n <= 1:
        return (n, 0)
    a = np.zeros((n, n), dtype=np.int64)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    p = perm_array(n)
    b = a[p[:, :, None], p[:, None, :]]
    iu = np.triu_indices(n, 1)
    bits = b[:, iu[0], iu[1]]
    weights = np.left_shift(np.int64(1), np.arange(bits.shape[1], dtype=np.int64))
    return (n, int((bits @ weights).min()))


def connected_graph_catalog(max_n):
    """One representative per isomorphism class of connected graphs, keyed by
    vertex count.

    Built by extending each (n-1)-vertex class with a new last vertex joined
    to every nonempty neighbor subset; every connected graph has a vertex
    whose removal keeps it connected, so every class is reached.  Returns
    {n: [(graph, certificate), ...]}.
    """
    out = {1: [(Graph(1, []), graph_certificate(Graph(1, [])))]}
    for n in range(2, max_n + 1):
        seen = {}
        for g, _ in out[n - 1]:
            base = list(g.edges())
            for mask in range(1, 1 << (n - 1)):
                extra = [(v, n - 1) for v in range(n - 1) if mask >> v & 1]
                cand = Graph(n, base + extra)
                cert = graph_certificate(cand)
                if cert not in seen:
                    seen[cert] = cand
        out[n] = [(seen[c], c) for c in sorted(seen)]
    return out


def brute_iso_decision(g1, raw1, g2, raw2):
    """Color-preserving isomorphism decision by full permutation scan."""
    if g1.n != g2.n:
        return False
    e2 = {tuple(sorted(e)) for e in g2.edges()}
    if g1.num_edges != len(e2):
        return False
    for p in itertools.permutations(range(g1.n)):
        if any(raw1[v] != raw2[p[v]] for v in range(g1.n)):
            continue
        if all(tuple(sorted((p[u], p[v]))) in e2 for u, v in g1.edges()):
            return True
    return False


def brute_restricted_maps(g1, raw1, g2, raw2, s1):
    """All restricted isomorphism images over sorted(s1), by permutation scan."""
    out = set()
    if g1.n != g2.n:
        return out
    e2 = {tuple(sorted(e)) for e in g2.edges()}
    src = sorted(s1)
    for p in itertools.permutations(range(g1.n)):
        if any(raw1[v] != raw2[p[v]] for v in range(g1.n)):
            continue
        if {tuple(sorted((p[u], p[v]))) for u, v in g1.edges()} != e2:
            continue
        out.add(tuple(p[v] for v in src))
    return out


def engine_restricted_maps(g1, raw1, g2, raw2, s1):
    """The same image set computed with the backtracking engine, for graphs
    too big to scan."""
    from minoriso.engine import BTStruct, automorphism_generators, find_isomorphism
    from minoriso.perm import Coset, PermGroup, coset_restrict, enumerate_small

    bt1, bt2 = BTStruct(g1, tuple(raw1)), BTStruct(g2, tuple(raw2))
    rep = find_isomorphism(bt1, bt2)
    if rep is None:
        return set()
    grp = PermGroup(g1.n, automorphism_generators(bt1))
    rc = coset_restrict(Coset(grp, rep), sorted(s1))
    img = sorted(rep[v] for v in sorted(s1))
    return {tuple(img[e[i]] for i in range(len(e))) for e in enumerate_small(rc)}


def same_coset(a, b):
    """Exact equality of two nonempty position cosets without enumeration."""
    if a.size() != b.size():
        return False
    if not b.contains(a.rep):
        return False
    return all(b.group.contains(g) for g in a.group.generators)


def brute_group_elements(n, gens):
    """Closure of a generator list under composition, as a frozen set."""
    idn = tuple(range(n))
    gens = [tuple(p) for p in gens]
    seen = {idn}
    frontier = [idn]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = tuple(p[q[i]] for i in range(n))
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return frozenset(seen)


def validate_subdivision(g, branch, paths):
    """First-principles clique-subdivision check.

    branch: h distinct vertices; paths: one vertex path per unordered branch
    pair, endpoints in branch, every edge present in g, interior vertices
    fresh and used by no other path.  Returns None when valid, else a string.
    """
    branch = list(branch)
    h = len(branch)
    if len(set(branch)) != h:
        return "repeated branch vertex"
    want = {frozenset(p) for p in itertools.combinations(branch, 2)}
    es = {tuple(sorted(e)) for e in g.edges()}
    used = set(branch)
    covered = set()
    for path in paths:
        if len(path) < 2:
            return "path too short"
        ends = frozenset((path[0], path[-1]))
        if ends not in want:
            return "path endpoints are not a branch pair"
        if ends in covered:
            return "branch pair covered twice"
        covered.add(ends)
        for u, v in zip(path, path[1:]):
            if tuple(sorted((u, v))) not in es:
                return f"missing edge {u}-{v}"
        inner = path[1:-1]
        if len(set(inner)) != len(inner):
            return "path revisits a vertex"
        for v in inner:
            if v in used:
                return f"vertex {v} reused"
            used.add(v)
    if covered != want:
        return "not every branch pair is connected"
    return None


def hyper_filter_maps(h1, h2, ground):
    """Coset-labeled hypergraph isomorphisms by filtering the ground coset
    against the literal compatibility conditions."""
    from minoriso.perm import enumerate_small

    def ok(phi):
        if len(h1.edges) != len(h2.edges):
            return False
        idx2 = {e: i for i, e in enumerate(h2.edges)}
        for i, e in enumerate(h1.edges):
            j = idx2.get(tuple(sorted(phi[v] for v in e)))
            if j is None or h1.colors[i] != h2.colors[j]:
                return False
            lab1 = set()
            for lam in enumerate_small(h1.cosets[i]):
                lab1.add(tuple(sorted((phi[e[p]], lam[p]) for p in range(len(e)))))
            e2 = h2.edges[j]
            lab2 = set()
            for lam in enumerate_small(h2.cosets[j]):
                lab2.add(tuple(sorted((e2[p], lam[p]) for p in range(len(e2)))))
            if lab1 != lab2:
                return False
        return True

    return sorted(p for p in enumerate_small(ground) if ok(p))


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n):
    return Graph(n, list(itertools.combinations(range(n), 2)))


def complete_bipartite(a, b):
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete_multipartite(parts, size):
    n = parts * size
    return Graph(
        n,
        [(u, v) for u in range(n) for v in range(u + 1, n) if u // size != v // size],
    )


def spider_graph(legs):
    edges, nxt = [], 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return Graph(nxt, edges)


def theta_graph(k, chord=False):
    """Two hubs joined by three length-k paths, optionally with a hub chord."""
    edges, nxt = [], 2
    for _ in range(3):
        prev = 0
        for _ in range(k - 1):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
        edges.append((prev, 1))
    if chord:
        edges.append((0, 1))
    return Graph(nxt, edges)


def wheel_graph(rim):
    edges = [(0, 1 + i) for i in range(rim)]
    edges += [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    return Graph(rim + 1, edges)


def grid_graph(rows, cols):
    idx = lambda r, c: r * cols + c
    es = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                es.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows:
                es.append((idx(r, c), idx(r + 1, c)))
    return Graph(rows * cols, es)
