"""Seeded graph generators for benchmarks and the test corpus.

Every generator takes a random.Random instance, so a fixed seed reproduces
the corpus bit for bit.  Families cover random planar graphs (built as
random triangulations, optionally thinned), partial k-trees, connected
G(n,p) graphs, wide planar bipartite graphs whose middle class survives
strong closure settings, stacked colored-tree instances with biregular
blocks, and branch-plus-region instances for the clique-witness extractor.
"""

from .errors import InputError
from .graphs import Graph, VertexColoring, is_connected, relabel
from .witness import ColoredTree


def random_maximal_planar(n, rng):
    """Random triangulation: grow from a triangle by splitting faces."""
    if n < 1:
        raise InputError("random_maximal_planar: need n >= 1")
    if n == 1:
        return Graph(1, [])
    if n == 2:
        return Graph(2, [(0, 1)])
    edges = {(0, 1), (0, 2), (1, 2)}
    faces = [(0, 1, 2), (0, 1, 2)]
    for v in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        edges |= {(min(a, v), max(a, v)), (min(b, v), max(b, v)), (min(c, v), max(c, v))}
        faces += [(a, b, v), (a, c, v), (b, c, v)]
    return Graph(n, sorted(edges))


def thin_keep_connected(g, drops, rng):
    """Remove up to `drops` random edges, skipping any whose loss disconnects."""
    for _ in range(drops):
        pool = g.edges()
        if not pool:
            break
        e = tuple(pool[rng.randrange(len(pool))])
        keep = [x for x in g.edges() if tuple(x) != e]
        cand = Graph(g.n, keep)
        if is_connected(cand):
            g = cand
    return g


def random_planar(n, rng, drop_frac=0.3):
    """Connected planar graph: a random triangulation, thinned."""
    g = random_maximal_planar(n, rng)
    return thin_keep_connected(g, int(g.num_edges * drop_frac), rng)


def random_partial_ktree(n, k, rng, drop_frac=0.2):
    """Connected subgraph of a random k-tree (treewidth at most k)."""
    if n < 1 or k < 1:
        raise InputError("random_partial_ktree: need n >= 1 and k >= 1")
    base = min(n, k + 1)
    edges = {(i, j) for i in range(base) for j in range(i + 1, base)}
    cliques = [tuple(range(base))] if base == k + 1 else []
    for v in range(base, n):
        cl = cliques[rng.randrange(len(cliques))]
        sub = rng.sample(cl, k)
        for u in sub:
            edges.add((min(u, v), max(u, v)))
        for i in range(k):
            cliques.append(tuple(sorted(set(sub[:i]) | set(sub[i + 1 :]) | {v})))
        cliques.append(tuple(sorted(sub)))
    g = Graph(n, sorted(edges))
    return thin_keep_connected(g, int(g.num_edges * drop_frac), rng)


def random_connected_gnp(n, p, rng):
    """G(n,p) conditioned on connectivity, with a spanning-tree fallback."""
    if n < 1:
        raise InputError("random_connected_gnp: need n >= 1")
    for _ in range(50):
        edges = [
            (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
        ]
        g = Graph(n, edges)
        if is_connected(g):
            return g
    # too sparse to hit a connected sample; thread a random spanning tree in
    edges = set(edges)
    order = list(range(n))
    rng.shuffle(order)
    for prev, v in zip(order, order[1:]):
        edges.add((min(prev, v), max(prev, v)))
    return Graph(n, sorted(edges))


def wide_bipartite_planar(m, rng, hub_tail=3):
    """Two hubs joined to m middle vertices, plus a pendant path per hub.

    Planar for every m; for m larger than the closure strength t the middle
    class survives refinement, so closures leave components behind and
    separator properties are exercised non-vacuously.
    """
    if m < 1:
        raise InputError("wide_bipartite_planar: need m >= 1")
    edges = [(0, 2 + i) for i in range(m)] + [(1, 2 + i) for i in range(m)]
    nxt = 2 + m
    for hub in (0, 1):
        prev = hub
        for _ in range(rng.randint(0, hub_tail)):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def random_coloring(n, num_colors, rng):
    """Random dense coloring; every color id below the count occurs."""
    if num_colors > n:
        num_colors = max(n, 1) if n else 0
    vals = list(range(num_colors)) + [
        rng.randrange(num_colors) for _ in range(n - num_colors)
    ]
    rng.shuffle(vals)
    return VertexColoring.from_raw(vals)


def relabeled_copy(g, rng, coloring=None):
    """Random isomorphic copy; returns (copy, permuted coloring, permutation)."""
    perm = list(range(g.n))
    rng.shuffle(perm)
    g2 = relabel(g, tuple(perm))
    chi2 = None
    if coloring is not None:
        inv = [0] * g.n
        for v, w in enumerate(perm):
            inv[w] = v
        chi2 = VertexColoring(
            tuple(coloring.colors[inv[v]] for v in range(g.n)), coloring.num_colors
        )
    return g2, chi2, tuple(perm)


def tree_stack_instance(rng, num_nodes=None, stack=None, degree=None):
    """Colored-tree packing instance with exactly biregular blocks.

    The tree has one color per node; each color class holds `stack`
    vertices, and every tree edge becomes a `degree`-regular bipartite
    block (a union of shifted matchings).  Returns (graph, coloring, tree,
    stack size).
    """
    nt = num_nodes if num_nodes is not None else rng.randint(2, 6)
    m = stack if stack is not None else rng.randint(6, 18)
    reg = degree if degree is not None else rng.randint(1, min(3, m))
    tedges = [(rng.randrange(v), v) for v in range(1, nt)]
    tree = ColoredTree(Graph(nt, tedges), tuple(range(nt)))
    edges = set()
    for a, b in tedges:
        perm = list(range(m))
        rng.shuffle(perm)
        for s in range(reg):
            for i in range(m):
                u = a * m + i
                v = b * m + perm[(i + s) % m]
                edges.add((min(u, v), max(u, v)))
    g = Graph(nt * m, sorted(edges))
    chi = VertexColoring(tuple(v // m for v in range(nt * m)), nt)
    return g, chi, tree, m


def clique_lemma_instance(rng, h=3, class_size=None, ring=None):
    """Branch vertices over a large stable region class.

    h singleton-class branch vertices are joined to every vertex of a region
    class of the requested size (default just above 3 h^3); optionally the
    region also carries a cycle, which keeps the coloring stable.  Returns
    (graph, coloring, branch vertices, region vertices).
    """
    cs = class_size if class_size is not None else 3 * h ** 3 + rng.randint(0, 8)
    edges = [(i, h + j) for i in range(h) for j in range(cs)]
    use_ring = ring if ring is not None else rng.random() < 0.5
    if use_ring and cs >= 3:
        edges += [(h + j, h + (j + 1) % cs) for j in range(cs)]
        edges = sorted({(min(a, b), max(a, b)) for a, b in edges})
    g = Graph(h + cs, edges)
    chi = VertexColoring(tuple(list(range(h)) + [h] * cs), h + 1)
    return g, chi, tuple(range(h)), tuple(range(h, h + cs))
