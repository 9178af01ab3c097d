"""Core graph type, colorings and structural operators.

Vertices are always 0..n-1.  Graphs are immutable once built; every operator
returns a fresh graph plus, where the vertex set changes, an index map back to
the input vertices.  Color ids are dense integers; "canonical" colorings are
produced by the refinement module, which ranks signatures instead of hashing
them, so equal colors mean equal refinement histories.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError


class Graph:
    """Undirected simple graph with sorted adjacency lists."""

    __slots__ = ("n", "adj", "_adjsets", "_m")

    def __init__(self, n, edges=()):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        self.n = n
        sets = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"loop at vertex {u} not allowed")
            sets[u].add(v)
            sets[v].add(u)
        self.adj = tuple(tuple(sorted(s)) for s in sets)
        self._adjsets = tuple(frozenset(s) for s in sets)
        self._m = sum(len(s) for s in sets) // 2

    @property
    def num_edges(self):
        return self._m

    def edges(self):
        """Sorted list of edges as (u, v) with u < v."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v):
        return len(self.adj[v])

    def has_edge(self, u, v):
        return v in self._adjsets[u]

    def neighbors(self, v):
        return self._adjsets[v]

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


@dataclass(frozen=True)
class VertexColoring:
    """Dense vertex coloring; color ids 0..num_colors-1 all occur."""

    colors: tuple
    num_colors: int

    def __post_init__(self):
        if self.colors and set(self.colors) != set(range(self.num_colors)):
            raise InputError("vertex colors must be dense 0..k-1")

    @staticmethod
    def from_raw(values):
        """Rank arbitrary comparable values into dense canonical ids."""
        order = {v: i for i, v in enumerate(sorted(set(values)))}
        return VertexColoring(tuple(order[v] for v in values), len(order))

    @staticmethod
    def uniform(n):
        return VertexColoring((0,) * n, 1 if n else 0)

    def classes(self):
        """Vertex classes listed by color id."""
        out = [[] for _ in range(self.num_colors)]
        for v, c in enumerate(self.colors):
            out[c].append(v)
        return [tuple(cl) for cl in out]

    def __len__(self):
        return len(self.colors)


@dataclass(frozen=True)
class ArcColoring:
    """Coloring of ordered arcs (u, v); total on both orientations of each edge."""

    colors: dict

    @staticmethod
    def from_raw(mapping):
        order = {v: i for i, v in enumerate(sorted(set(mapping.values())))}
        return ArcColoring({arc: order[c] for arc, c in mapping.items()})

    def get(self, u, v, default=-1):
        return self.colors.get((u, v), default)


@dataclass(frozen=True)
class PairColoring:
    """Coloring of all ordered vertex pairs, stored row-major as a flat tuple."""

    n: int
    colors: tuple
    num_colors: int

    def __post_init__(self):
        if len(self.colors) != self.n * self.n:
            raise InputError("pair coloring must cover all ordered pairs")

    def get(self, u, v):
        return self.colors[u * self.n + v]

    def diagonal(self):
        """Vertex coloring induced on the diagonal, re-ranked densely."""
        return VertexColoring.from_raw([self.get(v, v) for v in range(self.n)])

    def classes(self):
        out = {}
        for u in range(self.n):
            for v in range(self.n):
                out.setdefault(self.get(u, v), []).append((u, v))
        return [tuple(out[c]) for c in sorted(out)]


@dataclass(frozen=True)
class Partition:
    """An ordered partition of 0..n-1 into disjoint classes."""

    classes: tuple

    @staticmethod
    def from_coloring(coloring):
        return Partition(tuple(coloring.classes()))

    def block_of(self):
        out = {}
        for i, cl in enumerate(self.classes):
            for v in cl:
                out[v] = i
        return out


def induced_subgraph(g, a):
    """Subgraph on vertex set `a`; returns (graph, index map new->old)."""
    idx = sorted(set(a))
    if idx and not (0 <= idx[0] and idx[-1] < g.n):
        raise InputError("induced_subgraph: vertex out of range")
    pos = {v: i for i, v in enumerate(idx)}
    edges = [(pos[u], pos[v]) for u in idx for v in g.adj[u] if u < v and v in pos]
    return Graph(len(idx), edges), idx


def bipartite_block(g, a, b):
    """Graph on a ∪ b keeping only edges with one end in a and one in b.

    Returns (graph, index map new->old).
    """
    aset, bset = set(a), set(b)
    idx = sorted(aset | bset)
    pos = {v: i for i, v in enumerate(idx)}
    edges = set()
    for u in aset:
        for v in g.adj[u]:
            if v in bset and u != v:
                edges.add((min(pos[u], pos[v]), max(pos[u], pos[v])))
    return Graph(len(idx), sorted(edges)), idx


def connected_components(g):
    """Components as sorted vertex tuples, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def is_connected(g):
    return g.n <= 1 or len(connected_components(g)) == 1


def neighborhood(g, x):
    """N_G(x): vertices outside x with a neighbor in x, sorted."""
    xs = set(x)
    out = set()
    for v in xs:
        out.update(g._adjsets[v])
    return tuple(sorted(out - xs))


def contract_partition(g, blocks):
    """Quotient graph with one vertex per block, in the given block order.

    Every block must induce a connected subgraph and the blocks must
    partition V(g).
    """
    seen = set()
    for blk in blocks:
        for v in blk:
            if v in seen:
                raise InputError("contract_partition: blocks overlap")
            seen.add(v)
    if seen != set(range(g.n)):
        raise InputError("contract_partition: blocks must cover all vertices")
    for blk in blocks:
        sub, _ = induced_subgraph(g, blk)
        if not is_connected(sub):
            raise InputError("contract_partition: block induces a disconnected subgraph")
    where = {}
    for i, blk in enumerate(blocks):
        for v in blk:
            where[v] = i
    edges = set()
    for u, v in g.edges():
        bu, bv = where[u], where[v]
        if bu != bv:
            edges.add((min(bu, bv), max(bu, bv)))
    return Graph(len(blocks), sorted(edges))


def check_biregular(g, a, b):
    """(d1, d2) if every vertex of a has d1 neighbors in b and every vertex
    of b has d2 neighbors in a; None otherwise.  Empty sides count as degree 0."""
    aset, bset = set(a), set(b)
    d1 = d2 = 0
    for i, v in enumerate(sorted(aset)):
        d = len(g._adjsets[v] & bset)
        if i == 0:
            d1 = d
        elif d != d1:
            return None
    for i, v in enumerate(sorted(bset)):
        d = len(g._adjsets[v] & aset)
        if i == 0:
            d2 = d
        elif d != d2:
            return None
    return (d1, d2)


def relabel(g, perm):
    """Image of g under the vertex bijection perm (old -> new)."""
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
