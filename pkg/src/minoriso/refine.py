"""Color refinement (1-dimensional) and the two-dimensional Weisfeiler-Leman
procedure, with canonical color naming.

New color ids are assigned every round by sorting the distinct signatures
(old id, sorted neighborhood multiset) and ranking them.  Signatures are
compared structurally, never hashed.  All refinement cores accept a *bundle*
of graphs and rank signatures over the whole bundle, so two graphs refined
together end up with directly comparable color ids; the single-graph public
functions are bundles of size one.  Because the previous color id is the
leading signature component, re-ranking a stable coloring reproduces it, which
makes the fixpoint naming well defined.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graphs import ArcColoring, PairColoring, VertexColoring


def _pool_rank(values_per_graph):
    """Rank arbitrary comparable values jointly over a bundle."""
    pool = set()
    for vals in values_per_graph:
        pool.update(vals)
    order = {v: i for i, v in enumerate(sorted(pool))}
    return [[order[v] for v in vals] for vals in values_per_graph], len(order)


def refine_bundle(graphs, init_colors, arc_colorings=None, want_rounds=False):
    """Stable 1-WL colorings for a bundle, pooled ids.

    init_colors: per graph, a list of comparable raw values (one per vertex).
    arc_colorings: per graph, an ArcColoring or None.
    Returns (list of stable color lists, list of per-round color lists).
    """
    if arc_colorings is None:
        arc_colorings = [None] * len(graphs)
    cols, nclasses = _pool_rank(init_colors)
    rounds = [[list(c) for c in cols]] if want_rounds else []
    while True:
        sigs = []
        for g, col, ac in zip(graphs, cols, arc_colorings):
            if ac is None:
                gsig = [
                    (col[v], tuple(sorted(col[w] for w in g.adj[v])))
                    for v in range(g.n)
                ]
            else:
                gsig = [
                    (
                        col[v],
                        tuple(sorted((col[w], ac.get(v, w), ac.get(w, v)) for w in g.adj[v])),
                    )
                    for v in range(g.n)
                ]
            sigs.append(gsig)
        cols, k = _pool_rank(sigs)
        if k == nclasses:
            break
        nclasses = k
        if want_rounds:
            rounds.append([list(c) for c in cols])
    return cols, rounds


@dataclass(frozen=True)
class RefinementTrace:
    """Round-by-round colorings of a refinement run (round 0 = initial)."""

    rounds: tuple
    round_count: int


def color_refine(g, vcol=None, acol=None):
    """Stable canonical 1-WL coloring of a single graph."""
    if vcol is None:
        vcol = VertexColoring.uniform(g.n)
    if len(vcol.colors) != g.n:
        raise InputError("color_refine: coloring does not match graph")
    cols, _ = refine_bundle([g], [list(vcol.colors)], [acol])
    k = len(set(cols[0])) if cols[0] else 0
    return VertexColoring(tuple(cols[0]), k)


def color_refine_trace(g, vcol=None, acol=None):
    if vcol is None:
        vcol = VertexColoring.uniform(g.n)
    cols, rounds = refine_bundle([g], [list(vcol.colors)], [acol], want_rounds=True)
    out = []
    for r in rounds:
        k = len(set(r[0])) if r[0] else 0
        out.append(VertexColoring(tuple(r[0]), k))
    return RefinementTrace(tuple(out), len(out))


def _adjacency_matrix(g):
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges():
        a[u, v] = 1
        a[v, u] = 1
    return a


def _initial_pair_rows(g, init):
    """(n^2, k) array of raw initial signatures for ordered pairs."""
    n = g.n
    adj = _adjacency_matrix(g)
    eye = np.eye(n, dtype=np.int64)
    if init is None:
        init = VertexColoring.uniform(n)
    if isinstance(init, VertexColoring):
        if len(init.colors) != n:
            raise InputError("wl2: vertex coloring does not match graph")
        c = np.array(init.colors, dtype=np.int64)
        rows = np.stack(
            [
                np.repeat(c, n),
                np.tile(c, n),
                eye.reshape(-1),
                adj.reshape(-1),
            ],
            axis=1,
        )
    elif isinstance(init, PairColoring):
        if init.n != n:
            raise InputError("wl2: pair coloring does not match graph")
        p = np.array(init.colors, dtype=np.int64)
        rows = np.stack([p, eye.reshape(-1), adj.reshape(-1)], axis=1)
    else:
        raise InputError("wl2: init must be a VertexColoring or PairColoring")
    return rows


def _sorted_sig_rows(c_mat, num_colors):
    """Per ordered pair, (current color, sorted vector of composed colors)."""
    n = c_mat.shape[0]
    k = np.int64(num_colors)
    out = np.empty((n * n, n + 1), dtype=np.int64)
    out[:, 0] = c_mat.reshape(-1)
    chunk = max(1, 2_000_000 // max(1, n * n))
    ct = c_mat.T
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        block = c_mat[lo:hi, None, :] * k + ct[None, :, :]
        block.sort(axis=2)
        out[lo * n:hi * n, 1:] = block.reshape((hi - lo) * n, n)
    return out


def wl2_bundle(graphs, inits, want_rounds=False):
    """Stable 2-WL pair colorings for a bundle of same-order graphs.

    With want_rounds, returns (colorings, rounds) where rounds counts the
    initial ranking plus each strictly refining sweep.
    """
    ns = {g.n for g in graphs}
    if len(ns) != 1:
        raise InputError("wl2_bundle: all graphs must have the same order")
    n = ns.pop()
    if n == 0:
        out = [PairColoring(0, (), 0) for _ in graphs]
        return (out, 1) if want_rounds else out
    raw = [_initial_pair_rows(g, init) for g, init in zip(graphs, inits)]
    _, inv = np.unique(np.vstack(raw), axis=0, return_inverse=True)
    mats = []
    ofs = 0
    for _ in graphs:
        mats.append(inv[ofs:ofs + n * n].reshape(n, n).astype(np.int64))
        ofs += n * n
    nclasses = int(inv.max()) + 1
    rounds = 1
    while True:
        rows = [_sorted_sig_rows(m, nclasses) for m in mats]
        _, inv = np.unique(np.vstack(rows), axis=0, return_inverse=True)
        k = int(inv.max()) + 1
        new = []
        ofs = 0
        for _ in graphs:
            new.append(inv[ofs:ofs + n * n].reshape(n, n).astype(np.int64))
            ofs += n * n
        if k == nclasses:
            break
        mats, nclasses = new, k
        rounds += 1
    out = [PairColoring(n, tuple(int(x) for x in m.reshape(-1)), nclasses) for m in mats]
    return (out, rounds) if want_rounds else out


def wl2(g, init=None):
    """Stable canonical 2-WL pair coloring of a single graph."""
    return wl2_bundle([g], [init])[0]


def wl2_pair(g1, init1, g2, init2):
    """2-WL on two graphs with jointly ranked colors."""
    return tuple(wl2_bundle([g1, g2], [init1, init2]))


def partitions_equivalent(c1, c2):
    """Whether two colorings of the same domain induce the same partition."""
    a = c1.colors if hasattr(c1, "colors") else tuple(c1)
    b = c2.colors if hasattr(c2, "colors") else tuple(c2)
    if len(a) != len(b):
        raise InputError("partitions_equivalent: domain size mismatch")
    fwd, bwd = {}, {}
    for x, y in zip(a, b):
        if fwd.setdefault(x, y) != y or bwd.setdefault(y, x) != x:
            return False
    return True


def diagonal_classes(pc):
    """Diagonal color -> sorted vertex tuple, using raw pair-color ids."""
    out = {}
    for v in range(pc.n):
        out.setdefault(pc.get(v, v), []).append(v)
    return {c: tuple(vs) for c, vs in out.items()}


def canonical_edge_color(pc, u, v):
    """Orientation-independent id for the edge color of {u, v}."""
    return min(pc.get(u, v), pc.get(v, u))


def edge_color_map(g, pc):
    """Canonical edge color -> sorted edge list."""
    out = {}
    for u, v in g.edges():
        out.setdefault(canonical_edge_color(pc, u, v), []).append((u, v))
    return {c: sorted(es) for c, es in out.items()}
