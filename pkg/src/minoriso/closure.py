"""The t-bounded individualization-refinement closure.

Starting from a seed set X, every vertex of X is individualized, the coloring
is refined to the 1-WL fixpoint, then every color class of size at most t is
individualized, and the refine/individualize loop repeats until the partition
stops changing.  The closure is the set of vertices that end up in singleton
classes.  Individualized vertices get colors derived from their vertex ids, so
intermediate names are not canonical; only the closure set and the final
partition are isomorphism-invariant, and downstream code consumes only those.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .graphs import Graph, PairColoring, VertexColoring, neighborhood
from .refine import refine_bundle

DEFAULT_A = 4
DEFAULT_LOG_BASE = 2


@dataclass(frozen=True)
class ClosureResult:
    d: tuple
    final_coloring: VertexColoring
    trace: tuple
    singleton_round: tuple  # first round each vertex sat in a singleton class, -1 if never

    def partition(self):
        return self.final_coloring.classes()


def t_for_h(h, a=DEFAULT_A, log_base=DEFAULT_LOG_BASE):
    """Default closure threshold: ceil((a * h * log(h))^3)."""
    if h < 2:
        raise InputError("t_for_h: h must be at least 2")
    return math.ceil((a * h * math.log(h, log_base)) ** 3)


def _record_singletons(rounds_done, counts, cols, singleton_round):
    for v, c in enumerate(cols):
        if counts[c] == 1 and singleton_round[v] < 0:
            singleton_round[v] = rounds_done


def _closure_loop(refine_step, n, init_cols, t):
    """Shared driver: alternate refinement and small-class individualization."""
    cols = list(init_cols)
    trace = []
    singleton_round = [-1] * n
    rounds_done = 0
    while True:
        cols, nrounds = refine_step(cols)
        rounds_done += max(nrounds, 1)
        counts = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        _record_singletons(rounds_done, counts, cols, singleton_round)
        trace.append(("refine", len(counts)))
        splittable = sorted(
            {c for c, cnt in counts.items() if 2 <= cnt <= t}
        )
        if not splittable:
            break
        members = {c: [] for c in splittable}
        for v, c in enumerate(cols):
            if c in members:
                members[c].append(v)
        base = max(cols) + 1
        for c in splittable:
            for v in members[c]:
                cols[v] = base + v
        rounds_done += 1
        counts = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        _record_singletons(rounds_done, counts, cols, singleton_round)
        trace.append(("individualize", [tuple(members[c]) for c in splittable]))
    d = tuple(v for v, c in enumerate(cols) if counts[c] == 1)
    final = VertexColoring.from_raw(cols)
    return ClosureResult(d, final, tuple(trace), tuple(singleton_round))


def closure_t(g, vcol, acol, x, t):
    """Closure on a vertex- and arc-colored graph."""
    if vcol is None:
        vcol = VertexColoring.uniform(g.n)
    if len(vcol.colors) != g.n:
        raise InputError("closure_t: coloring does not match graph")
    xs = set(x)
    if any(not 0 <= v < g.n for v in xs):
        raise InputError("closure_t: seed vertex out of range")
    base = max(vcol.colors, default=-1) + 1
    init = [base + v if v in xs else vcol.colors[v] for v in range(g.n)]

    def step(cols):
        out, rounds = refine_bundle([g], [cols], [acol], want_rounds=True)
        return out[0], max(len(rounds) - 1, 0)

    return _closure_loop(step, g.n, init, t)


def closure_t_pair(g, pc, x, t):
    """Closure over the complete graph with arc colors (atp, pair color).

    atp is 0 on the diagonal, 1 on edges of g and 2 on non-adjacent pairs, so
    the closure sees both the pair coloring and the actual adjacency of g.
    """
    n = g.n
    if pc.n != n:
        raise InputError("closure_t_pair: pair coloring does not match graph")
    if n == 0:
        return ClosureResult((), VertexColoring.uniform(0), (), ())
    p = np.array(pc.colors, dtype=np.int64).reshape(n, n)
    atp = np.full((n, n), 2, dtype=np.int64)
    np.fill_diagonal(atp, 0)
    for u, v in g.edges():
        atp[u, v] = 1
        atp[v, u] = 1
    _, arc = np.unique(
        np.stack([atp.reshape(-1), p.reshape(-1)], axis=1), axis=0, return_inverse=True
    )
    arc = arc.reshape(n, n).astype(np.int64)
    nark = int(arc.max()) + 1
    diag = np.diagonal(arc).copy()
    xs = sorted(set(x))
    if any(not 0 <= v < n for v in xs):
        raise InputError("closure_t_pair: seed vertex out of range")
    init = diag.copy()
    base = int(diag.max()) + 1
    for v in xs:
        init[v] = base + v

    mask = ~np.eye(n, dtype=bool)

    def step(cols):
        c = np.array(cols, dtype=np.int64)
        rounds = 0
        k = int(np.unique(c).size)
        while True:
            comp = (c[None, :] * nark + arc) * nark + arc.T
            comp = np.where(mask, comp, -1)
            comp.sort(axis=1)
            rows = np.concatenate([c[:, None], comp[:, 1:] if n > 1 else comp[:, :0]], axis=1)
            _, inv = np.unique(rows, axis=0, return_inverse=True)
            nk = int(inv.max()) + 1
            rounds += 1
            if nk == k:
                c = inv.astype(np.int64)
                break
            c = inv.astype(np.int64)
            k = nk
        return [int(v) for v in c], rounds

    return _closure_loop(step, n, [int(v) for v in init], t)


def is_tcr_bounded(g, vcol, acol, x, t):
    """Whether the closure of x swallows the whole vertex set."""
    return set(closure_t(g, vcol, acol, x, t).d) == set(range(g.n))


def components_and_separators(g, d):
    """Components of g - d together with their neighborhoods in d.

    Returns a list of (component vertices, separator vertices) sorted by the
    smallest component vertex.
    """
    ds = set(d)
    if any(not 0 <= v < g.n for v in ds):
        raise InputError("components_and_separators: vertex out of range")
    seen = set(ds)
    out = []
    for s in range(g.n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adj[u]:
                if w not in seen and w not in ds:
                    seen.add(w)
                    stack.append(w)
            # separator membership is collected afterwards from the component
        comp = tuple(sorted(comp))
        out.append((comp, neighborhood(g, comp)))
    return out
