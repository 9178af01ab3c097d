"""DOT and figure emitters for decompositions and witnesses.

DOT output is plain text built here; figures go through matplotlib with the
Agg backend, imported lazily so library users without a display stack pay
nothing.  Layouts are deterministic: circular initialization plus a fixed
number of spring iterations.
"""

import math

from .errors import InputError


def _quote(s):
    return '"' + str(s).replace('"', '\\"') + '"'


def decomposition_dot(td):
    """DOT digraph of a rooted tree decomposition, bags as node labels."""
    lines = ["digraph decomposition {", "  node [shape=box];"]
    for i, bag in enumerate(td.bags):
        label = f"{i}: {{{', '.join(map(str, bag))}}}"
        lines.append(f"  n{i} [label={_quote(label)}];")
    for a, b in td.edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def witness_dot(g, wit):
    """DOT graph with branch vertices boxed and subdivision paths bold."""
    branch = set(wit.branch)
    onpath = set()
    for path in wit.paths:
        onpath.update(zip(path, path[1:]))
        onpath.update((b, a) for a, b in zip(path, path[1:]))
    lines = ["graph witness {"]
    for v in range(g.n):
        shape = "box" if v in branch else "circle"
        lines.append(f"  v{v} [shape={shape}];")
    for u, v in g.edges():
        style = "bold" if (u, v) in onpath else "dotted"
        lines.append(f"  v{u} -- v{v} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _layout(g, iters=60):
    """Deterministic positions: circle start, then spring relaxation."""
    n = g.n
    if n == 0:
        return []
    pos = [
        (math.cos(2 * math.pi * v / n), math.sin(2 * math.pi * v / n))
        for v in range(n)
    ]
    if n == 1:
        return pos
    k = 1.0 / math.sqrt(n)
    for _ in range(iters):
        disp = [[0.0, 0.0] for _ in range(n)]
        for v in range(n):
            for w in range(v + 1, n):
                dx = pos[v][0] - pos[w][0]
                dy = pos[v][1] - pos[w][1]
                d2 = dx * dx + dy * dy + 1e-9
                f = k * k / d2
                disp[v][0] += dx * f
                disp[v][1] += dy * f
                disp[w][0] -= dx * f
                disp[w][1] -= dy * f
        for u, w in g.edges():
            dx = pos[u][0] - pos[w][0]
            dy = pos[u][1] - pos[w][1]
            d = math.sqrt(dx * dx + dy * dy) + 1e-9
            f = d / k * 0.01
            disp[u][0] -= dx * f
            disp[u][1] -= dy * f
            disp[w][0] += dx * f
            disp[w][1] += dy * f
        step = 0.05
        pos = [
            (
                pos[v][0] + max(-step, min(step, disp[v][0])),
                pos[v][1] + max(-step, min(step, disp[v][1])),
            )
            for v in range(n)
        ]
    return pos


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _draw_graph(ax, g, pos, highlight_vertices=(), highlight_edges=()):
    hset = set(highlight_vertices)
    heset = {tuple(sorted(e)) for e in highlight_edges}
    for u, v in g.edges():
        hot = tuple(sorted((u, v))) in heset
        ax.plot(
            [pos[u][0], pos[v][0]],
            [pos[u][1], pos[v][1]],
            color="#d62728" if hot else "#9e9e9e",
            linewidth=2.0 if hot else 0.8,
            zorder=1,
        )
    xs = [p[0] for p in pos]
    ys = [p[1] for p in pos]
    colors = ["#d62728" if v in hset else "#1f77b4" for v in range(g.n)]
    ax.scatter(xs, ys, c=colors, s=120, zorder=2)
    for v in range(g.n):
        ax.annotate(
            str(v), pos[v], ha="center", va="center", fontsize=7, color="white", zorder=3
        )
    ax.set_aspect("equal")
    ax.axis("off")


def render_graph(g, path, highlight_vertices=(), highlight_edges=(), title=None):
    """Draw one graph to an image file."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 6))
    _draw_graph(ax, g, _layout(g), highlight_vertices, highlight_edges)
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_decomposition(g, td, path):
    """Draw the graph next to its bag tree."""
    plt = _pyplot()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(12, 6))
    _draw_graph(ax1, g, _layout(g))
    ax1.set_title(f"graph (n={g.n})")
    from .graphs import Graph

    tree = Graph(len(td.bags), list(td.edges))
    tpos = _layout(tree)
    for a, b in tree.edges():
        ax2.plot(
            [tpos[a][0], tpos[b][0]], [tpos[a][1], tpos[b][1]], color="#9e9e9e", zorder=1
        )
    ax2.scatter([p[0] for p in tpos], [p[1] for p in tpos], c="#2ca02c", s=200, zorder=2)
    for i, bag in enumerate(td.bags):
        ax2.annotate(
            ",".join(map(str, bag)) or "-",
            tpos[i],
            ha="center",
            va="center",
            fontsize=6,
            zorder=3,
        )
    ax2.set_title(f"bags (adhesion={td.adhesion()})")
    ax2.set_aspect("equal")
    ax2.axis("off")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_witness(g, wit, path):
    """Draw the graph with branch vertices and subdivision paths marked."""
    edges = []
    for p in wit.paths:
        edges.extend(zip(p, p[1:]))
    render_graph(
        g,
        path,
        highlight_vertices=wit.branch,
        highlight_edges=edges,
        title=f"topological clique on {len(wit.branch)} branch vertices",
    )


def corpus_overview(rows, path):
    """Bar chart of corpus sizes; rows are manifest entries (dicts with
    name, n, m)."""
    if not rows:
        raise InputError("corpus_overview: no rows")
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(max(6, 0.4 * len(rows)), 4))
    idx = range(len(rows))
    ax.bar(idx, [r["n"] for r in rows], width=0.4, label="vertices")
    ax.bar(
        [i + 0.4 for i in idx], [r["m"] for r in rows], width=0.4, label="edges"
    )
    ax.set_xticks([i + 0.2 for i in idx])
    ax.set_xticklabels([r["name"] for r in rows], rotation=90, fontsize=6)
    ax.legend()
    ax.set_title("generated corpus")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
