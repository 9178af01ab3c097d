"""Reading and writing graphs: graph6 and plain edge lists.

graph6 follows the standard bit-packed encoding (upper triangle, column by
column, 6 bits per printable character offset by 63).  The edge-list format is
one "u v" pair per line, an optional leading "n m" header, and optional
"c v color" lines assigning integer colors to vertices.
"""

from __future__ import annotations

from .errors import InputError
from .graphs import Graph, VertexColoring


def _g6_size(data, pos):
    b = data[pos]
    if b < 63 or b > 126:
        raise InputError("graph6: size byte out of range")
    if b != 126:
        return b - 63, pos + 1
    if data[pos + 1] != 126:
        bits = 0
        for i in range(1, 4):
            bits = (bits << 6) | (data[pos + i] - 63)
        return bits, pos + 4
    bits = 0
    for i in range(2, 8):
        bits = (bits << 6) | (data[pos + i] - 63)
    return bits, pos + 8


def from_graph6(text):
    """Decode a single graph6 line."""
    line = text.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise InputError("graph6: empty input")
    data = line.encode("ascii", errors="strict")
    n, pos = _g6_size(data, 0)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - pos != need:
        raise InputError("graph6: body length does not match vertex count")
    bits = []
    for b in data[pos:]:
        if b < 63 or b > 126:
            raise InputError("graph6: body byte out of range")
        x = b - 63
        bits.extend((x >> s) & 1 for s in (5, 4, 3, 2, 1, 0))
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return Graph(n, edges)


def to_graph6(g):
    """Encode a graph as a graph6 string."""
    n = g.n
    if n <= 62:
        head = bytes([n + 63])
    elif n <= 258047:
        head = bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    else:
        raise InputError("graph6: graph too large to encode")
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = bytearray()
    for i in range(0, len(bits), 6):
        x = 0
        for b in bits[i:i + 6]:
            x = (x << 1) | b
        body.append(x + 63)
    return (head + bytes(body)).decode("ascii")


def from_edgelist(text):
    """Parse edge-list text; returns (graph, vertex coloring or None).

    The first line is taken as an "n m" header when that reading is consistent
    with the rest of the file (n exceeds every vertex id and m matches the
    number of edge lines); otherwise it is just an edge.
    """
    edge_lines = []
    color_lines = []
    raw = [ln.strip() for ln in text.splitlines()]
    raw = [ln for ln in raw if ln and not ln.startswith("#")]
    if not raw:
        raise InputError("edge list: empty input")
    for ln in raw:
        parts = ln.split()
        if parts[0] == "c":
            if len(parts) != 3:
                raise InputError(f"edge list: bad color line {ln!r}")
            color_lines.append(parts[1:])
        else:
            if len(parts) != 2:
                raise InputError(f"edge list: bad line {ln!r}")
            edge_lines.append(parts)

    def as_int(tok):
        try:
            return int(tok)
        except ValueError:
            raise InputError(f"edge list: {tok!r} is not an integer") from None

    pairs = [(as_int(a), as_int(b)) for a, b in edge_lines]
    header = None
    if pairs:
        n0, m0 = pairs[0]
        rest = pairs[1:]
        used = {v for e in rest for v in e}
        if m0 == len(rest) and (not used or n0 > max(used)) and n0 >= 0:
            header, pairs = (n0, m0), rest
    if any(u < 0 or v < 0 for u, v in pairs):
        raise InputError("edge list: negative vertex id")
    n = header[0] if header else (max((max(e) for e in pairs), default=-1) + 1)
    g = Graph(n, pairs)
    coloring = None
    if color_lines:
        colors = [0] * n
        for vtok, ctok in color_lines:
            v, c = as_int(vtok), as_int(ctok)
            if not 0 <= v < n:
                raise InputError(f"edge list: color for unknown vertex {v}")
            colors[v] = c
        coloring = VertexColoring.from_raw(colors)
    return g, coloring


def to_edgelist(g, coloring=None):
    lines = [f"{g.n} {g.num_edges}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    if coloring is not None:
        lines += [f"c {v} {coloring.colors[v]}" for v in range(g.n)]
    return "\n".join(lines) + "\n"


def load_graph(path):
    """Load a graph from a file, picking the format from the extension."""
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    if str(path).endswith((".g6", ".graph6")):
        return from_graph6(text), None
    return from_edgelist(text)
