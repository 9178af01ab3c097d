"""Command-line front end.

One subcommand per analysis; JSON on stdout is the machine-readable output,
with DOT and image files available for decompositions and witnesses.  Exit
codes: 0 success (for `iso`: isomorphic), 1 negative decision, 2 minor
found, 64 usage, 65 bad input data, 70 internal failure.  Output is
deterministic for fixed inputs and seed; MINORISO_LOG sets the stderr log
level.
"""

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass

from .closure import closure_t, components_and_separators, t_for_h
from .corpus import random_connected_gnp, random_partial_ktree, random_planar
from .engine import BTStruct, automorphism_generators
from .errors import CapacityError, InputError, InternalError, MinorDetected
from .formats import load_graph, to_graph6
from .graphs import VertexColoring
from .initial import find_initial_class
from .iso import is_isomorphic, tree_decomposition
from .perm import PermGroup
from .refine import color_refine_trace, wl2_bundle
from .witness import extract_topological_clique

log = logging.getLogger("minoriso")


class UsageError(Exception):
    """Bad flag combination or parameter value; exits 64."""


@dataclass(frozen=True)
class Config:
    """Run parameters shared by the subcommands.

    t, when not overridden, is derived from h as ceil((a h log h)^3).  Brute
    enumeration caps live in the perm module and are per-call arguments there,
    not flags.
    """

    h: int = None
    a: float = 4.0
    log_base: float = 2.0
    t: int = None
    seed: int = 0

    def __post_init__(self):
        if self.h is not None and self.h < 2:
            raise UsageError("--h must be at least 2")
        if self.t is not None and self.t < 1:
            raise UsageError("--t must be at least 1")
        if self.a <= 0 or self.log_base <= 1:
            raise UsageError("--a must be positive and --log-base above 1")

    def resolved_t(self):
        if self.t is not None:
            return self.t
        if self.h is None:
            raise UsageError("need --t or --h to fix the closure threshold")
        return t_for_h(self.h, self.a, self.log_base)


def _config(args):
    return Config(
        h=getattr(args, "h", None),
        a=getattr(args, "a", 4.0),
        log_base=getattr(args, "log_base", 2.0),
        t=getattr(args, "t", None),
        seed=getattr(args, "seed", 0),
    )


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _vertex_list(spec, n, what):
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            v = int(tok)
        except ValueError:
            raise UsageError(f"{what}: {tok!r} is not an integer") from None
        if not 0 <= v < n:
            raise InputError(f"{what}: vertex {v} out of range")
        out.append(v)
    if not out:
        raise UsageError(f"{what}: empty vertex list")
    return out


def _classes_json(coloring):
    return [sorted(c) for c in coloring.classes()]


def cmd_refine(args):
    g, vcol = load_graph(args.graph)
    trace = color_refine_trace(g, vcol)
    stable = trace.rounds[-1]
    _emit(
        {
            "classes": _classes_json(stable),
            "colors": list(stable.colors),
            "rounds": trace.round_count,
        }
    )
    return 0


def cmd_wl2(args):
    g, vcol = load_graph(args.graph)
    pcs, rounds = wl2_bundle([g], [vcol], want_rounds=True)
    pc = pcs[0]
    classes = [[[u, v] for u, v in cl] for cl in pc.classes()]
    _emit({"classes": classes, "colors": list(pc.colors), "rounds": rounds})
    return 0


def cmd_closure(args):
    cfg = _config(args)
    g, vcol = load_graph(args.graph)
    x = _vertex_list(args.x, g.n, "--x")
    res = closure_t(g, vcol, None, x, cfg.resolved_t())
    seps = [
        {"s": sorted(s), "z": sorted(z)}
        for z, s in components_and_separators(g, res.d)
    ]
    _emit(
        {
            "d": sorted(res.d),
            "partition": _classes_json(res.final_coloring),
            "separators": seps,
        }
    )
    return 0


def cmd_initial_color(args):
    cfg = _config(args)
    g, vcol = load_graph(args.graph)
    try:
        out = find_initial_class(
            g, vcol, cfg.h, cfg.resolved_t(), cfg.a, cfg.log_base
        )
    except MinorDetected as exc:
        _emit({"minor": True, "reason": exc.reason})
        return 0
    classes = [[[u, v] for u, v in cl] for cl in out.chi_prime.classes()]
    _emit(
        {
            "chiprime": classes,
            "gprime": {"edges": [list(e) for e in out.g_prime.edges()], "n": out.g_prime.n},
            "restarts": out.restarts,
            "x": sorted(out.x),
            "x_map": [[v, out.x_map[v]] for v in sorted(out.x)],
        }
    )
    return 0


def cmd_iso(args):
    cfg = _config(args)
    g1, c1 = load_graph(args.graph1)
    g2, c2 = load_graph(args.graph2)
    out = is_isomorphic(g1, c1, g2, c2, cfg.h, cfg.t)
    doc = {"decision": out.kind}
    if out.reason is not None:
        doc["reason"] = out.reason
    if out.mapping is not None:
        doc["mapping"] = list(out.mapping)
    if args.emit_aut:
        raw = tuple(c1.colors) if c1 is not None else (0,) * g1.n
        doc["aut_generators"] = [
            list(p) for p in automorphism_generators(BTStruct(g1, raw))
        ]
    _emit(doc)
    return {"iso": 0, "non-iso": 1, "minor-found": 2}[out.kind]


def cmd_aut(args):
    g, vcol = load_graph(args.graph)
    raw = tuple(vcol.colors) if vcol is not None else (0,) * g.n
    gens = automorphism_generators(BTStruct(g, raw))
    order = PermGroup(g.n, gens).order() if g.n else 1
    _emit({"generators": [list(p) for p in gens], "order": order})
    return 0


def cmd_decompose(args):
    cfg = _config(args)
    g, vcol = load_graph(args.graph)
    try:
        td = tree_decomposition(g, vcol, cfg.h, cfg.t)
    except MinorDetected as exc:
        _emit({"minor": True, "reason": exc.reason})
        return 2
    if args.render:
        from .render import render_decomposition

        render_decomposition(g, td, args.render)
        log.info("figure written to %s", args.render)
    if args.dot:
        from .render import decomposition_dot

        sys.stdout.write(decomposition_dot(td))
    else:
        _emit(
            {
                "adhesion": td.adhesion(),
                "edges": [list(e) for e in td.edges],
                "nodes": [{"bag": sorted(b), "id": i} for i, b in enumerate(td.bags)],
            }
        )
    return 0


def cmd_witness(args):
    g, vcol = load_graph(args.graph)
    branch = sorted(set(_vertex_list(args.branch, g.n, "--branch")))
    if args.region:
        region = sorted(set(_vertex_list(args.region, g.n, "--region")))
    else:
        region = sorted(set(range(g.n)) - set(branch))
    base = vcol.colors if vcol is not None else (0,) * g.n
    top = max(base, default=-1) + 1
    raw = list(base)
    for i, v in enumerate(branch):
        raw[v] = top + i
    trace = color_refine_trace(g, VertexColoring.from_raw(raw))
    wit, small = extract_topological_clique(g, trace.rounds[-1], branch, region)
    if wit is None:
        _emit({"small_class": small, "witness": False})
        return 1
    if args.render:
        from .render import render_witness

        render_witness(g, wit, args.render)
        log.info("figure written to %s", args.render)
    if args.dot:
        from .render import witness_dot

        sys.stdout.write(witness_dot(g, wit))
    else:
        _emit({"branch": list(wit.branch), "paths": [list(p) for p in wit.paths]})
    return 0


def _corpus_specs(args, rng):
    for i in range(args.planar):
        n = rng.randrange(args.min_n, args.max_n + 1)
        yield f"planar_{i:03d}", "planar", random_planar(n, rng)
    for i in range(args.ktree):
        n = rng.randrange(args.min_n, args.max_n + 1)
        yield f"ktree_{i:03d}", "partial-k-tree", random_partial_ktree(n, args.k, rng)
    for i in range(args.random):
        n = rng.randrange(args.min_n, args.max_n + 1)
        p = rng.uniform(0.1, 0.35)
        yield f"random_{i:03d}", "gnp", random_connected_gnp(n, p, rng)


def cmd_gen_corpus(args):
    cfg = _config(args)
    if args.min_n < 1 or args.max_n < args.min_n:
        raise UsageError("need 1 <= --min-n <= --max-n")
    if min(args.planar, args.ktree, args.random) < 0 or args.k < 1:
        raise UsageError("family counts and --k must be non-negative")
    os.makedirs(args.out, exist_ok=True)
    rng = random.Random(cfg.seed)
    rows = []
    for name, family, g in _corpus_specs(args, rng):
        fname = name + ".g6"
        with open(os.path.join(args.out, fname), "w", encoding="ascii") as fh:
            fh.write(to_graph6(g) + "\n")
        rows.append(
            {"family": family, "file": fname, "m": g.num_edges, "n": g.n, "name": name}
        )
    manifest = os.path.join(args.out, "manifest.tsv")
    with open(manifest, "w", encoding="ascii") as fh:
        fh.write("name\tfamily\tn\tm\tfile\n")
        for r in rows:
            fh.write(f"{r['name']}\t{r['family']}\t{r['n']}\t{r['m']}\t{r['file']}\n")
    if args.render:
        from .render import corpus_overview

        corpus_overview(rows, args.render)
        log.info("figure written to %s", args.render)
    _emit({"count": len(rows), "manifest": manifest, "seed": cfg.seed})
    return 0


def _add_params(sp, need_h):
    sp.add_argument("--h", type=int, required=need_h, help="excluded clique size")
    sp.add_argument("--t", type=int, help="closure threshold override")
    sp.add_argument("--a", type=float, default=4.0, help="degree constant for t")
    sp.add_argument("--log-base", type=float, default=2.0, dest="log_base")


def build_parser():
    p = argparse.ArgumentParser(
        prog="minoriso",
        description="isomorphism tests for graphs excluding a clique minor",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("refine", help="stable 1-WL coloring")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_refine)

    sp = sub.add_parser("wl2", help="stable 2-WL pair coloring")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_wl2)

    sp = sub.add_parser("closure", help="bounded closure of a seed set")
    sp.add_argument("graph")
    sp.add_argument("--x", required=True, help="seed vertices, comma separated")
    _add_params(sp, need_h=False)
    sp.set_defaults(func=cmd_closure)

    sp = sub.add_parser("initial-color", help="start-class search")
    sp.add_argument("graph")
    _add_params(sp, need_h=True)
    sp.set_defaults(func=cmd_initial_color)

    sp = sub.add_parser("iso", help="decide isomorphism of two graphs")
    sp.add_argument("graph1")
    sp.add_argument("graph2")
    _add_params(sp, need_h=True)
    sp.add_argument(
        "--emit-aut",
        action="store_true",
        help="include automorphism generators of the first graph",
    )
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("aut", help="automorphism generators and group order")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_aut)

    sp = sub.add_parser("decompose", help="tree decomposition along closures")
    sp.add_argument("graph")
    _add_params(sp, need_h=True)
    sp.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    sp.add_argument("--render", help="write a figure to this path")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("witness", help="topological clique witness")
    sp.add_argument("graph")
    sp.add_argument("--branch", required=True, help="branch vertices, comma separated")
    sp.add_argument("--region", help="region vertices, default all others")
    sp.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    sp.add_argument("--render", help="write a figure to this path")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("gen-corpus", help="generate test graphs")
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--planar", type=int, default=5, help="number of planar graphs")
    sp.add_argument("--ktree", type=int, default=5, help="number of partial k-trees")
    sp.add_argument("--random", type=int, default=5, help="number of random graphs")
    sp.add_argument("--k", type=int, default=3, help="width for partial k-trees")
    sp.add_argument("--min-n", type=int, default=8, dest="min_n")
    sp.add_argument("--max-n", type=int, default=30, dest="max_n")
    sp.add_argument("--render", help="write an overview figure to this path")
    sp.set_defaults(func=cmd_gen_corpus)

    return p


def main(argv=None):
    level = os.environ.get("MINORISO_LOG", "WARNING").upper()
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 64
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 64
    except (InputError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 65
    except (CapacityError, InternalError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 70


def entry():
    sys.exit(main())
