"""Command-line front end.

stdout carries exactly one machine-readable payload per run (JSON, or CSV
for bench); everything diagnostic goes to stderr. Exit codes: 0 success,
1 bad input, 2 broken invariant (oracle mismatch or internal assertion).
Set PARACLOSE_LOG=debug for chatter.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from fractions import Fraction

from .errors import InputFormatError, ParacloseError, StructureError
from .generate import (
    random_incidence_graph,
    random_semiorder,
    random_sp_tree,
    random_tree_order,
    random_treewidth_poset,
    random_width2_poset,
)
from .parametric import (
    maximize_quasiconvex,
    objective,
    optimum_at,
    profile,
    profile_to_json,
    rat,
    rat_str,
)
from .polygon import Polygon, _id_key
from .poset import Poset, brute_polygon, incidence_poset
from .semiorder import Semiorder, solve_semiorder
from .series_parallel import parse_sp, solve_sp, sp_to_poset, sp_tree_to_json, tree_to_sp
from .splay import reset_splay_steps, splay_steps
from .svg import polygon_svg, profile_svg
from .treewidth import TreeDecomposition, solve_treewidth
from .width2 import solve_width2
from .witness import expand

log = logging.getLogger("paraclose")


class _OracleMismatch(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; here that's an input error, code 1
    def error(self, message):
        raise InputFormatError(message)


def _setup_logging():
    level = os.environ.get("PARACLOSE_LOG", "warning").upper()
    logging.basicConfig(
        stream=sys.stderr, level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )


def _load(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as f:
                text = f.read()
    except OSError as e:
        raise InputFormatError(f"cannot read {path}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"{path}: not valid JSON: {e}") from None


def _emit(args, text):
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj):
    _emit(args, json.dumps(obj, indent=2))


def _check_oracle(args, poset, got):
    if not args.check_oracle:
        return
    n = len(poset.ids)
    if n > args.oracle_limit:
        print(f"oracle: SKIPPED (n={n} above limit {args.oracle_limit})", file=sys.stderr)
        return
    want = brute_polygon(poset, limit=args.oracle_limit, track=False)
    if want.vertices == got.vertices:
        print("oracle: MATCH", file=sys.stderr)
        return
    k = next(
        (i for i, (a, b) in enumerate(zip(got.vertices, want.vertices)) if a != b),
        min(len(got.vertices), len(want.vertices)),
    )
    raise _OracleMismatch(
        f"oracle: MISMATCH at vertex {k}: "
        f"got {list(got.vertices[k]) if k < len(got.vertices) else 'nothing'}, "
        f"want {list(want.vertices[k]) if k < len(want.vertices) else 'nothing'} "
        f"(sizes {len(got.vertices)} vs {len(want.vertices)})"
    )


def _polygon_out(args, poset, poly):
    _check_oracle(args, poset, poly)
    _emit_json(args, poly.to_json(include_witnesses=not args.no_witness))


def _cmd_oracle(args):
    poset = Poset.from_json(_load(args.input))
    poly = brute_polygon(poset, limit=args.oracle_limit, track=not args.no_witness)
    _emit_json(args, poly.to_json(include_witnesses=not args.no_witness))
    return 0


def _cmd_semiorder(args):
    s = Semiorder.from_json(_load(args.input))
    poly = solve_semiorder(s, track=not args.no_witness)
    _polygon_out(args, s.to_poset(), poly)
    return 0


def _cmd_sp(args):
    data = _load(args.input)
    if isinstance(data, dict) and "root" in data:
        t = tree_to_sp(data)
    else:
        t = parse_sp(data)
    poly = solve_sp(t, track=not args.no_witness)
    _polygon_out(args, sp_to_poset(t) if args.check_oracle else None, poly)
    return 0


def _cmd_treewidth(args):
    poset = Poset.from_json(_load(args.input))
    decomp = None
    if args.decomposition:
        decomp = TreeDecomposition.from_json(_load(args.decomposition))
    poly = solve_treewidth(poset, decomp, track=not args.no_witness)
    _polygon_out(args, poset, poly)
    return 0


def _cmd_width2(args):
    poset = Poset.from_json(_load(args.input))
    try:
        poly = solve_width2(poset, track=not args.no_witness)
    except StructureError as e:
        if e.witness:
            print("width-w sketch unsupported for w >= 3", file=sys.stderr)
        raise
    _polygon_out(args, poset, poly)
    return 0


def _cmd_incidence(args):
    poset = incidence_poset(_load(args.input))
    _emit_json(args, poset.to_json())
    return 0


def _cmd_profile(args):
    poly = Polygon.from_json(_load(args.input))
    _emit_json(args, profile_to_json(profile(poly)))
    return 0


def _cmd_optimize(args):
    poly = Polygon.from_json(_load(args.input))
    value, vertex, wit = maximize_quasiconvex(poly, objective(args.objective))
    out = {"value": rat_str(Fraction(value)), "vertex": list(vertex)}
    if wit is not None:
        out["witness"] = sorted(expand(wit), key=_id_key)
    _emit_json(args, out)
    return 0


_GEN = {
    "semiorder": lambda rng, args: random_semiorder(rng, args.n, span=args.span),
    "sp": lambda rng, args: sp_tree_to_json(random_sp_tree(rng, args.n, span=args.span)),
    "tree": lambda rng, args: random_tree_order(rng, args.n, span=args.span),
    "treewidth": lambda rng, args: random_treewidth_poset(
        rng, args.n, width=args.width, span=args.span
    ),
    "width2": lambda rng, args: random_width2_poset(rng, args.n, span=args.span),
    "incidence": lambda rng, args: random_incidence_graph(
        rng, args.n, min(2 * args.n, args.n * (args.n - 1) // 2), span=args.span
    ),
}


def _cmd_gen(args):
    rng = random.Random(args.seed)
    _emit_json(args, _GEN[args.klass](rng, args))
    return 0


def _cmd_plot(args):
    data = _load(args.input)
    if isinstance(data, dict) and "pieces" in data:
        from .parametric import Piece

        pieces = [
            Piece(
                tuple(p["vertex"]),
                None,
                None if p["from"] == "-inf" else rat(p["from"]),
                None if p["to"] == "inf" else rat(p["to"]),
            )
            for p in data["pieces"]
        ]
        text = profile_svg(pieces)
    elif isinstance(data, dict) and "elements" in data:
        poset = Poset.from_json(data)
        cloud = [
            poset.project(mask) for mask in poset.lower_sets(limit=args.oracle_limit)
        ]
        text = polygon_svg(brute_polygon(poset, limit=args.oracle_limit), cloud)
    else:
        text = polygon_svg(Polygon.from_json(data))
    out = args.out or (args.input + ".svg" if args.input != "-" else None)
    if not out:
        raise InputFormatError("plotting stdin needs --out")
    with open(out, "w") as f:
        f.write(text)
    print(f"wrote {out}", file=sys.stderr)
    return 0


_BENCH_SOLVERS = {
    "sp": lambda rng, n: solve_sp(random_sp_tree(rng, n), track=False),
    "semiorder": lambda rng, n: solve_semiorder(
        Semiorder.from_json(random_semiorder(rng, n, span=10**4)), track=False
    ),
    "width2": lambda rng, n: solve_width2(
        Poset.from_json(random_width2_poset(rng, n)), track=False
    ),
}


def _cmd_bench(args):
    sizes = [int(s) for s in args.sizes.split(",") if s]
    lines = ["size,hull,seconds,splay_steps"]
    for n in sizes:
        rng = random.Random(args.seed * 1_000_003 + n)
        reset_splay_steps()
        t0 = time.perf_counter()
        poly = _BENCH_SOLVERS[args.solver](rng, n)
        dt = time.perf_counter() - t0
        lines.append(f"{n},{len(poly.vertices)},{dt:.4f},{splay_steps()}")
        log.info("bench %s n=%d: %.3fs, %d vertices", args.solver, n, dt, len(poly.vertices))
    _emit(args, "\n".join(lines))
    return 0


def _build_parser():
    top = _Parser(prog="paraclose", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, help, input_file=True):
        p = sub.add_parser(name, help=help)
        p.set_defaults(fn=fn)
        if input_file:
            p.add_argument("input", help="input file (- for stdin)")
        p.add_argument("--out", help="write the payload here instead of stdout")
        p.add_argument("--no-witness", action="store_true", help="drop witness sets")
        p.add_argument(
            "--oracle-limit", type=int, default=20, metavar="N",
            help="max n for brute-force enumeration (default 20)",
        )
        p.add_argument(
            "--check-oracle", action="store_true",
            help="cross-check the result against brute force",
        )
        return p

    add("oracle", _cmd_oracle, "brute-force polygon of a poset file")
    add("semiorder", _cmd_semiorder, "polygon of a semiorder (items with utilities)")
    add("sp", _cmd_sp, "polygon of a series-parallel order (sp tree or rooted tree)")
    tw = add("treewidth", _cmd_treewidth, "polygon of a bounded-treewidth poset")
    tw.add_argument("--decomposition", metavar="FILE", help="tree decomposition JSON")
    add("width2", _cmd_width2, "polygon of a width-2 poset")
    add("incidence", _cmd_incidence, "turn a weighted graph into its incidence poset")
    add("profile", _cmd_profile, "parametric optimum pieces of a polygon file")
    opt = add("optimize", _cmd_optimize, "maximize a quasiconvex objective over a polygon")
    opt.add_argument(
        "--objective", default="ratio", metavar="SPEC",
        help="ratio | dist2 | linear:a,b (default ratio)",
    )
    gen = add("gen", _cmd_gen, "emit a random instance", input_file=False)
    gen.add_argument("--class", dest="klass", required=True, choices=sorted(_GEN))
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--span", type=int, default=9, help="weight magnitude bound")
    gen.add_argument("--width", type=int, default=3, help="treewidth bound for --class treewidth")
    add("plot", _cmd_plot, "render a polygon, poset (with point cloud) or profile to SVG")
    bench = add("bench", _cmd_bench, "CSV scaling runs", input_file=False)
    bench.add_argument("--solver", required=True, choices=sorted(_BENCH_SOLVERS))
    bench.add_argument("--sizes", required=True, help="comma-separated instance sizes")
    bench.add_argument("--seed", type=int, default=0)
    return top


def run(argv=None):
    _setup_logging()
    try:
        args = _build_parser().parse_args(argv)
        return args.fn(args)
    except _OracleMismatch as e:
        print(str(e), file=sys.stderr)
        return 2
    except AssertionError as e:
        print(f"invariant failure: {e}", file=sys.stderr)
        return 2
    except ParacloseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
