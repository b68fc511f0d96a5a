"""Command-line front end.

Structured results go to stdout as JSON; diagnostics go to stderr. Exit
status: 0 success, 1 negative answer, 2 bad input or failed precondition,
3 search budget exhausted, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .certificate import DecompositionCertificate
from .connectivity import (
    PartitionObstruction,
    edge_connectivity,
    partition_connected_decompose,
    spanning_tree_packing,
)
from .decomposition import bounds_report, simple_t_decompose
from .errors import ArborError, FormatError, Infeasible, InvalidParams
from .factors import (
    DegreePlan,
    FactorSystem,
    hoffman_factor,
    modulo_factor,
    multi_modulo_decompose,
    semi_regular_split,
)
from .graph import BipartitionedGraph, Factor, parse_graph, parse_rational, parse_tree, serialize_graph
from .oracle import (
    brute_force_partition_connectivity,
    canonical_tree_code,
    exact_t_decomposition,
    generate,
    verify_decomposition,
)
from .oracle.exact import DEFAULT_CAP

log = logging.getLogger("arbor")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InvalidParams(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc.msg}", exc.lineno) from None


def _emit(doc, out: str | None = None):
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise InvalidParams(f"expected a list of integers, got {text!r}") from None


def _bipartitioned(g, xs: str | None) -> BipartitionedGraph:
    if xs is not None:
        return BipartitionedGraph.from_sets(g, _ints(xs))
    return BipartitionedGraph.two_coloring(g)


def _factor(g, path: str | None) -> Factor:
    if path is None:
        return Factor(g)
    return Factor(g, frozenset(g.copy_index(c) for c in _read_json(path)))


def _factor_json(f: Factor) -> dict:
    return {"copies": f.copy_ids(), "degrees": f.degrees()}


def _obstruction_json(obs) -> dict | None:
    if obs is None:
        return None
    if isinstance(obs, PartitionObstruction):
        return {
            "partition": [sorted(p) for p in obs.partition],
            "cross": obs.cross,
            "achieved": obs.achieved,
            "required": obs.required,
        }
    if isinstance(obs, (set, frozenset)):
        return {"vertices": sorted(obs)}
    return obs


# -- subcommands -------------------------------------------------------------------


def cmd_decompose(args) -> int:
    g = parse_graph(_read(args.graph))
    t = parse_tree(_read(args.tree))
    try:
        cert = simple_t_decompose(g, t, args.mode, conn=args.conn, outdeg=args.outdeg,
                                  seed=args.seed, cap=args.cap)
    except Infeasible as exc:
        print(f"no decomposition: {exc}", file=sys.stderr)
        _emit({"decomposable": False, "obstruction": _obstruction_json(exc.obstruction)})
        return 1
    verdict = verify_decomposition(g, t, cert)
    if not verdict:
        print(f"internal error: certificate rejected: {verdict.reason}", file=sys.stderr)
        return 4
    _emit(cert.to_json(), args.out)
    print(f"decomposed {g.copy_count} edge copies into {len(cert)} copies of the tree",
          file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.graph))
    t = parse_tree(_read(args.tree))
    cert = DecompositionCertificate.from_json(_read_json(args.cert))
    verdict = verify_decomposition(g, t, cert)
    _emit({"accepted": verdict.ok, "clause": verdict.clause, "copy": verdict.copy,
           "reason": verdict.reason})
    if not verdict:
        print(f"rejected: {verdict.reason}", file=sys.stderr)
        return 1
    return 0


def cmd_connectivity(args) -> int:
    g = parse_graph(_read(args.graph))
    if args.edge:
        value, witness = edge_connectivity(g)
        _emit({"edge_connectivity": value, "witness": sorted(witness)})
        return 0
    try:
        if args.trees is not None:
            trees = spanning_tree_packing(g, args.trees)
            _emit({"tree_connected": True, "m": args.trees, "trees": [t.copy_ids() for t in trees]})
            return 0
        m, l = args.partition
        mode = "heuristic" if args.heuristic else "exact"
        cert = partition_connected_decompose(g, m, l, mode=mode)
    except Infeasible as exc:
        print(str(exc), file=sys.stderr)
        _emit({"answer": False, "obstruction": _obstruction_json(exc.obstruction)})
        return 1
    problems = cert.problems()
    if problems:
        print(f"internal error: {problems[0]}", file=sys.stderr)
        return 4
    _emit({"answer": True, "certificate": cert.to_json()})
    return 0


def cmd_factor(args) -> int:
    g = parse_graph(_read(args.graph))
    bg = _bipartitioned(g, args.x)
    if args.kind == "hoffman":
        f = hoffman_factor(bg, parse_rational(args.eps))
        _emit(_factor_json(f))
        return 0
    if args.kind == "modulo":
        if args.plan:
            plan = DegreePlan.from_json(_read_json(args.plan))
            if args.system:
                doc = _read_json(args.system)
                system = FactorSystem(
                    tuple(Factor(g, frozenset(g.copy_index(c) for c in f)) for f in doc["reserved"]),
                    tuple(Factor(g, frozenset(g.copy_index(c) for c in f)) for f in doc["connectors"]),
                )
            else:
                empty = Factor(g)
                system = FactorSystem((empty,) * (plan.b + 1), (empty,) * plan.b)
            parts = multi_modulo_decompose(bg, plan, system)
            _emit({"factors": [_factor_json(p) for p in parts]})
            return 0
        if args.k is None or args.f is None:
            raise InvalidParams("modulo needs --k and --f (or --plan)")
        h = modulo_factor(bg, _ints(args.f), args.k, _factor(g, args.F), _factor(g, args.F0),
                          _factor(g, args.T))
        _emit(_factor_json(h))
        return 0
    g1, g2 = semi_regular_split(bg, args.m, args.lam, args.l)
    _emit({"G1": _factor_json(g1), "G2": _factor_json(g2), "x": bg.xs})
    return 0


def cmd_bounds(args) -> int:
    if args.tree:
        t = parse_tree(_read(args.tree))
    elif args.m:
        t = args.m
    else:
        raise InvalidParams("bounds needs --tree or --m")
    _emit(bounds_report(t, args.lam, args.k).to_json())
    return 0


def cmd_generate(args) -> int:
    params = {}
    if args.model == "circulant":
        params = {"n": args.n, "offsets": _ints(args.offsets or "")}
    elif args.model == "random_bipartite":
        params = {"nx": args.nx, "ny": args.ny, "m": args.m, "p": args.p, "max_mult": args.max_mult}
    elif args.model == "random_regularish":
        params = {"n": args.n, "d": args.d}
    elif args.model == "doubled":
        if not args.base:
            raise InvalidParams("doubled needs --base")
        params = {"base": parse_graph(_read(args.base)), "times": args.times}
    if any(v is None for v in params.values()):
        missing = [k for k, v in params.items() if v is None]
        raise InvalidParams(f"model {args.model} needs --{missing[0].replace('_', '-')}")
    g = generate(args.model, params, args.seed)
    text = serialize_graph(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args) -> int:
    if args.what == "treecode":
        t = parse_tree(_read(args.tree))
        _emit({"code": canonical_tree_code(t).decode("ascii")})
        return 0
    g = parse_graph(_read(args.graph))
    if args.what == "decompose":
        t = parse_tree(_read(args.tree))
        cert = exact_t_decomposition(g, t, cap=args.cap)
        if cert is None:
            _emit({"decomposable": False})
            return 1
        _emit(cert.to_json())
        return 0
    ans = brute_force_partition_connectivity(g, args.m, args.l)
    doc = {"answer": ans.yes}
    if ans.yes:
        doc["oriented"] = [list(g.copy_id(i)) for i in sorted(ans.oriented)]
    _emit(doc)
    return 0 if ans.yes else 1


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arbor", description="Certified tree decompositions of graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="decompose a graph into copies of a tree")
    d.add_argument("--graph", required=True)
    d.add_argument("--tree", required=True)
    d.add_argument("--mode", choices=("pipeline", "exact", "auto"), default="auto")
    d.add_argument("--conn", type=int, help="relaxed partition-connectivity threshold (trees)")
    d.add_argument("--outdeg", type=int, help="relaxed partition-connectivity threshold (out-degree)")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--cap", type=int, default=DEFAULT_CAP, help="edge-copy cap for the exact solver")
    d.add_argument("--out")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="check a decomposition certificate")
    v.add_argument("--graph", required=True)
    v.add_argument("--tree", required=True)
    v.add_argument("--cert", required=True)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("connectivity", help="edge-, tree- and partition-connectivity")
    c.add_argument("--graph", required=True)
    which = c.add_mutually_exclusive_group(required=True)
    which.add_argument("--edge", action="store_true")
    which.add_argument("--trees", type=int, metavar="M")
    which.add_argument("--partition", type=int, nargs=2, metavar=("M", "L"))
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact decision (default)")
    mode.add_argument("--heuristic", action="store_true", help="trees first, then orientation")
    c.set_defaults(func=cmd_connectivity)

    f = sub.add_parser("factor", help="degree-constrained factors of bipartite graphs")
    fsub = f.add_subparsers(dest="kind", required=True)
    fh = fsub.add_parser("hoffman")
    fh.add_argument("--eps", required=True, help="rational p/q in [0, 1]")
    fm = fsub.add_parser("modulo")
    fm.add_argument("--k", type=int)
    fm.add_argument("--f", help="target per vertex, comma separated")
    fm.add_argument("--F", help="JSON copy-id list forced into the factor")
    fm.add_argument("--F0", help="JSON copy-id list kept out of the factor")
    fm.add_argument("--T", help="JSON copy-id list of the connector")
    fm.add_argument("--plan", help="DegreePlan JSON; runs the multi-factor engine")
    fm.add_argument("--system", help='JSON {"reserved": [...], "connectors": [...]}')
    fs = fsub.add_parser("split")
    fs.add_argument("--m", type=int, required=True)
    fs.add_argument("--lambda", dest="lam", type=int, default=0)
    fs.add_argument("--l", type=int, default=0)
    for sp in (fh, fm, fs):
        sp.add_argument("--graph", required=True)
        sp.add_argument("--x", help="vertices of side X (default: 2-colouring)")
    f.set_defaults(func=cmd_factor)

    b = sub.add_parser("bounds", help="closed-form thresholds for a tree")
    b.add_argument("--tree")
    b.add_argument("--m", type=int, help="tree size (uses the path) when no tree is given")
    b.add_argument("--lambda", dest="lam", type=int, default=0)
    b.add_argument("--k", type=int, default=1)
    b.set_defaults(func=cmd_bounds)

    gsp = sub.add_parser("generate", help="write a generated instance")
    gsp.add_argument("--model", required=True,
                     choices=("circulant", "random_bipartite", "random_regularish", "doubled"))
    gsp.add_argument("--seed", type=int, default=0)
    gsp.add_argument("--n", type=int)
    gsp.add_argument("--offsets")
    gsp.add_argument("--nx", type=int)
    gsp.add_argument("--ny", type=int)
    gsp.add_argument("--m", type=int, default=1)
    gsp.add_argument("--p", type=float, default=0.6)
    gsp.add_argument("--max-mult", type=int, default=1)
    gsp.add_argument("--d", type=int)
    gsp.add_argument("--base")
    gsp.add_argument("--times", type=int, default=2)
    gsp.add_argument("--out")
    gsp.set_defaults(func=cmd_generate)

    o = sub.add_parser("oracle", help="exhaustive ground truth")
    osub = o.add_subparsers(dest="what", required=True)
    od = osub.add_parser("decompose")
    od.add_argument("--graph", required=True)
    od.add_argument("--tree", required=True)
    od.add_argument("--cap", type=int, default=DEFAULT_CAP)
    op = osub.add_parser("partition")
    op.add_argument("--graph", required=True)
    op.add_argument("--m", type=int, required=True)
    op.add_argument("--l", type=int, required=True)
    ot = osub.add_parser("treecode")
    ot.add_argument("--tree", required=True)
    o.set_defaults(func=cmd_oracle)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ArborError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001 - any escape is a bug
        log.exception("unexpected failure")
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 4


def main():
    sys.exit(run())
