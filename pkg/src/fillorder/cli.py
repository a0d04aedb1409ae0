"""Command-line surface.

Subcommands: order (compute an elimination ordering), verify (check the
approximate greedy property of a permutation), fill (total fill of a
permutation), gen (emit instances), cover-check (validate a covering set
system), report (ordering plus degree log and figures).

Exit codes: 0 success, 1 verification failure, 2 IO/parse error,
64 invalid usage, 65 not a permutation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import graph_io, instances, report
from .decay import ApproxOrderingConfig, approx_min_degree_sequence
from .exact import delta_capped_min_degree, output_sensitive_min_degree
from .graphs import (Graph, GraphError, OrderingResult, mindeg_ordering_bruteforce,
                     total_fill, verify_ordering)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_IO = 2
EXIT_USAGE = 64
EXIT_NOT_PERMUTATION = 65

METHODS = ("brute", "sketch-exact", "capped", "output-sensitive", "approx")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_graph_arg(p):
    p.add_argument("--input", "-i", default="-", help="graph path or - for stdin")
    p.add_argument("--format", choices=("auto", "matrix-market", "mm", "edge-list", "edges"),
                   default="auto")


def _add_order_args(p):
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--delta", type=int, help="degree cap (capped method)")
    p.add_argument("--epsilon", type=float, help="approximation error (approx method)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads for candidate degree estimation")
    p.add_argument("--audit", action="store_true",
                   help="print a final JSON line of audit counters")
    p.add_argument("--c-k", type=float, default=4.0, help="copy multiplier, exact methods")
    p.add_argument("--c-q", type=float, default=8.0, help="copy multiplier, quantile buckets")
    p.add_argument("--c-sigma", type=float, default=5.0, help="mean-estimator cutoff multiplier")
    p.add_argument("--c-lim", type=float, default=4.0, help="geometric-trial cap multiplier")
    p.add_argument("--c1", type=float, default=3.0, help="error-split constant (> 1)")
    p.add_argument("--c2", type=float, default=7.0, help="order-statistic stopping threshold")
    p.add_argument("--c-scan", type=float, default=2.0, help="bucket scan width multiplier")
    p.add_argument("--degree-policy", choices=("auto", "sample"), default="auto")


def build_parser() -> _Parser:
    ap = _Parser(prog="fillorder", description=__doc__,
                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", help="compute an elimination ordering")
    _add_graph_arg(p)
    _add_order_args(p)
    p.add_argument("--out", "-o", default="-", help="permutation output path or -")
    p.add_argument("--log-degrees", action="store_true",
                   help="append the reported fill degree as a second column")

    p = sub.add_parser("verify", help="check the (1+eps)-approximate greedy property")
    _add_graph_arg(p)
    p.add_argument("--perm", required=True, help="permutation path or -")
    p.add_argument("--epsilon", type=float, default=0.0)

    p = sub.add_parser("fill", help="total fill of a permutation")
    _add_graph_arg(p)
    p.add_argument("--perm", required=True)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("family", choices=("grid", "erdos-renyi", "clique", "star", "path", "ov"))
    p.add_argument("params", nargs="*", help="grid K | erdos-renyi N P | clique N | star N | "
                                             "path N | ov N D DENSITY")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", "-o", default="-")
    p.add_argument("--emit", choices=("edges", "mm"), default="edges")
    p.add_argument("--vectors-out", help="sidecar file for ov vector bits")

    p = sub.add_parser("cover-check", help="verify a covering set system")
    p.add_argument("n", type=int)

    p = sub.add_parser("report", help="ordering plus degree log and figures")
    _add_graph_arg(p)
    _add_order_args(p)
    p.add_argument("--outdir", required=True)
    p.add_argument("--prefix", default="ordering")
    p.add_argument("--no-truth", action="store_true",
                   help="skip the exact per-step minimum (faster on large inputs)")
    return ap


def _run_order(g: Graph, args) -> OrderingResult:
    method = args.method
    if method == "brute":
        return mindeg_ordering_bruteforce(g)
    if method in ("sketch-exact", "capped"):
        if method == "capped" and args.delta is None:
            raise UsageError("--delta is required with --method capped")
        delta = args.delta if args.delta is not None else max(1, g.n - 1)
        return delta_capped_min_degree(g, delta, seed=args.seed, c_k=args.c_k)
    if method == "output-sensitive":
        return output_sensitive_min_degree(g, seed=args.seed, c_k=args.c_k)
    if method == "approx":
        if args.epsilon is None:
            raise UsageError("--epsilon is required with --method approx")
        cfg = ApproxOrderingConfig(
            c1=args.c1, c2=args.c2, c_scan=args.c_scan, c_q=args.c_q,
            c_sigma=args.c_sigma, c_lim=args.c_lim,
            degree_policy=args.degree_policy, threads=args.threads,
        )
        return approx_min_degree_sequence(g, args.epsilon, seed=args.seed, config=cfg)
    raise UsageError(f"unknown method {method}")


def _audit_line(result: OrderingResult) -> str:
    audit = {
        "informs": int(result.audit.get("informs", 0)),
        "oracle_calls": int(result.audit.get("oracle_calls", 0)),
        "copies": int(result.audit.get("copies", 0)),
    }
    return json.dumps(audit, sort_keys=True)


def _cmd_order(args) -> int:
    g = graph_io.load_graph(args.input, args.format)
    result = _run_order(g, args)
    stream, owns = graph_io._open_text(args.out, "w")
    try:
        for u, d in zip(result.order, result.degrees):
            if args.log_degrees:
                stream.write(f"{u}\t{report.format_degree(d)}\n")
            else:
                stream.write(f"{u}\n")
    finally:
        if owns:
            stream.close()
    if args.audit:
        print(_audit_line(result))
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = graph_io.load_graph(args.input, args.format)
    perm = graph_io.load_permutation(args.perm)
    if sorted(perm) != list(range(g.n)):
        print("error: input is not a permutation of the vertex set", file=sys.stderr)
        return EXIT_NOT_PERMUTATION
    rep = verify_ordering(g, perm, args.epsilon)
    print(f"steps={rep.n} violating_steps={rep.violating_steps} "
          f"max_ratio={rep.max_ratio:.6g} epsilon={args.epsilon}")
    return EXIT_OK if rep.ok else EXIT_VERIFY_FAIL


def _cmd_fill(args) -> int:
    g = graph_io.load_graph(args.input, args.format)
    perm = graph_io.load_permutation(args.perm)
    if sorted(perm) != list(range(g.n)):
        print("error: input is not a permutation of the vertex set", file=sys.stderr)
        return EXIT_NOT_PERMUTATION
    print(total_fill(g, perm))
    return EXIT_OK


def _cmd_gen(args) -> int:
    fam = args.family
    params = args.params
    try:
        if fam == "grid":
            g = instances.grid(int(params[0]))
        elif fam == "erdos-renyi":
            g = instances.erdos_renyi(int(params[0]), float(params[1]), seed=args.seed)
        elif fam == "clique":
            g = instances.clique(int(params[0]))
        elif fam == "star":
            g = instances.star(int(params[0]))
        elif fam == "path":
            g = instances.path(int(params[0]))
        elif fam == "ov":
            n, d, density = int(params[0]), int(params[1]), float(params[2])
            vectors = instances.random_ov_vectors(n, d, density, args.seed)
            inst = instances.ov_reduction_graph(vectors)
            g = inst.graph
            vec_path = args.vectors_out or (
                (args.out + ".vectors") if args.out != "-" else None)
            if vec_path:
                with open(vec_path, "w") as fh:
                    for v in vectors:
                        fh.write("".join(str(b) for b in v) + "\n")
        else:
            raise UsageError(f"unknown family {fam}")
    except (IndexError, ValueError) as exc:
        raise UsageError(f"bad parameters for family {fam}: {params}") from exc
    if args.emit == "mm":
        graph_io.dump_matrix_market(g, args.out)
    else:
        graph_io.dump_edge_list(g, args.out)
    return EXIT_OK


def _cmd_cover_check(args) -> int:
    if args.n < 1:
        raise UsageError("n must be >= 1")
    try:
        k, max_size = instances.verify_covering_system(args.n)
    except AssertionError as exc:
        print(f"FAIL: {exc}")
        return EXIT_VERIFY_FAIL
    print(f"n={args.n} p={instances.covering_set_system(args.n).p} k={k} "
          f"max_size={max_size} all pairs covered")
    return EXIT_OK


def _cmd_report(args) -> int:
    g = graph_io.load_graph(args.input, args.format)
    result = _run_order(g, args)
    paths = report.write_report(args.outdir, args.prefix, g, result,
                                with_truth=not args.no_truth)
    for name, pth in paths.items():
        print(f"{name}: {pth}")
    if args.audit:
        print(_audit_line(result))
    return EXIT_OK


_DISPATCH = {
    "order": _cmd_order,
    "verify": _cmd_verify,
    "fill": _cmd_fill,
    "gen": _cmd_gen,
    "cover-check": _cmd_cover_check,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _DISPATCH[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except graph_io.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
