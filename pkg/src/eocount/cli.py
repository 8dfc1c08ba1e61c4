"""Command-line front end.

Every command prints one OutputEnvelope: command, echoed inputs, result
payload, timing and precision metadata.  Big integers are decimal strings,
rationals are "p/q", floats carry an explicit precision field.  Exit codes:
0 success, 2 domain error, 3 size cap, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

import mpmath

from . import exact, expansion
from .errors import DomainError, SizeLimitError
from .estimator import eo_estimate, schrijver_bounds
from .graphs import (Graph, all_degrees_even, cheeger_constant, load_graph,
                     spanning_tree_count)
from .taillab import check_tail_bound, instance_from_json

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_SIZE = 3
EXIT_IO = 4

DEFAULT_BITS = int(os.environ.get("EOCOUNT_BITS", "256"))


def _envelope(command: str, inputs: dict, result: dict, t0: float,
              bits: int | None = None) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "timing_ms": round(1000 * (time.time() - t0), 3),
        "precision": {"bits": bits},
    }


def _flatten(prefix: str, obj, rows: list):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else str(k), obj[k], rows)
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, obj))


def _emit(env: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(env, sort_keys=True))
        return
    rows: list = []
    _flatten("", env["result"], rows)
    if fmt == "csv":
        print("key,value")
        for k, v in rows:
            print(f"{k},{v}")
    else:  # plain
        for k, v in rows:
            print(f"{k}={v}")


def _load_graph_arg(path: str) -> Graph:
    try:
        return load_graph(path)
    except OSError as exc:
        raise IOError(str(exc)) from exc


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (inputs, result, bits-or-None)

def _cmd_exact(args):
    subject = args.subject
    if subject == "rt":
        if args.n is None:
            raise DomainError("rt needs --n")
        count = exact.OrientationCount(exact.rt_count(args.n), "dp")
        inputs = {"subject": subject, "n": args.n}
    elif subject in ("ed", "eog"):
        if args.n is None:
            raise DomainError(f"{subject} needs --n")
        fn = (exact.eulerian_digraph_count_bruteforce if subject == "ed"
              else exact.eulerian_oriented_count_bruteforce)
        count = exact.OrientationCount(fn(args.n), "bruteforce")
        inputs = {"subject": subject, "n": args.n}
    else:  # eo
        if not args.graph:
            raise DomainError("eo needs --graph")
        g = _load_graph_arg(args.graph)
        count = exact.OrientationCount(exact.eo_count_bruteforce(g), "bruteforce")
        inputs = {"subject": subject, "graph": args.graph}
    return inputs, {"value": str(count.value), "method": count.method}, None


def _cmd_expand(args):
    res = expansion.expansion_series(args.family, args.order)
    payload = res.to_json()
    bits = None
    if args.eval is not None:
        bits = args.bits
        value, logv = expansion.evaluate_expansion(res, args.eval, bits)
        payload["eval"] = {
            "n": args.eval,
            "value": mpmath.nstr(value, 40),
            "log_value": mpmath.nstr(logv, 40),
        }
        known = exact.RT_KNOWN_COUNTS.get(args.eval) if res.family == "RT" else None
        if known is not None:
            with mpmath.workprec(bits):
                payload["eval"]["log_ratio_to_exact"] = mpmath.nstr(
                    mpmath.log(mpmath.mpf(known)) - logv, 10)
    inputs = {"family": args.family, "order": args.order}
    if args.eval is not None:
        inputs.update({"eval": args.eval, "bits": args.bits})
    return inputs, payload, bits


def _cmd_estimate(args):
    g = _load_graph_arg(args.graph)
    w = Fraction(args.w) if args.w else None
    rep = eo_estimate(g, M=args.M, K=args.K, w=w, bits=args.bits,
                      graph_id=args.graph)
    inputs = {"graph": args.graph, "M": args.M, "K": args.K,
              "w": args.w, "bits": args.bits}
    return inputs, rep.to_json(), args.bits


def _cmd_bounds(args):
    g = _load_graph_arg(args.graph)
    lower, upper_sq = schrijver_bounds(g)
    with mpmath.workprec(args.bits):
        result = {
            "lower": str(lower),
            "lower_decimal": mpmath.nstr(mpmath.mpf(lower.numerator)
                                         / lower.denominator, 30),
            "upper_squared": str(upper_sq),
            "upper_decimal": mpmath.nstr(mpmath.sqrt(mpmath.mpf(upper_sq)), 30),
            "pauling": str(lower),
        }
    return {"graph": args.graph, "bits": args.bits}, result, args.bits


def _cmd_taillab(args):
    try:
        with open(args.instance) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise IOError(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"bad instance JSON: {exc}") from exc
    space, table = instance_from_json(obj)
    rep = check_tail_bound(space, table, args.m)
    return {"instance": args.instance, "m": args.m}, rep.to_json(), None


def _cmd_graphinfo(args):
    g = _load_graph_arg(args.graph)
    result = {
        "n": g.n,
        "edges": g.edge_count,
        "degrees": list(g.degrees),
        "all_degrees_even": all_degrees_even(g),
        "connected": g.is_connected(),
        "tau": str(spanning_tree_count(g)),
    }
    try:
        h = cheeger_constant(g)
        result["cheeger"] = str(h)
        d = g.max_degree()
        result["cheeger_over_max_degree"] = str(h / d) if d else None
    except SizeLimitError:
        result["cheeger"] = None
        result["cheeger_over_max_degree"] = None
    return {"graph": args.graph}, result, None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="eocount",
        description="Exact and asymptotic counting of Eulerian orientations.")
    p.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    p.add_argument("--threads", type=int, default=1,
                   help="accepted for interface stability; results are "
                        "identical for any value")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("exact", help="exact counters")
    pe.add_argument("subject", choices=("rt", "eo", "ed", "eog"))
    pe.add_argument("--n", type=int)
    pe.add_argument("--graph")
    pe.set_defaults(handler=_cmd_exact)

    px = sub.add_parser("expand", help="asymptotic exponent series")
    px.add_argument("family", choices=("rt", "ed", "eog"))
    px.add_argument("--order", type=int, default=12)
    px.add_argument("--eval", type=int, default=None)
    px.add_argument("--bits", type=int, default=DEFAULT_BITS)
    px.set_defaults(handler=_cmd_expand)

    ps = sub.add_parser("estimate", help="general-graph estimate")
    ps.add_argument("--graph", required=True)
    ps.add_argument("--M", type=int, default=2)
    ps.add_argument("--K", type=int, default=4)
    ps.add_argument("--w", default=None)
    ps.add_argument("--bits", type=int, default=DEFAULT_BITS)
    ps.set_defaults(handler=_cmd_estimate)

    pb = sub.add_parser("bounds", help="sandwich bounds")
    pb.add_argument("--graph", required=True)
    pb.add_argument("--bits", type=int, default=DEFAULT_BITS)
    pb.set_defaults(handler=_cmd_bounds)

    pt = sub.add_parser("taillab", help="cumulant tail-bound check")
    pt.add_argument("--instance", required=True)
    pt.add_argument("--m", type=int, required=True)
    pt.set_defaults(handler=_cmd_taillab)

    pg = sub.add_parser("graphinfo", help="tau, Cheeger constant, degrees")
    pg.add_argument("--graph", required=True)
    pg.set_defaults(handler=_cmd_graphinfo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        print(json.dumps({"error": "threads must be >= 1", "code": EXIT_DOMAIN}),
              file=sys.stderr)
        return EXIT_DOMAIN
    t0 = time.time()
    try:
        inputs, result, bits = args.handler(args)
    except DomainError as exc:
        print(json.dumps({"error": str(exc), "kind": "domain",
                          "code": EXIT_DOMAIN}), file=sys.stderr)
        return EXIT_DOMAIN
    except SizeLimitError as exc:
        print(json.dumps({"error": str(exc), "kind": "size-limit",
                          "code": EXIT_SIZE}), file=sys.stderr)
        return EXIT_SIZE
    except (IOError, OSError) as exc:
        print(json.dumps({"error": str(exc), "kind": "io",
                          "code": EXIT_IO}), file=sys.stderr)
        return EXIT_IO
    env = _envelope(args.command, inputs, result, t0, bits)
    _emit(env, args.format)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
