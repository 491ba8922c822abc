"""Command line front end.

    ncdeform graphs N
    ncdeform splittings GRAPH.json
    ncdeform star --alpha A.json --beta B.json [--bracket BR.json] [--order K] [--weights W.json]
    ncdeform check SUITE [--seed S] [--d D] [--N N]

Output is JSON on stdout (or --out). Exit status: 0 success, 1 a property
failed, 2 bad usage or bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .checks import RNG_ALGORITHM, SUITES, run_suite
from .double_poisson import DoubleBracket, constant_bracket
from .freealg import as_fraction
from .graphs import DGraph, enum_admissible, splittings, vertex_label
from .oalgebra import OElem
from .quantize import MissingWeight, default_weights, star

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_json(path: str, what: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {what} file {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} file {path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc


def _parse(loader, data, what: str):
    try:
        return loader(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{what}: {exc}") from exc


def load_weights(path: str | None) -> dict[str, Fraction]:
    if path is None:
        return default_weights()
    data = _load_json(path, "weights")
    if not isinstance(data, dict):
        raise UsageError("weights: expected an object mapping graph keys to rationals")
    try:
        return {str(k): as_fraction(v) for k, v in data.items()}
    except (TypeError, ValueError) as exc:
        raise UsageError(f"weights: {exc}") from exc


def cmd_graphs(args) -> tuple[int, object]:
    if args.n < 0:
        raise UsageError("n must be nonnegative")
    return EXIT_OK, [g.to_json() for g in enum_admissible(args.n)]


def cmd_splittings(args) -> tuple[int, object]:
    g = _parse(DGraph.from_json, _load_json(args.graph, "graph"), "graph")
    out = []
    for perms, S in splittings(g):
        out.append(
            {
                "perms": {vertex_label(v): list(p) for v, p in sorted(perms.items(), key=lambda kv: vertex_label(kv[0]))},
                "splitting": S.to_json(g),
            }
        )
    return EXIT_OK, {"graph": g.to_json(), "count": len(out), "splittings": out}


def cmd_star(args) -> tuple[int, object]:
    alpha = _parse(OElem.from_json, _load_json(args.alpha, "alpha"), "alpha")
    beta = _parse(OElem.from_json, _load_json(args.beta, "beta"), "beta")
    if args.bracket:
        B = _parse(DoubleBracket.from_json, _load_json(args.bracket, "bracket"), "bracket")
    else:
        B = constant_bracket()
    weights = load_weights(args.weights)
    try:
        series = star(alpha, beta, args.order, weights, B)
    except MissingWeight as exc:
        raise UsageError(f"weights: missing entry for graph key {exc.key}") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK, series.to_json()


def cmd_check(args) -> tuple[int, object]:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(sorted(SUITES))}")
    kw = {}
    if args.d is not None:
        kw["d"] = args.d
    if args.N is not None:
        kw["N"] = args.N
    reports = [run_suite(name, seed=args.seed, **kw) for name in names]
    status = EXIT_OK if all(r["passed"] for r in reports) else EXIT_FAIL
    body = reports[0] if len(reports) == 1 else {"rng": RNG_ALGORITHM, "seed": args.seed, "suites": reports}
    return status, body


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncdeform", description="Graph operators and star products on O(A).")
    ap.add_argument("--out", help="write JSON here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graphs", help="list the admissible graphs with n numbered vertices")
    g.add_argument("n", type=int)
    g.set_defaults(func=cmd_graphs)

    s = sub.add_parser("splittings", help="principal splittings of a double graph")
    s.add_argument("graph", help="double graph JSON file")
    s.set_defaults(func=cmd_splittings)

    st = sub.add_parser("star", help="truncated star product of two elements")
    st.add_argument("--alpha", required=True)
    st.add_argument("--beta", required=True)
    st.add_argument("--bracket", help="bracket JSON (default: constant bracket, d = 2)")
    st.add_argument("--order", type=int, default=1)
    st.add_argument("--weights", help="weight table JSON keyed by graph key")
    st.set_defaults(func=cmd_star)

    c = sub.add_parser("check", help="run a property suite")
    c.add_argument("suite", help="suite name or 'all'")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--d", type=int)
    c.add_argument("--N", type=int)
    c.set_defaults(func=cmd_check)

    for p in (g, s, st, c):
        p.add_argument("--out", default=argparse.SUPPRESS, help="write JSON here instead of stdout")
    return ap


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        status, body = args.func(args)
    except UsageError as exc:
        print(f"ncdeform: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = dumps(body)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
