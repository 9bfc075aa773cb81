"""``flagvec`` command line interface.

Exit status: 0 on success, 1 when an asserted claim fails, 2 on usage or
input errors, 3 when a resource budget is exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import claims
from .enumeration import enumerate_graphs
from .flagvector import (component_targets, fit_components, flag_nullspace, flag_span_rank,
                         flag_vector, manifold_nullspace, quotient_basis)
from .hypergraph import FormalSum, Hypergraph
from .limits import BudgetExceeded
from .shelling import shelling_vector

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    arity: int = 2
    n: int | None = None
    claim: str | None = None
    max_n: int | None = None
    max_time: float | None = None
    mode: str = "auto"
    format: str = "json"

    def __post_init__(self):
        if self.arity < 0:
            raise UsageError("--arity must be non-negative")
        if self.n is not None and self.n < 0:
            raise UsageError("--n must be non-negative")
        if self.max_n is not None and self.max_n <= 0:
            raise UsageError("--max-n must be positive")
        if self.max_time is not None and self.max_time < 0:
            raise UsageError("--max-time must be non-negative")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flagvec", description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, help="vertex budget (overrides FLAGVEC_MAX_N)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="flag vector of a graph or formal sum (JSON)")
    p.add_argument("--input", required=True, help="hypergraph or formal-sum JSON file, '-' for stdin")
    p.add_argument("--mode", choices=["auto", "closed", "generic"], default="auto")
    p.add_argument("--output")

    p = sub.add_parser("shelling", help="shelling vector of a graph as bracket text")
    p.add_argument("--input", required=True)

    p = sub.add_parser("enumerate", help="isomorphism classes of i-graphs on n vertices")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--output", help="write the JSON family here and print only the count")

    for name, help_text in [("rank", "dimension of the flag-vector span"),
                            ("nullspace", "formal sums with zero flag vector"),
                            ("quotient", "link quotient by disjoint-pair relations")]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--arity", type=int, required=True)
        p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("manifold-nullspace", help="manifold nullspace of 2-graphs on n vertices")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("fit-components", help="component count as a linear function of f")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify", help="run claims from the catalog")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true")
    group.add_argument("--claim", choices=sorted(claims.CATALOG))
    group.add_argument("--list", action="store_true", help="list claim ids")
    p.add_argument("--n", type=int, help="vertex count for claims that take one")
    p.add_argument("--max-time", type=float, help="time budget in seconds for --all")
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.add_argument("--output", help="also write the JSON report here")
    return parser


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None


def _read_graph_or_sum(path: str) -> Hypergraph | FormalSum:
    data = _read_json(path)
    try:
        if isinstance(data, dict) and "terms" in data:
            return FormalSum.from_json(data)
        if isinstance(data, dict):
            return Hypergraph.from_json(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"{path}: invalid input: {exc}") from None
    raise UsageError(f"{path}: expected a hypergraph or formal-sum object")


def _emit(payload, output: str | None = None):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _verify(cfg: RunConfig, args) -> int:
    if args.list:
        for claim_id, claim in sorted(claims.CATALOG.items()):
            tag = " (report only)" if claim.report_only else ""
            print(f"{claim_id}: {claim.summary}{tag}")
        return EXIT_OK
    if cfg.claim:
        params = {}
        if cfg.n is not None:
            if "n" not in claims.CATALOG[cfg.claim].defaults:
                raise UsageError(f"claim {cfg.claim} does not take --n")
            params["n"] = cfg.n
        reports = [claims.run_claim(cfg.claim, **params)]
    else:
        reports = claims.run_all(budget=cfg.max_time)
    if cfg.format == "table":
        print(claims.format_table(reports))
    else:
        print(claims.reports_json(reports))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(claims.reports_json(reports) + "\n")
    if claims.failed(reports):
        return EXIT_FAIL
    if any(r.status == claims.SKIPPED for r in reports):
        return EXIT_BUDGET
    return EXIT_OK


def run(cfg: RunConfig, args) -> int:
    if cfg.command == "compute":
        g = _read_graph_or_sum(cfg.input)
        _emit(flag_vector(g, cfg.mode).to_json(), cfg.output)
    elif cfg.command == "shelling":
        g = _read_graph_or_sum(cfg.input)
        if not isinstance(g, Hypergraph):
            raise UsageError("shelling needs a single hypergraph")
        print(shelling_vector(g).text)
    elif cfg.command == "enumerate":
        family = enumerate_graphs(cfg.arity, cfg.n)
        if cfg.output:
            _emit(family.to_json(), cfg.output)
            print(len(family))
        else:
            _emit(family.to_json())
    elif cfg.command == "rank":
        print(flag_span_rank(cfg.arity, cfg.n))
    elif cfg.command == "nullspace":
        _emit([s.to_json() for s in flag_nullspace(cfg.arity, cfg.n)])
    elif cfg.command == "manifold-nullspace":
        _emit([s.to_json() for s in manifold_nullspace(cfg.n)])
    elif cfg.command == "quotient":
        _emit(quotient_basis(cfg.arity, cfg.n).to_json())
    elif cfg.command == "fit-components":
        graphs, fitted = fit_components(cfg.n)
        _emit({"n": cfg.n, "graphs": [g.to_json() for g in graphs],
               "targets": component_targets(graphs),
               "functional": fitted.to_json()})
    elif cfg.command == "verify":
        return _verify(cfg, args)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(
            command=args.command,
            input=getattr(args, "input", None),
            output=getattr(args, "output", None),
            arity=getattr(args, "arity", None) or 0,
            n=getattr(args, "n", None),
            claim=getattr(args, "claim", None),
            max_n=args.max_n,
            max_time=getattr(args, "max_time", None),
            mode=getattr(args, "mode", "auto"),
            format=getattr(args, "format", "json"),
        )
        saved = os.environ.get("FLAGVEC_MAX_N")
        if cfg.max_n is not None:
            os.environ["FLAGVEC_MAX_N"] = str(cfg.max_n)
        try:
            return run(cfg, args)
        finally:
            if saved is None:
                os.environ.pop("FLAGVEC_MAX_N", None)
            else:
                os.environ["FLAGVEC_MAX_N"] = saved
    except UsageError as exc:
        print(f"flagvec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"flagvec: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"flagvec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
