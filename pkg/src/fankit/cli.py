"""Command-line surface: one verb per module capability.

Subcommands: construct (fan | turan | extremal), pack, phi, decompose,
search (ex | phi | verify, with a top-level ``verify`` alias), and bounds
(g | hanson | constants).  Reports are JSON on stdout; identical invocations
produce byte-identical output.  Exit codes: 0 success, 2 usage or input
error, 3 infeasibility, 4 budget or cap exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .extremal import constants, ex_fan, extremal_fan_graph, g as surplus_g, hanson_bound, turan_graph
from .fans import FanSpec, build_fan
from .graphs import Graph, GraphFormatError, from_graph6, to_graph6
from .oracle import ResourceLimitError, ex_bruteforce, phi_bruteforce, verify_identity
from .packing import BudgetExceededError, DEFAULT_COPY_BUDGET, max_packing, phi as phi_of
from .pipeline import (
    DecompositionReport,
    GrowthInfeasibleError,
    PipelineConfig,
    PruningInfeasibleError,
    run_pipeline,
)
from .util import parse_fraction

__all__ = ["dispatch", "main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would sys.exit(2); route through UsageError so dispatch stays a
    # plain function and every error path emits a JSON object.
    def error(self, message: str):  # noqa: D401
        raise UsageError(message)


def _emit(payload: dict | list | str) -> None:
    if isinstance(payload, str):
        sys.stdout.write(payload + "\n")
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _spec_from(args: argparse.Namespace) -> FanSpec:
    return FanSpec(args.k, args.r)


def _read_graphs(args: argparse.Namespace) -> list[Graph]:
    if getattr(args, "graph6", None):
        return [from_graph6(args.graph6)]
    if getattr(args, "file", None):
        with open(args.file) as fh:
            lines = [line.strip() for line in fh if line.strip()]
    else:
        lines = [line.strip() for line in sys.stdin if line.strip()]
    if not lines:
        raise UsageError("no input graphs (use --graph6, --file, or stdin)")
    return [from_graph6(line) for line in lines]


def _graph_payload(g: Graph, fmt: str) -> dict | str:
    if fmt == "graph6":
        return to_graph6(g)
    if fmt == "dot":
        return _to_dot(g)
    if fmt == "text":
        return f"graph with {g.n} vertices, {g.edge_count} edges: {to_graph6(g)}"
    return {"n": g.n, "edges": g.edge_count, "graph6": to_graph6(g)}


_DOT_COLORS = (
    "lightblue", "lightsalmon", "palegreen", "plum", "khaki", "lightcyan", "mistyrose"
)


def _to_dot(g: Graph, report: Optional[DecompositionReport] = None) -> str:
    lines = ["graph fankit {", "  node [style=filled fillcolor=white];"]
    part_of = None
    if report is not None and report.partition is not None:
        part_of = report.partition.part_of
    for v in range(g.n):
        if part_of is not None:
            color = _DOT_COLORS[part_of[v] % len(_DOT_COLORS)]
            lines.append(f'  {v} [fillcolor="{color}"];')
        else:
            lines.append(f"  {v};")
    fan_edges: dict[tuple[int, int], int] = {}
    if report is not None:
        for idx, copy in enumerate(report.fans):
            for edge in sorted(copy.edge_pairs()):
                fan_edges[edge] = idx
    for u, v in g.edges():
        tag = fan_edges.get((u, v))
        if tag is not None:
            lines.append(f'  {u} -- {v} [penwidth=2 color="red" label="{tag}"];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines)


def _build_parser() -> _Parser:
    parser = _Parser(prog="fankit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    spec_args = _Parser(add_help=False)
    spec_args.add_argument("-k", type=int, required=True, help="blade count")
    spec_args.add_argument("-r", type=int, required=True, help="clique order")

    io_args = _Parser(add_help=False)
    io_args.add_argument("--graph6", help="inline graph6 code")
    io_args.add_argument("--file", help="file of graph6 lines")
    io_args.add_argument("--format", default="json", choices=["json", "text", "dot", "graph6"])
    io_args.add_argument("--seed", type=int, default=0)
    io_args.add_argument("--threads", type=int, default=1)
    io_args.add_argument("--budget", type=int, default=DEFAULT_COPY_BUDGET)

    p = sub.add_parser("construct", help="emit a named construction")
    csub = p.add_subparsers(dest="what", required=True)
    c_fan = csub.add_parser("fan", parents=[spec_args, io_args])
    c_turan = csub.add_parser("turan", parents=[io_args])
    c_turan.add_argument("-n", type=int, required=True)
    c_turan.add_argument("-p", type=int, required=True, help="part count")
    c_ext = csub.add_parser("extremal", parents=[spec_args, io_args])
    c_ext.add_argument("-n", type=int, required=True)

    for name in ("pack", "phi"):
        p = sub.add_parser(name, parents=[spec_args, io_args])

    p = sub.add_parser("decompose", parents=[spec_args, io_args])
    p.add_argument("--t1", help="bad-vertex threshold override (int or p/q)")
    p.add_argument("--t2", help="activity threshold override (int or p/q)")
    p.add_argument("--paper-thresholds", action="store_true",
                   help="use the closed-form thresholds instead of desk-scale surrogates")
    p.add_argument("--max-iterations", type=int)
    p.add_argument("--no-claims", action="store_true", help="skip runtime structural checks")

    p = sub.add_parser("search", help="exhaustive small-n sweeps")
    ssub = p.add_subparsers(dest="what", required=True)
    for name in ("ex", "phi", "verify"):
        q = ssub.add_parser(name, parents=[spec_args, io_args])
        q.add_argument("-n", type=int, required=True)
        q.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("verify", parents=[spec_args, io_args],
                       help="alias for: search verify")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("bounds", help="closed-form quantities")
    bsub = p.add_subparsers(dest="what", required=True)
    b_g = bsub.add_parser("g")
    b_g.add_argument("-k", type=int, required=True)
    b_h = bsub.add_parser("hanson")
    b_h.add_argument("--nu", type=int, required=True)
    b_h.add_argument("--delta", type=int, required=True)
    b_c = bsub.add_parser("constants", parents=[spec_args])
    b_c.add_argument("-n", type=int, required=True)
    return parser


def _cmd_construct(args: argparse.Namespace) -> int:
    if args.what == "fan":
        g = build_fan(_spec_from(args))
    elif args.what == "turan":
        g = turan_graph(args.n, args.p)
    else:
        spec = _spec_from(args)
        g = extremal_fan_graph(args.n, spec)
        if args.format == "json":
            value = ex_fan(args.n, spec)
            _emit({
                "n": g.n,
                "edges": g.edge_count,
                "graph6": to_graph6(g),
                "proven_extremal": value.valid,
            })
            return EXIT_OK
    _emit(_graph_payload(g, args.format))
    return EXIT_OK


def _cmd_pack(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    results = [max_packing(g, spec, budget=args.budget).to_json() for g in _read_graphs(args)]
    _emit(results[0] if len(results) == 1 else results)
    return EXIT_OK


def _cmd_phi(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    results = [phi_of(g, spec, budget=args.budget).to_json() for g in _read_graphs(args)]
    _emit(results[0] if len(results) == 1 else results)
    return EXIT_OK


def _cmd_decompose(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    config = PipelineConfig(
        t1_override=parse_fraction(args.t1) if args.t1 else None,
        t2_override=parse_fraction(args.t2) if args.t2 else None,
        max_iterations=args.max_iterations,
        assert_claims=not args.no_claims,
        seed=args.seed,
        paper_thresholds=args.paper_thresholds,
        packing_budget=args.budget,
    )
    graphs = _read_graphs(args)
    payloads = []
    for g in graphs:
        report = run_pipeline(g, spec, config)
        if args.format == "dot":
            payloads.append(_to_dot(g, report))
        else:
            payloads.append(report.to_json())
    if args.format == "dot":
        _emit("\n".join(payloads))
    else:
        _emit(payloads[0] if len(payloads) == 1 else payloads)
    return EXIT_OK


def _cmd_search(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    use_cache = not args.no_cache
    if args.what == "ex":
        value, attainers = ex_bruteforce(args.n, spec, threads=args.threads)
        _emit({"n": args.n, "k": spec.k, "r": spec.r, "ex": value,
               "extremal_graphs": attainers})
        return EXIT_OK
    fn = phi_bruteforce if args.what == "phi" else verify_identity
    report = fn(args.n, spec, budget=args.budget, threads=args.threads, use_cache=use_cache)
    _emit(report.to_json())
    return EXIT_OK


def _cmd_bounds(args: argparse.Namespace) -> int:
    if args.what == "g":
        _emit({"k": args.k, "g": surplus_g(args.k)})
    elif args.what == "hanson":
        _emit({"nu": args.nu, "delta": args.delta, "bound": hanson_bound(args.nu, args.delta)})
    else:
        spec = _spec_from(args)
        payload = constants(args.n, spec).to_json()
        payload.update({"n": args.n, "k": spec.k, "r": spec.r})
        _emit(payload)
    return EXIT_OK


def dispatch(argv: list[str]) -> int:
    """Run one CLI invocation; returns the exit status, report on stdout."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "construct":
            return _cmd_construct(args)
        if args.command == "pack":
            return _cmd_pack(args)
        if args.command == "phi":
            return _cmd_phi(args)
        if args.command == "decompose":
            return _cmd_decompose(args)
        if args.command == "search":
            return _cmd_search(args)
        if args.command == "verify":
            args.what = "verify"
            return _cmd_search(args)
        if args.command == "bounds":
            return _cmd_bounds(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        _emit({"error": str(exc), "kind": "usage"})
        sys.stderr.write(parser.format_usage())
        return EXIT_USAGE
    except (GraphFormatError, ValueError) as exc:
        _emit({"error": str(exc), "kind": "bad-input"})
        return EXIT_USAGE
    except (PruningInfeasibleError, GrowthInfeasibleError) as exc:
        _emit({"error": str(exc), "kind": "infeasible"})
        return EXIT_INFEASIBLE
    except (BudgetExceededError, ResourceLimitError) as exc:
        payload = {"error": str(exc), "kind": "budget"}
        partial = getattr(exc, "partial", None)
        if partial is not None:
            payload["partial_packing"] = partial.to_json()
        _emit(payload)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
