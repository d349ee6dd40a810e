"""Command-line front end.

    critgroups compute <file>                   invariant factors, order, trees
    critgroups verify <file> [--trials N] [--seed S] [--oracle]
    critgroups family <name> [--n N] [--steps a,b] [--base edge|path|cycle4]

Global --format text|json.  Exit codes: 0 success (and, for verify, all
checks passed), 1 verification failure, 2 parse or parameter error,
3 disconnected graph, 4 orbit/labeling error, 5 non-harmonic action.
"""

from __future__ import annotations

import argparse
import json
import sys

from .actions import (
    LabelingImpossibleError,
    NonHarmonicError,
    OrbitSizeError,
)
from .decomposition import DecompositionContext, run_all_checks
from .divisors import critical_group
from .families import (
    chained_copies,
    circulant,
    concentric_polygon,
    intro_counterexample,
    klein_example,
)
from .jsonio import GraphFormatError, graph_to_json, load_graph
from .multigraph import DisconnectedGraphError, Multigraph, spanning_tree_count

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_DISCONNECTED = 3
EXIT_LABELING = 4
EXIT_NONHARMONIC = 5

_CHAIN_BASES = {
    "edge": (Multigraph.from_edges(2, [(0, 1)], labels=["a", "b"]), [1, 0], 0, 1),
    "path": (
        Multigraph.from_edges(3, [(0, 1), (1, 2)], labels=["a", "m", "b"]),
        [2, 1, 0],
        0,
        2,
    ),
    "cycle4": (
        Multigraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], labels=["a", "p", "b", "q"]),
        [2, 3, 0, 1],
        0,
        2,
    ),
}


def _emit(doc: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_compute(args) -> int:
    try:
        g, _action = load_graph(args.file)
    except (GraphFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        cg = critical_group(g)
        trees = spanning_tree_count(g)
    except DisconnectedGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    doc = {
        "invariant_factors": list(cg.group.factors),
        "order": cg.group.order,
        "spanning_trees": trees,
    }
    text = (
        f"critical group: {cg.group}\n"
        f"order: {cg.group.order}\n"
        f"spanning trees: {trees}"
    )
    _emit(doc, text, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        g, action = load_graph(args.file)
    except (GraphFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if action is None:
        print("error: graph file carries no 'actions' block", file=sys.stderr)
        return EXIT_PARSE
    if args.trials < 0:
        print("error: --trials must be nonnegative", file=sys.stderr)
        return EXIT_PARSE
    try:
        ctx = DecompositionContext(g, action)
    except DisconnectedGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except (OrbitSizeError, LabelingImpossibleError) as exc:
        _report_labeling_failure(g, action, exc, args.format)
        return EXIT_LABELING
    except NonHarmonicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONHARMONIC
    report = run_all_checks(
        ctx,
        trials=args.trials,
        seed=args.seed,
        oracle=args.oracle,
        graph_name=args.file,
    )
    if args.oracle:
        report.checks.append(_tree_oracle_check(g))
    _emit(report.to_json(), report.to_text(), args.format)
    return EXIT_OK if report.passed else EXIT_FAIL


def _tree_oracle_check(g):
    from .decomposition import CheckResult
    from .oracles import OracleRefused, brute_force_spanning_trees

    fast = spanning_tree_count(g)
    try:
        brute = brute_force_spanning_trees(g)
    except OracleRefused as exc:
        return CheckResult(
            name="tree_count_oracle",
            passed=True,
            computed={"matrix_tree": fast},
            notes=[str(exc)],
        )
    return CheckResult(
        name="tree_count_oracle",
        passed=fast == brute,
        computed={"matrix_tree": fast, "enumeration": brute},
    )


def _report_labeling_failure(g, action, exc, fmt) -> None:
    """Labeling rejections still carry a direct-computation certificate:
    the product of the quotient group orders against the group order."""
    from .quotients import quotient_graph

    cg = critical_group(g)
    orders = []
    for gens in ([action.sigma1], [action.sigma2], action.rotation_subgroup()):
        q = quotient_graph(g, gens)
        orders.append(critical_group(q.quotient).group.order)
    prod = orders[0] * orders[1] * orders[2]
    divides = cg.group.order % prod == 0
    doc = {
        "error": str(exc),
        "quotient_order_product": prod,
        "group_order": cg.group.order,
        "product_divides_group_order": divides,
    }
    text = (
        f"labeling error: {exc}\n"
        f"quotient group orders {orders} multiply to {prod}; "
        f"critical group has order {cg.group.order}; "
        + (
            "the product divides it"
            if divides
            else "the product does not divide it, so the direct sum cannot embed"
        )
    )
    _emit(doc, text, fmt)


def cmd_family(args) -> int:
    try:
        if args.name == "circulant":
            if args.n is None or not args.steps:
                raise ValueError("circulant needs --n and --steps")
            steps = [int(x) for x in args.steps.split(",")]
            g, action = circulant(args.n, steps)
        elif args.name == "concentric":
            if args.n is None:
                raise ValueError("concentric needs --n")
            g, action = concentric_polygon(args.n)
        elif args.name == "klein":
            g, action = klein_example()
        elif args.name == "intro":
            g, action = intro_counterexample()
        elif args.name == "chain":
            if args.n is None:
                raise ValueError("chain needs --n")
            base, phi, a, b = _CHAIN_BASES[args.base]
            g, action = chained_copies(base, phi, a, b, args.n)
        else:
            raise ValueError(f"unknown family {args.name!r}")
    except NonHarmonicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONHARMONIC
    except DisconnectedGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(json.dumps(graph_to_json(g, action), indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="critgroups",
        description="Exact critical groups of multigraphs and their "
        "dihedral-symmetry decompositions.",
    )
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="critical group of a graph file")
    p_compute.add_argument("file")
    p_compute.set_defaults(func=cmd_compute)

    p_verify = sub.add_parser(
        "verify", help="run all decomposition checks on a graph with actions"
    )
    p_verify.add_argument("file")
    p_verify.add_argument("--trials", type=int, default=25)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument(
        "--oracle",
        action="store_true",
        help="enable brute-force lattice cross-checks (small graphs only)",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_family = sub.add_parser("family", help="emit a named family as graph JSON")
    p_family.add_argument(
        "name", choices=("circulant", "concentric", "klein", "intro", "chain")
    )
    p_family.add_argument("--n", type=int)
    p_family.add_argument("--steps", help="comma-separated circulant steps")
    p_family.add_argument(
        "--base", choices=tuple(_CHAIN_BASES), default="edge", help="chain base graph"
    )
    p_family.set_defaults(func=cmd_family)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
