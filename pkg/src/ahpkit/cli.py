"""Command-line front end.

Subcommands walk the full pipeline: validate matrices, derive one node's
weights, run the consistency check, evaluate and export reports (with
optional figure rendering), print the composite ranking, regenerate the
random-index table by simulation, and launch the HTTP service.

Exit codes: 0 success; 1 consistency failure (check/evaluate); 2 usage
error; 3 file or parse error; 4 validation error. Diagnostics go to
stderr, machine-readable with --json-errors. Stdout is the data channel
and is byte-deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .consistency import RiTable
from .errors import (
    AhpError,
    LeafNodeError,
    MissingMatrixError,
    OrderMismatchError,
    ProjectError,
)
from .evaluate import evaluate
from .matrix import validate_matrix
from .project import load_ri_table, parse_project
from .report import export_report
from .weights import geometric_mean_weights

EXIT_OK = 0
EXIT_CONSISTENCY = 1
EXIT_USAGE = 2
EXIT_FILE = 3
EXIT_VALIDATION = 4

RI_TABLE_ENV = "AHP_RI_TABLE"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2) and bypass --json-errors
        raise _UsageError(message)


def _diagnostic(args_or_argv, code: str, message: str, details: dict | None = None):
    json_errors = (
        getattr(args_or_argv, "json_errors", False)
        if isinstance(args_or_argv, argparse.Namespace)
        else "--json-errors" in args_or_argv
    )
    if json_errors:
        payload = {"code": code, "message": message, "details": details or {}}
        print(json.dumps(payload, sort_keys=True, default=str), file=sys.stderr)
    else:
        print(f"error: {message}", file=sys.stderr)


def _fixed(x: float, precision: int) -> str:
    """Fixed-decimals rendering that never prints negative zero."""
    v = round(float(x), precision)
    if v == 0:
        v = 0.0
    return f"{v:.{precision}f}"


def _load_document(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ProjectError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_project(data)


def _ri_table() -> RiTable:
    custom = os.environ.get(RI_TABLE_ENV)
    if custom:
        return load_ri_table(custom)
    return RiTable.default()


def _evaluate_document(doc):
    return evaluate(doc.build_hierarchy(), _ri_table())


# --- subcommands ------------------------------------------------------------

def _cmd_validate(args) -> int:
    doc = _load_document(args.project)
    failures = 0

    def check(owner: str, node_id: str, entries):
        nonlocal failures
        m = int(round(len(entries) ** 0.5))
        rows = [list(entries[r * m : (r + 1) * m]) for r in range(m)]
        label = f"{owner}{node_id}"
        node = doc.hierarchy.node(node_id)
        try:
            if len(node.children) != m:
                raise OrderMismatchError(
                    f"node has {len(node.children)} children but matrix order {m}",
                    node=node_id, expected=len(node.children), got=m,
                )
            validate_matrix(rows, reciprocity_tol=doc.reciprocity_tol)
        except AhpError as exc:
            failures += 1
            print(f"{label}: {exc.code}: {exc}")
        else:
            print(f"{label}: ok (order {m})")

    for node in doc.hierarchy.internal_nodes():
        if node.id in doc.matrices:
            check("", node.id, doc.matrices[node.id])
    for expert in sorted(doc.experts):
        for node in doc.hierarchy.internal_nodes():
            if node.id in doc.experts[expert]:
                check(f"{expert}:", node.id, doc.experts[expert][node.id])

    return EXIT_OK if failures == 0 else EXIT_VALIDATION


def _cmd_weights(args) -> int:
    doc = _load_document(args.project)
    h = doc.build_hierarchy()
    node = h.node(args.node)
    if node.is_leaf:
        raise LeafNodeError(
            f"node {args.node!r} is a leaf; weights exist only for internal nodes",
            node=args.node,
        )
    if node.matrix is None:
        if len(node.children) == 1:
            weights = [1.0]
        else:
            raise MissingMatrixError(
                f"node {args.node!r} has no judgment matrix", node=args.node
            )
    else:
        weights = geometric_mean_weights(node.matrix).weights
    for child, w in zip(node.children, weights):
        print(f"{child.id} {_fixed(w, args.precision)}")
    return EXIT_OK


def _cmd_check(args) -> int:
    doc = _load_document(args.project)
    result = _evaluate_document(doc)
    p = args.precision
    for node in result.hierarchy.internal_nodes():
        rep = result.node_reports[node.id]
        verdict = "PASS" if rep.passed else "FAIL"
        print(
            f"{node.id}: order={rep.order} mu_max={_fixed(rep.mu_max, p)} "
            f"CI={_fixed(rep.ci, p)} RI={_fixed(rep.ri, p)} "
            f"CR={_fixed(rep.cr, p)} {verdict}"
        )
    return EXIT_OK if result.all_passed else EXIT_CONSISTENCY


def _cmd_evaluate(args) -> int:
    doc = _load_document(args.project)
    result = _evaluate_document(doc)
    if args.out:
        Path(args.out).write_bytes(export_report(result, "csv", args.precision))
    if args.figures:
        from .figures import render_figures

        render_figures(result, args.figures)
    if args.json:
        print(json.dumps(result.to_dict(), sort_keys=True))
    else:
        sys.stdout.write(export_report(result, "text", args.precision).decode("utf-8"))
    return EXIT_OK if result.all_passed else EXIT_CONSISTENCY


def _cmd_rank(args) -> int:
    doc = _load_document(args.project)
    result = _evaluate_document(doc)
    for pos, row in enumerate(result.composite, start=1):
        print(
            f"{pos:>3}. {row.leaf_id:<8} {_fixed(row.global_weight, args.precision)}"
            f"  {row.label}"
        )
    return EXIT_OK


def _cmd_ri_simulate(args) -> int:
    from .random_index import simulate_ri

    value = simulate_ri(args.order, args.samples, args.seed)
    print(_fixed(value, args.precision))
    return EXIT_OK


def _cmd_report(args) -> int:
    doc = _load_document(args.project)
    result = _evaluate_document(doc)
    payload = export_report(result, args.format, args.precision)
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    if args.figures:
        from .figures import render_figures

        render_figures(result, args.figures)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import SessionStore, create_app

    store = SessionStore(args.store)
    app = create_app(store, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(
        prog="ahpkit",
        description="AHP decision engine: weights, consistency, ranking, elicitation",
    )
    parser.add_argument(
        "--json-errors", action="store_true",
        help="emit machine-readable diagnostics on stderr",
    )
    parser.add_argument(
        "--precision", type=int, default=4, metavar="K",
        help="decimals in numeric output (default 4)",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text, project=True):
        p = sub.add_parser(name, help=help_text)
        if project:
            p.add_argument("project", help="path to a *.ahp.json project file")
        p.set_defaults(func=func)
        return p

    add("validate", _cmd_validate, "validate every judgment matrix in a project")

    p = add("weights", _cmd_weights, "local weight vector of one node")
    p.add_argument("--node", required=True, help="internal node id")

    add("check", _cmd_check, "per-node consistency listing (exit 1 on CR >= 0.1)")

    p = add("evaluate", _cmd_evaluate, "full evaluation; optional CSV report")
    p.add_argument("--out", metavar="FILE", help="write CSV report to FILE")
    p.add_argument("--figures", metavar="DIR", help="render figures into DIR")
    p.add_argument("--json", action="store_true",
                   help="full-precision JSON on stdout instead of text report")

    add("rank", _cmd_rank, "composite ranking of all leaf indicators")

    p = add("ri-simulate", _cmd_ri_simulate,
            "Monte Carlo random-index estimate", project=False)
    p.add_argument("--order", type=int, required=True, help="matrix order (>= 3)")
    p.add_argument("--samples", type=int, default=100000, help="sample count")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")

    p = add("report", _cmd_report, "export evaluation report")
    p.add_argument("--format", choices=["csv", "text"], default="csv")
    p.add_argument("--out", metavar="FILE", help="write report to FILE")
    p.add_argument("--figures", metavar="DIR", help="render figures into DIR")

    p = add("serve", _cmd_serve, "start the elicitation HTTP service", project=False)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--store", default=":memory:",
                   help="session store path (sqlite file) or :memory:")
    p.add_argument("--ui-dir", default=None,
                   help="directory of built UI assets to serve at /")

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        _diagnostic(argv, "usage", str(exc))
        return EXIT_USAGE

    try:
        return args.func(args)
    except ProjectError as exc:
        _diagnostic(args, exc.code, str(exc), exc.details)
        return EXIT_FILE
    except AhpError as exc:
        _diagnostic(args, exc.code, str(exc), exc.details)
        return EXIT_VALIDATION
    except ValueError as exc:
        _diagnostic(args, "usage", str(exc))
        return EXIT_USAGE


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
