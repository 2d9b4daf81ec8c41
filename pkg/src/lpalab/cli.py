"""Batch front end: load graphs, classify, cross-verify, run the matrix-ring
cases, and evaluate ad-hoc expressions.  All reports are JSON unless --text;
output is byte-deterministic for fixed inputs (fixed seeds, ordered keys).

Exit codes: 0 pass, 1 semantic failure (FAIL status or witness failures),
2 usage/validation error, 3 requested mode unavailable (exact on a cyclic
graph).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import AlgebraError, LeavittAlgebra
from .classify import classify, cross_validate
from .exprs import ExprError, format_element, parse_element
from .graphs import GraphError, validate_graph
from .matrices import (
    MatrixLabError,
    MatrixRingCtx,
    char2_laurent_index3_check,
    corollary_field_check,
    corollary_laurent_check,
    witness_laurent_nonsolvable,
    witness_nge3,
    witness_nilpotent_char2,
)
from .scalars import LaurentRing, ScalarError, field_from_spec, field_of_characteristic
from .series import SeriesError

EXIT_OK = 0
EXIT_SEMANTIC = 1
EXIT_USAGE = 2
EXIT_UNAVAILABLE = 3

MATRIX_CASES = ("prop3a", "prop3b", "prop3c-upper", "prop3c-sharp", "prop3d",
                "cor-field", "cor-laurent")


def _load_graph(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    return validate_graph(raw)


def _emit(obj: dict, args, text_lines=None) -> None:
    if getattr(args, "text", False) and text_lines is not None:
        payload = "\n".join(text_lines) + "\n"
    else:
        payload = json.dumps(obj, indent=2) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)


def _cmd_classify(args) -> int:
    if args.char != 0 and args.char < 2:
        raise ScalarError(f"characteristic must be 0 or a prime, got {args.char}")
    field_of_characteristic(args.char)  # validates primality
    g = _load_graph(args.graph)
    v = classify(g, args.char)
    obj = v.to_json_obj()
    lines = [
        f"lie_solvable: {obj['lie_solvable']}",
        f"lie_index: {obj['lie_index']}",
        f"lie_nilpotent: {obj['lie_nilpotent']}",
        f"jordan_solvable: {obj['jordan_solvable']}",
        f"jordan_nilpotent: {obj['jordan_nilpotent']}",
        "components: " + ", ".join(
            f"{c['id']}={c['pattern']['kind']}" for c in obj["components"]
        ),
    ] + [f"caveat: {c}" for c in obj["caveats"]]
    _emit(obj, args, lines)
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    fld = field_from_spec(args.field)
    rep = cross_validate(g, fld, mode=args.mode, weight=args.weight,
                         depth=args.depth, structure=args.structure)
    obj = rep.to_json_obj()
    lines = [f"status: {rep.status}", f"dims: {rep.probe.dims}"] + [f"note: {n}" for n in rep.notes]
    _emit(obj, args, lines)
    return EXIT_OK if rep.status in ("AGREE", "CONSISTENT") else EXIT_SEMANTIC


def _cmd_matrix(args) -> int:
    fld = field_from_spec(args.field)
    case = args.case
    if case == "prop3a":
        ctx = MatrixRingCtx(args.n, fld)
        rep = witness_nge3(ctx, fld.parse(args.a), fld.parse(args.b), fld.parse(args.c),
                           args.steps if args.steps is not None else 20)
    elif case == "prop3b":
        rep = witness_nilpotent_char2(fld, args.steps if args.steps is not None else 10)
    elif case == "prop3c-upper":
        rep = char2_laurent_index3_check(args.samples, args.degree, args.seed, fld)
    elif case == "prop3c-sharp":
        rep = char2_laurent_index3_check(0, args.degree, args.seed, fld)
        rep.case = "prop3c-sharp"
    elif case == "prop3d":
        ring = LaurentRing(fld)
        u = ring.sub(ring.x(), ring.x_inv())
        rep = witness_laurent_nonsolvable(ring, u, args.steps if args.steps is not None else 6)
    elif case == "cor-field":
        rep = corollary_field_check(fld, args.depth or 10)
    elif case == "cor-laurent":
        rep = corollary_laurent_check(fld, args.degree, args.depth or 8)
    else:
        raise MatrixLabError(f"unknown case {case!r}")
    obj = rep.to_json_obj()
    lines = [f"case: {rep.case}", f"steps_checked: {rep.steps_checked}",
             f"failures: {len(rep.failures)}"] + [f"  {f}" for f in rep.failures]
    _emit(obj, args, lines)
    return EXIT_OK if rep.ok else EXIT_SEMANTIC


def _cmd_eval(args) -> int:
    g = _load_graph(args.graph)
    fld = field_from_spec(args.field)
    alg = LeavittAlgebra(g, fld)
    el = parse_element(alg, args.expr)
    sys.stdout.write(format_element(el) + "\n")
    return EXIT_OK


def _cmd_corpus(args) -> int:
    fields = [field_from_spec(s) for s in args.fields.split(",") if s]
    root = Path(args.dir)
    if not root.is_dir():
        raise GraphError(f"not a directory: {args.dir}")
    entries = []
    summary = {"AGREE": 0, "CONSISTENT": 0, "FAIL": 0, "ERROR": 0}
    for path in sorted(root.glob("*.json")):
        for fld in fields:
            try:
                g = _load_graph(str(path))
                rep = cross_validate(g, fld, mode="auto", weight=args.weight,
                                     depth=args.depth)
                status = rep.status
            except (GraphError, SeriesError, ScalarError) as exc:
                status = "ERROR"
                entries.append({"file": path.name, "field": repr(fld), "status": status,
                                "error": str(exc)})
                summary["ERROR"] += 1
                continue
            entries.append({"file": path.name, "field": repr(fld), "status": status})
            summary[status] += 1
    obj = {"entries": entries, "summary": summary}
    lines = [f"{e['file']} {e['field']}: {e['status']}" for e in entries] + [
        "summary: " + ", ".join(f"{k}={v}" for k, v in summary.items())
    ]
    _emit(obj, args, lines)
    return EXIT_OK if summary["FAIL"] == 0 and summary["ERROR"] == 0 else EXIT_SEMANTIC


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="lpalab", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="pattern-match a graph and emit the verdict")
    p.add_argument("--graph", required=True)
    p.add_argument("--char", type=int, required=True)
    p.add_argument("--text", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("verify", help="classifier verdict vs series computation")
    p.add_argument("--graph", required=True)
    p.add_argument("--field", required=True, help="F2, F3, F5, or Q")
    p.add_argument("--mode", choices=("auto", "exact", "truncated"), default="auto")
    p.add_argument("--weight", type=int, default=6)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--structure", choices=("lie", "jordan"), default="lie")
    p.add_argument("--text", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("matrix", help="run one matrix-ring witness or property case")
    p.add_argument("--case", required=True, choices=MATRIX_CASES)
    p.add_argument("--field", default="Q")
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="1")
    p.add_argument("--c", default="1")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--text", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_matrix)

    p = sub.add_parser("eval", help="evaluate an expression to normal form")
    p.add_argument("--graph", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--expr", required=True)
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("corpus", help="cross-validate every graph file in a directory")
    p.add_argument("--dir", required=True)
    p.add_argument("--fields", default="F2,F3,Q")
    p.add_argument("--weight", type=int, default=6)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--text", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_corpus)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except SeriesError as exc:
        if "exact mode" in str(exc):
            sys.stderr.write(f"error: {exc}\n")
            return EXIT_UNAVAILABLE
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (GraphError, ScalarError, AlgebraError, MatrixLabError, ExprError,
            OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
