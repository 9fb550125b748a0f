"""Command-line front end: machine-readable JSON on stdout, diagnostics on
stderr, exit code 1 for validation problems and 2 for golden-table
mismatches.

Verbs:

    hs           homology group of one algebra in degree 0 or 1
    table        recompute the seven-row table and diff against the golden
    check-operad run the operad/module axiom sweep
    action       module-structure report for one algebra
    ops          one homology-operation descriptor
    w-complex    differentials and homology ranks of the periodic resolution
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .algebra import FinRankAlgebra, builtin_algebra, load_algebra_file
from .dyerlashoff import operation_descriptor, w_complex
from .homalg import IntMatrix, homology_mod_p
from .hs import hs0, hs1
from .operad import check_operad_axioms
from .report import hs_report, make_table

GOLDEN_VERSION = "v1"


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def _fail(message: str, code: int = 1) -> int:
    sys.stderr.write(message.rstrip() + "\n")
    return code


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract here reserves 2 for
    # golden mismatches, so route all validation failures to exit 1
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _algebra_from_args(args) -> FinRankAlgebra:
    if args.builtin and args.algebra:
        raise ValueError("pass either --builtin or --algebra, not both")
    if args.builtin:
        return builtin_algebra(args.builtin)
    if args.algebra:
        return load_algebra_file(args.algebra)
    raise ValueError("one of --builtin or --algebra is required")


def _add_algebra_flags(p) -> None:
    p.add_argument("--builtin", help="builtin name, e.g. trunc-poly-2, cyclic-5, matrix-2")
    p.add_argument("--algebra", help="path to an algebra JSON file")


def golden_table_text() -> str:
    path = resources.files("symhom").joinpath(f"data/goldens/{GOLDEN_VERSION}/table.json")
    return path.read_text(encoding="utf-8")


def cmd_hs(args) -> int:
    A = _algebra_from_args(args)
    group = hs0(A) if args.degree == 0 else hs1(A)
    _emit(group.to_json_dict())
    return 0


def cmd_table(args) -> int:
    table = make_table()
    _emit(table)
    if args.golden:
        with open(args.golden, "r", encoding="utf-8") as fh:
            golden = json.load(fh)
    else:
        golden = json.loads(golden_table_text())
    if table != golden:
        for got, want in zip(table, golden):
            if got != want:
                sys.stderr.write(
                    f"mismatch for {got.get('algebra')}: computed {json.dumps(got, sort_keys=True)}"
                    f" expected {json.dumps(want, sort_keys=True)}\n"
                )
        if len(table) != len(golden):
            sys.stderr.write(
                f"row count mismatch: computed {len(table)} vs golden {len(golden)}\n"
            )
        return 2
    sys.stderr.write(f"{len(table)}/{len(golden)} rows match the golden table\n")
    return 0


def cmd_check_operad(args) -> int:
    report = check_operad_axioms(args.max_arity)
    _emit(report.to_json_dict())
    return 0 if report.passed else 1


def cmd_action(args) -> int:
    A = _algebra_from_args(args)
    _emit(hs_report(A))
    return 0


def cmd_ops(args) -> int:
    desc = operation_descriptor(args.prime, args.kind, args.s, args.q)
    _emit(desc.to_json_dict())
    return 0


def cmd_w_complex(args) -> int:
    w = w_complex(args.prime, args.top)
    dims = []
    for degree in range(args.top):
        d_out = (
            w.differential(degree)
            if degree >= 1
            else IntMatrix.zero(0, args.prime)
        )
        h = homology_mod_p(w.differential(degree + 1), d_out, args.prime)
        dims.append(len(h.torsion))
    _emit(
        {
            "p": args.prime,
            "top_degree": args.top,
            "differentials": [
                [list(row) for row in w.differential(k).entries]
                for k in range(1, args.top + 1)
            ],
            "homology_dims": dims,
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symhom", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("hs", help="homology of an algebra in degree 0 or 1")
    _add_algebra_flags(p)
    p.add_argument("--degree", type=int, choices=(0, 1), required=True)
    p.set_defaults(fn=cmd_hs)

    p = sub.add_parser("table", help="recompute the 7-row table and diff goldens")
    p.add_argument("--golden", help="alternative golden file to diff against")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("check-operad", help="exhaustive operad/module axiom sweep")
    p.add_argument("--max-arity", type=int, default=3)
    p.set_defaults(fn=cmd_check_operad)

    p = sub.add_parser("action", help="module-structure report for an algebra")
    _add_algebra_flags(p)
    p.set_defaults(fn=cmd_action)

    p = sub.add_parser("ops", help="homology-operation descriptor")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--kind", choices=("P", "betaP", "D"), required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(fn=cmd_ops)

    p = sub.add_parser("w-complex", help="periodic resolution differentials")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--top", type=int, required=True)
    p.set_defaults(fn=cmd_w_complex)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as e:
        return _fail(f"symhom {args.verb}: {e}")


if __name__ == "__main__":
    sys.exit(main())
