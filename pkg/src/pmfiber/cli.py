"""Command line interface.

Matrices travel as JSON files {"n": 4, "field": "Q", "entries": [["2","-1",...],...]}
with entries written in the exact scalar grammar ("3", "-1/2", "2+3i").  Every
subcommand prints a single JSON document to stdout and exits 0 for a completed
analysis (negative verdicts included), 2 for malformed input or violated
preconditions, 3 for size-limit refusals, and 4 when an internal verification
check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from .equiv import (
    DiagonalCertificate,
    SymmetrizabilityResult,
    diagonal_equivalence,
    hermitian_equivalence,
    symmetrizability,
)
from .errors import ExactDivisionError, ParseError, PreconditionError, SizeLimitError, VerificationError
from .fiber import (
    classify_fiber,
    cut_swap_witness,
    find_cuts,
    reducible_witness,
    stable_certify,
    symmetric_fiber_describe,
)
from .mpoly import MPoly, poly_subset_map, poly_text
from .scalars import FIELDS, scalar_format, scalar_parse
from .selftest import SUITES, run_selftest
from .structure import is_irreducible, fiber_shape, structure_check
from .symdet import (
    IDENTITIES,
    SquareMatrix,
    adjugate_table,
    det_poly,
    matrix,
    principal_minors,
    verify_identities,
)


def _load_matrix(path: str) -> SquareMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ParseError("matrix file must be a JSON object")
    missing = [key for key in ("n", "field", "entries") if key not in doc]
    if missing:
        raise ParseError(f"matrix file missing keys: {', '.join(missing)}")
    n, field, entries = doc["n"], doc["field"], doc["entries"]
    if not isinstance(n, int) or n < 1:
        raise ParseError("n must be a positive integer")
    if field not in FIELDS:
        raise ParseError(f"field must be one of {list(FIELDS)}")
    if (
        not isinstance(entries, list)
        or len(entries) != n
        or any(not isinstance(row, list) or len(row) != n for row in entries)
    ):
        raise ParseError("entries must be an n x n array")
    rows = []
    for row in entries:
        parsed = []
        for cell in row:
            if not isinstance(cell, (str, int)):
                raise ParseError(f"entry {cell!r} must be a string scalar")
            parsed.append(scalar_parse(str(cell), field))
        rows.append(parsed)
    return matrix(rows, field)


def _matrix_doc(A: SquareMatrix) -> Dict:
    return {"n": A.n, "field": A.field, "entries": A.to_strings()}


def _subset_doc(indices) -> List[int]:
    return [i + 1 for i in sorted(indices)]


def _poly_doc(p: MPoly, args):
    return poly_subset_map(p) if getattr(args, "json_poly", False) else poly_text(p)


def _certificate_doc(cert: Optional[DiagonalCertificate]) -> Optional[Dict]:
    if cert is None:
        return None
    return {
        "d": [scalar_format(x) for x in cert.d],
        "transposed": cert.transposed,
    }


def _symmetrizability_doc(result: SymmetrizabilityResult) -> Dict:
    return {
        "verdict": result.verdict,
        "e": None if result.e is None else [scalar_format(x) for x in result.e],
        "witness_d": _certificate_doc(result.witness_d),
    }


def _parse_cut(text: str, n: int) -> Tuple[int, ...]:
    try:
        indices = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ParseError(f"--cut expects comma-separated integers, got {text!r}")
    if any(not 1 <= i <= n for i in indices):
        raise ParseError(f"--cut indices must lie in 1..{n}")
    if len(set(indices)) != len(indices):
        raise ParseError("--cut indices must be distinct")
    return tuple(sorted(i - 1 for i in indices))


# -- handlers (each returns (document, exit code)) ---------------------------------


def _cmd_minors(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    pm = principal_minors(A)
    table = {",".join(str(i + 1) for i in subset): scalar_format(value)
             for subset, value in pm.items_canonical()}
    return {
        "command": "minors",
        "result": {"n": A.n, "field": A.field, "minors": table},
    }, 0


def _cmd_detpoly(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    f = det_poly(A).fpoly
    return {
        "command": "detpoly",
        "result": {"n": A.n, "field": A.field},
        "polynomials": {"f": _poly_doc(f, args)},
    }, 0


def _cmd_adjugate(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    G = adjugate_table(A)
    grid = [[_poly_doc(G.entry(i, j), args) for j in range(A.n)] for i in range(A.n)]
    return {
        "command": "adjugate",
        "result": {"n": A.n, "field": A.field},
        "polynomials": {"adjugate": grid},
    }, 0


def _cmd_cuts(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    cuts = find_cuts(A)
    return {
        "command": "cuts",
        "result": {
            "n": A.n,
            "count": len(cuts),
            "cuts": [
                {
                    "X": _subset_doc(c.X),
                    "complement": _subset_doc(c.complement(A.n)),
                    "rank_xxc": c.rank_xxc,
                    "rank_xcx": c.rank_xcx,
                }
                for c in cuts
            ],
        },
    }, 0


def _cmd_classify(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    res = classify_fiber(A)
    doc = {
        "command": "classify",
        "result": {
            "verdict": res.verdict,
            "reason": res.reason,
            "cut": None if res.cut is None else _subset_doc(res.cut.X),
            "note": res.note,
        },
    }
    if res.symmetrizability is not None:
        doc["certificate"] = _symmetrizability_doc(res.symmetrizability)
    if res.witness is not None:
        doc["witness"] = _matrix_doc(res.witness)
    return doc, 0


def _cmd_witness(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    if args.cut is not None:
        X = _parse_cut(args.cut, A.n)
        W = cut_swap_witness(A, X)
        kind, cut = "CutSwap", _subset_doc(X)
    elif not is_irreducible(A):
        W = reducible_witness(A)
        kind, cut = "ReduciblePattern", None
    else:
        cuts = find_cuts(A)
        if not cuts:
            raise PreconditionError(
                "matrix has no cut; pass --cut or use classify for the verdict"
            )
        W = cut_swap_witness(A, cuts[0].X)
        kind, cut = "CutSwap", _subset_doc(cuts[0].X)
    return {
        "command": "witness",
        "result": {"kind": kind, "cut": cut},
        "witness": _matrix_doc(W),
    }, 0


def _cmd_equiv(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    B = _load_matrix(args.other)
    cert = diagonal_equivalence(A, B)
    return {
        "command": "equiv",
        "result": {"equivalent": cert is not None},
        "certificate": _certificate_doc(cert),
    }, 0


def _cmd_structure(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    report = structure_check(A)
    return {
        "command": "structure",
        "result": {
            "n": A.n,
            "irreducible": len(report.form.blocks) == 1,
            "blocks": [_subset_doc(b) for b in report.form.blocks],
            "order": [i + 1 for i in report.form.order],
            "product_matches": report.product_matches,
            "blocks_irreducible": list(report.blocks_irreducible),
        },
        "polynomials": {"factors": [_poly_doc(f, args) for f in report.factors]},
    }, 0 if report.all_ok else 4


def _cmd_fibershape(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    shape = fiber_shape(A)
    return {
        "command": "fibershape",
        "result": {
            "n": A.n,
            "blocks": [_subset_doc(b) for b in shape.blocks],
            "free_positions": [[p + 1, q + 1] for p, q in shape.free_positions],
        },
        "polynomials": {"factors": [_poly_doc(f, args) for f in shape.factors]},
    }, 0


def _cmd_symmetrize(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    result = symmetrizability(A)
    return {
        "command": "symmetrize",
        "result": {"verdict": result.verdict},
        "certificate": _symmetrizability_doc(result),
    }, 0


def _cmd_hermitize(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    result = hermitian_equivalence(A)
    return {
        "command": "hermitize",
        "result": {"verdict": result.verdict},
        "certificate": _symmetrizability_doc(result),
    }, 0


def _cmd_symfiber(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    desc = symmetric_fiber_describe(A)
    result = {"irreducible": desc.irreducible, "note": desc.note}
    doc = {"command": "symfiber", "result": result}
    if desc.shape is not None:
        result["blocks"] = [_subset_doc(b) for b in desc.shape.blocks]
        result["free_positions"] = [[p + 1, q + 1] for p, q in desc.shape.free_positions]
        doc["polynomials"] = {
            "factors": [_poly_doc(f, args) for f in desc.shape.factors]
        }
    return doc, 0


def _cmd_stablecert(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    cert = stable_certify(A)
    return {
        "command": "stablecert",
        "result": {
            "verdict": cert.verdict,
            "blocks": [_subset_doc(b) for b in cert.blocks],
            "block_verdicts": [r.verdict for r in cert.reports],
            "failing_block": None if cert.failing_block is None else _subset_doc(cert.failing_block),
        },
        "report": [_symmetrizability_doc(r) for r in cert.reports],
        "polynomials": {"factors": [_poly_doc(f, args) for f in cert.factors]},
    }, 0


def _cmd_verify(args) -> Tuple[Dict, int]:
    A = _load_matrix(args.matrix)
    identities = (args.identity,) if args.identity else IDENTITIES
    report = verify_identities(A, identities)
    by_name: Dict[str, Dict[str, int]] = {}
    for check in report.checks:
        slot = by_name.setdefault(check.identity, {"checks": 0, "passed": 0})
        slot["checks"] += 1
        slot["passed"] += 1 if check.ok else 0
    return {
        "command": "verify",
        "result": {"n": A.n, "all_ok": report.all_ok},
        "report": by_name,
    }, 0 if report.all_ok else 4


def _cmd_selftest(args) -> Tuple[Dict, int]:
    suites = args.suite if args.suite else None
    results = run_selftest(n=args.n, trials=args.trials, seed=args.seed, suites=suites)
    all_ok = all(r.ok for r in results)
    return {
        "command": "selftest",
        "result": {
            "n": args.n,
            "trials": args.trials,
            "seed": args.seed,
            "all_ok": all_ok,
        },
        "report": [
            {
                "name": r.name,
                "trials": r.trials,
                "failures": r.failures,
                "messages": r.messages,
            }
            for r in results
        ],
    }, 0 if all_ok else 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmfiber",
        description="Exact analysis of principal minors, determinantal pencils, "
        "and fibers of the principal minor map.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    poly_flag = argparse.ArgumentParser(add_help=False)
    poly_flag.add_argument(
        "--json-poly",
        action="store_true",
        help="emit polynomials as subset-coefficient maps instead of text",
    )

    def add(name: str, handler, help_text: str, polys: bool = False):
        cmd = sub.add_parser(name, help=help_text, parents=[poly_flag] if polys else [])
        cmd.add_argument("matrix", help="path to a matrix JSON file")
        cmd.set_defaults(handler=handler)
        return cmd

    add("minors", _cmd_minors, "all 2^n principal minors")
    add("detpoly", _cmd_detpoly, "determinant of diag(x) + A", polys=True)
    add("adjugate", _cmd_adjugate, "adjugate table of diag(x) + A", polys=True)
    add("cuts", _cmd_cuts, "all cuts (rank-one off-diagonal block pairs)")
    add("classify", _cmd_classify, "single-point or multi-point fiber verdict")
    witness = add("witness", _cmd_witness, "construct a second fiber point")
    witness.add_argument("--cut", help="comma-separated 1-based indices forcing the cut")
    equiv = sub.add_parser("equiv", help="diagonal equivalence certificate between two matrices")
    equiv.add_argument("matrix", help="path to the first matrix JSON file")
    equiv.add_argument("other", help="path to the second matrix JSON file")
    equiv.set_defaults(handler=_cmd_equiv)
    add("structure", _cmd_structure, "triangularized block structure and pencil factors", polys=True)
    add("fibershape", _cmd_fibershape, "block template shared by the whole fiber", polys=True)
    add("symmetrize", _cmd_symmetrize, "diagonal scaling to a symmetric matrix")
    add("hermitize", _cmd_hermitize, "diagonal scaling to a Hermitian matrix")
    add("symfiber", _cmd_symfiber, "fiber description for a symmetric matrix", polys=True)
    add("stablecert", _cmd_stablecert, "blockwise stability certificate", polys=True)
    verify = add("verify", _cmd_verify, "exact adjugate/pencil identity checks")
    verify.add_argument("--identity", choices=IDENTITIES, help="restrict to one identity")
    selftest = sub.add_parser("selftest", help="seeded randomized property suites")
    selftest.add_argument("--n", type=int, default=5, help="largest matrix size drawn")
    selftest.add_argument("--trials", type=int, default=25, help="trials per suite")
    selftest.add_argument("--seed", type=int, default=0, help="master seed")
    selftest.add_argument(
        "--suite",
        action="append",
        choices=sorted(SUITES),
        help="run only this suite (repeatable)",
    )
    selftest.set_defaults(handler=_cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = args.handler(args)
    except SizeLimitError as exc:
        doc, code = {"command": args.command, "error": str(exc)}, 3
    except (VerificationError, ExactDivisionError) as exc:
        doc, code = {"command": args.command, "error": str(exc)}, 4
    except (ParseError, PreconditionError, ValueError, OSError) as exc:
        doc, code = {"command": args.command, "error": str(exc)}, 2
    print(json.dumps(doc, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
