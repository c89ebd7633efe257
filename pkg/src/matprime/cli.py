"""Command-line front end.

Matrix files are JSON: {"n": 3, "entries": [[expr, ...], ...]} with entries
in the expression grammar (see the README).  Reports go to stdout; human
mode adds wall-clock time on stderr; --json output is deterministic byte
for byte for a fixed input and seed, and carries no timing.

Exit codes: 0 success (check-commute: commutes), 2 check-commute verdict
"does not commute", 3 domain errors (violated hypothesis, no witness), 64
usage errors, 1 anything else (IO, parse, shape).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from matprime import __version__
from matprime.classify import classify, make_type2
from matprime.decomp import block_decompose, k_diagonalize
from matprime.errors import (
    HypothesisViolated,
    MatPrimeError,
    NotCoprime,
    NotIdempotent,
    NotInSpan,
    NoWitness,
    ParseError,
    ShapeError,
)
from matprime.expr import parse_ratfunc
from matprime.linalg import Mat
from matprime.newton import NewtonConfig, run_experiment
from matprime.wronski import constant_rank

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_COMMUTING = 2
EXIT_DOMAIN = 3
EXIT_USAGE = 64

_DOMAIN_ERRORS = (HypothesisViolated, NoWitness, NotCoprime, NotIdempotent, NotInSpan)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def matrix_to_file_dict(m: Mat) -> dict:
    return {
        "n": m.n_rows,
        "entries": [[entry.to_expr() for entry in row] for row in m.rows],
    }


def parse_matrix_file(path: str) -> tuple[Mat, bytes]:
    """Load and parse a matrix file; returns the matrix and the raw bytes
    (digested into reports)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ShapeError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "entries" not in data:
        raise ShapeError(f"{path}: expected an object with an 'entries' grid")
    entries = data["entries"]
    n = data.get("n", len(entries))
    if (
        not isinstance(entries, list)
        or len(entries) != n
        or any(not isinstance(row, list) or len(row) != n for row in entries)
    ):
        raise ShapeError(f"{path}: entries must form a square {n}x{n} grid")
    rows = []
    for i, row in enumerate(entries):
        out_row = []
        for j, cell in enumerate(row):
            try:
                out_row.append(parse_ratfunc(cell))
            except ParseError as exc:
                raise ParseError(
                    f"{path}: entry ({i}, {j}): {exc.message}",
                    exc.line,
                    exc.column,
                    exc.token,
                ) from exc
        rows.append(out_row)
    return Mat(rows), raw


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _report(command: str, digest: str, result: dict) -> dict:
    return {
        "command": command,
        "version": __version__,
        "input_digest": digest,
        "result": result,
    }


def _emit(report: dict, as_json: bool, human_lines) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=2, separators=(",", ": ")))
    else:
        for line in human_lines:
            print(line)


def _vec(entries) -> list[str]:
    return [x.to_expr() for x in entries]


def _mat(m: Mat) -> list[list[str]]:
    return [[x.to_expr() for x in row] for row in m.rows]


# -- subcommands ----------------------------------------------------------------


def _cmd_check_commute(args) -> int:
    m, raw = parse_matrix_file(args.file)
    from matprime.classify import commutes_with_derivative

    commutes = commutes_with_derivative(m)
    report = _report("check-commute", _digest(raw), {"commutes": commutes})
    _emit(
        report,
        args.json,
        [f"MM' = M'M: {'yes' if commutes else 'no'}"],
    )
    return EXIT_OK if commutes else EXIT_NOT_COMMUTING


def _cmd_classify(args) -> int:
    m, raw = parse_matrix_file(args.file)
    rep = classify(m)
    result = {
        "commutes_c1": rep.commutes_c1,
        "rank_over_F": rep.rank_over_F,
        "nonderogatory": rep.nonderogatory,
        "nilpotent": rep.nilpotent,
        "type1": None
        if rep.type1 is None
        else {
            "basis": _vec(rep.type1.basis),
            "constants": [_mat(c) for c in rep.type1.constants],
        },
        "type2": None
        if rep.type2 is None
        else {"f": _vec(rep.type2.f), "g": _vec(rep.type2.g)},
        "type3": None
        if rep.type3 is None
        else {
            "h": rep.type3.h.to_expr(),
            "f": _vec(rep.type3.f),
            "g": _vec(rep.type3.g),
        },
    }
    lines = [
        f"MM' = M'M: {'yes' if rep.commutes_c1 else 'no'}",
        f"rank over Q(t): {rep.rank_over_F}",
        f"nonderogatory: {rep.nonderogatory}; nilpotent: {rep.nilpotent}",
        f"Type 1: {'yes' if rep.type1 else 'no'}",
        f"Type 2: {'yes' if rep.type2 else 'no'}",
        f"Type 3: {'yes' if rep.type3 else 'no'}",
    ]
    if rep.type1:
        lines.append(f"  Type 1 basis: {', '.join(_vec(rep.type1.basis))}")
    if rep.type2:
        lines.append(f"  Type 2 f: ({', '.join(_vec(rep.type2.f))})")
        lines.append(f"  Type 2 g: ({', '.join(_vec(rep.type2.g))})")
    if rep.type3:
        lines.append(f"  Type 3 h: {rep.type3.h.to_expr()}")
    if rep.commutes_c1 and not (rep.type1 or rep.type2 or rep.type3):
        lines.append("none of Types 1/2/3 (commutes with its derivative regardless)")
    _emit(_report("classify", _digest(raw), result), args.json, lines)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    m, raw = parse_matrix_file(args.file)
    projectors, blocks = block_decompose(m, args.root_bound)
    result = {
        "epsilons": [str(e) for e in projectors.epsilons],
        "projectors": [_mat(e) for e in projectors.projectors],
        "transform": _mat(blocks.transform),
        "blocks": [_mat(b) for b in blocks.blocks],
        "block_min_polys": [str(p) for p in blocks.block_min_polys],
    }
    lines = [f"blocks: {len(blocks.blocks)}"]
    for i, (b, p) in enumerate(zip(blocks.blocks, blocks.block_min_polys)):
        lines.append(f"  block {i}: size {b.n_rows}, minimal polynomial {p}")
    lines.append(f"transform T: {blocks.transform}")
    _emit(_report("decompose", _digest(raw), result), args.json, lines)
    return EXIT_OK


def _cmd_diagonalize(args) -> int:
    m, raw = parse_matrix_file(args.file)
    outcome = k_diagonalize(m, args.root_bound)
    if outcome is None:
        result = {"found": False, "reason": "not within bound"}
        lines = ["no constant diagonalization found within the root degree bound"]
    else:
        transform, diag = outcome
        result = {
            "found": True,
            "transform": _mat(transform),
            "diagonal": _vec(diag),
        }
        lines = [
            f"diagonal: ({', '.join(_vec(diag))})",
            f"transform T: {transform}",
        ]
    _emit(_report("diagonalize", _digest(raw), result), args.json, lines)
    return EXIT_OK


def _cmd_wronskian(args) -> int:
    funcs = [parse_ratfunc(s) for s in args.exprs]
    report = constant_rank(funcs)
    result = {
        "inputs": args.exprs,
        "rank": report.rank_over_K,
        "basis_indices": list(report.basis_indices),
        "certificate": _mat(report.certificate),
    }
    digest = _digest("\x00".join(args.exprs).encode())
    lines = [
        f"rank over Q: {report.rank_over_K}",
        f"basis indices: {list(report.basis_indices)}",
    ]
    _emit(_report("wronskian", digest, result), args.json, lines)
    return EXIT_OK


def _cmd_newton_experiment(args) -> int:
    config = NewtonConfig(
        max_iters=args.max_iters,
        residual_tol=args.residual_tol,
        step_damping=args.damping,
        commute_tol=args.commute_tol,
        seed=args.seed,
    )
    summary = run_experiment(
        args.n,
        args.r,
        args.trials,
        config,
        near_type2=args.near_type2,
        verbose_records=args.verbose,
    )
    params = json.dumps(
        {
            "n": args.n,
            "r": args.r,
            "trials": args.trials,
            "seed": args.seed,
            "near_type2": args.near_type2,
        },
        sort_keys=True,
    )
    d = summary.to_dict()
    lines = [
        f"trials: {d['trials']}, converged: {d['converged_count']}, "
        f"breakdowns: {d['breakdown_count']}",
        f"type 1 among converged: {d['type1_among_converged']}",
        f"mean iterations: {d['iterations_mean']}",
    ]
    _emit(_report("newton-experiment", _digest(params.encode()), d), args.json, lines)
    return EXIT_OK


def _cmd_make_type2(args) -> int:
    exprs = [s.strip() for s in args.f.split(",")]
    f = [parse_ratfunc(s) for s in exprs]
    m = make_type2(f, args.seed)
    print(json.dumps(matrix_to_file_dict(m), sort_keys=True, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="matprime", description=__doc__)
    parser.add_argument(
        "--version", action="version", version=f"matprime {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-commute", help="decide MM' = M'M")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check_commute)

    p = sub.add_parser("classify", help="full type report")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("decompose", help="constant-projector block decomposition")
    p.add_argument("file")
    p.add_argument("--root-bound", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("diagonalize", help="constant diagonalization")
    p.add_argument("file")
    p.add_argument("--root-bound", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_diagonalize)

    p = sub.add_parser("wronskian", help="constant-independence report")
    p.add_argument("exprs", nargs="+", metavar="expr")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_wronskian)

    p = sub.add_parser("newton-experiment", help="seeded Gauss-Newton batch")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--near-type2", action="store_true")
    p.add_argument("--max-iters", type=int, default=100)
    p.add_argument("--residual-tol", type=float, default=1e-10)
    p.add_argument("--damping", type=float, default=1.0)
    p.add_argument("--commute-tol", type=float, default=1e-6)
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_newton_experiment)

    p = sub.add_parser("make-type2", help="emit a Type 2 matrix file")
    p.add_argument("--f", required=True, help="comma-separated entries of f")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_make_type2)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    started = time.monotonic()
    try:
        code = args.func(args)
    except _DOMAIN_ERRORS as exc:
        print(f"matprime: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"matprime: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except MatPrimeError as exc:
        print(f"matprime: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"matprime: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if not getattr(args, "json", False):
        elapsed = time.monotonic() - started
        print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
