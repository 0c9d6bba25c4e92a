"""Command-line front end.

Subcommands map one-to-one onto the library surface: ``verify`` (equation
check), ``family`` (construct family members), ``classify`` (parameter
category of a block solution), ``equiv`` (gauge-equivalence witness
search), ``braid`` (braid-word evaluation), ``search`` (zero-pattern
solution search), and ``registry`` (named solutions).

Exit codes: 0 success or check passed, 1 check failed or no witness found,
2 usage or input error.  ``--json`` switches from the human-readable
default to machine-readable JSON on stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import linalg
from .core import CheckReport, GybeSignature, RMatrix, check_gybe
from .braiding import StateVector, apply_to_state, build_rep, evaluate_word, parse_braid_word
from .equivalence import search_equivalence
from .search import SearchConfig, load_pattern_text, solve_pattern
from .solutions import (
    SQRT2,
    classify_unitary_params,
    family_solution,
    general_solution,
    registry_ids,
    resolve_solution,
    split_blocks,
)

DEFAULT_VERIFY_TOL = 1e-12
DEFAULT_EQUIV_TOL = 1e-9
DEFAULT_SEARCH_TOL = 1e-11


def _parse_complex_pair(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 're,im', got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def _parse_signature(text: str) -> GybeSignature:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected 'd,m,l', got {text!r}")
    return GybeSignature(int(parts[0]), int(parts[1]), int(parts[2]))


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _infer_signature(size: int) -> GybeSignature:
    m = int(round(math.log2(size)))
    if 2**m != size:
        raise ValueError(
            f"cannot infer a signature for side {size}; pass --signature d,m,l"
        )
    return GybeSignature(2, m, 1)


def _load_rmatrix(args) -> RMatrix:
    if getattr(args, "solution", None):
        return resolve_solution(args.solution[0])
    if getattr(args, "matrix", None):
        mat = linalg.matrix_from_json(_read_text(args.matrix))
        sig = (
            _parse_signature(args.signature)
            if getattr(args, "signature", None)
            else _infer_signature(mat.shape[0])
        )
        return RMatrix(sig, mat, f"file:{args.matrix}")
    raise ValueError("pass --solution <id> or --matrix <path|->")


def _print_matrix(m: np.ndarray) -> None:
    for row in m:
        print("  ".join(f"{v.real:+.6f}{v.imag:+.6f}i" for v in row))


def _emit_report(report: CheckReport, as_json: bool) -> int:
    if as_json:
        print(json.dumps(report.to_json_dict()))
    else:
        verdict = "passed" if report.passed else "FAILED"
        extra = " (vacuous)" if report.vacuous else ""
        print(
            f"{verdict}{extra}: residual {report.residual:.3e} "
            f"at tolerance {report.tolerance:g}"
        )
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    r = _load_rmatrix(args)
    tol = args.tol if args.tol is not None else DEFAULT_VERIFY_TOL
    return _emit_report(check_gybe(r, tol), args.json)


def cmd_family(args) -> int:
    if args.theta is not None:
        r = family_solution(args.family, args.theta)
    elif args.alpha is not None and args.beta is not None:
        r = general_solution(
            args.family, _parse_complex_pair(args.alpha), _parse_complex_pair(args.beta)
        )
    else:
        raise ValueError("pass --theta <radians> or both --alpha and --beta")
    if args.json:
        print(json.dumps(linalg.matrix_to_json_dict(r.matrix)))
    else:
        print(r.label)
        _print_matrix(r.matrix)
    return 0


def cmd_classify(args) -> int:
    r = _load_rmatrix(args)
    if r.size != 8:
        raise ValueError("classification applies to 8x8 block solutions")
    x, _ = split_blocks(r.matrix)
    corner = SQRT2 * x[0, 0]
    if abs(corner) < 1e-9:
        raise ValueError("top-left entry is zero; not in block-solution form")
    scale = 1.0 / corner
    omega = SQRT2 * scale * x[1, 1]
    gamma = SQRT2 * scale * x[2, 2]
    delta = SQRT2 * scale * x[3, 3]
    category = classify_unitary_params(omega, gamma, delta)
    if args.json:
        print(
            json.dumps(
                {
                    "category": category,
                    "omega": [omega.real, omega.imag],
                    "gamma": [gamma.real, gamma.imag],
                    "delta": [delta.real, delta.imag],
                }
            )
        )
    else:
        print(category)
    return 0


def cmd_equiv(args) -> int:
    ids = args.solution or []
    if len(ids) >= 2:
        source, target = resolve_solution(ids[0]), resolve_solution(ids[1])
    elif len(ids) == 1 and args.matrix:
        source = resolve_solution(ids[0])
        mat = linalg.matrix_from_json(_read_text(args.matrix))
        sig = (
            _parse_signature(args.signature)
            if args.signature
            else _infer_signature(mat.shape[0])
        )
        target = RMatrix(sig, mat, f"file:{args.matrix}")
    else:
        raise ValueError(
            "pass two --solution ids, or one --solution and a --matrix target"
        )
    tol = args.tol if args.tol is not None else DEFAULT_EQUIV_TOL
    witness = search_equivalence(
        source, target, restarts=args.restarts or 8, seed=args.seed or 0, tol=tol
    )
    if witness is None:
        print("none" if not args.json else json.dumps(None))
        return 1
    if args.json:
        print(json.dumps(witness.to_json_dict()))
    else:
        steps = ", ".join(op.kind for op in witness.ops)
        print(f"witness [{steps}] residual {witness.residual:.3e}")
    return 0


def cmd_braid(args) -> int:
    if not args.word:
        raise ValueError("pass --word 'n=<strands>: i1,i2,...'")
    r = _load_rmatrix(args)
    word = parse_braid_word(args.word)
    rep = build_rep(r, word.n)
    if args.compare is not None:
        other = parse_braid_word(args.compare)
        diff = linalg.max_abs_diff(evaluate_word(rep, word), evaluate_word(rep, other))
        tol = args.tol if args.tol is not None else 1e-12
        if args.json:
            print(json.dumps({"max_difference": diff, "tolerance": tol, "equal": diff <= tol}))
        else:
            print(f"max entry difference {diff:.3e}")
        return 0 if diff <= tol else 1
    if args.state is not None:
        amps = linalg.matrix_from_json(_read_text(args.state)).reshape(-1)
        out = apply_to_state(rep, word, StateVector(amps))
        print(json.dumps(linalg.matrix_to_json_dict(out.amplitudes.reshape(-1, 1))))
        return 0
    matrix = evaluate_word(rep, word)
    if args.json:
        print(json.dumps(linalg.matrix_to_json_dict(matrix)))
    else:
        _print_matrix(matrix)
    return 0


def cmd_search(args) -> int:
    if not args.pattern:
        raise ValueError("pass --pattern <path|->")
    if not args.signature:
        raise ValueError("pass --signature d,m,l")
    pattern = load_pattern_text(_read_text(args.pattern))
    signature = _parse_signature(args.signature)
    config = SearchConfig(
        tolerance=args.tol if args.tol is not None else DEFAULT_SEARCH_TOL,
        restarts=args.restarts or 16,
        seed=args.seed or 0,
    )
    result = solve_pattern(pattern, signature, config)
    if args.json:
        print(json.dumps(result.to_json_list()))
    else:
        print(
            f"{len(result.solutions)} solution class(es); "
            f"best objective {result.best_objective:.3e}"
        )
        for found in result.solutions:
            print(f"  restart {found.restart_index}: residual {found.residual:.3e}")
    return 0


def cmd_registry(args) -> int:
    entries = []
    for name in registry_ids():
        r = resolve_solution(name)
        entries.append({"id": name, "signature": str(r.signature), "size": r.size})
    if args.json:
        print(json.dumps(entries))
    else:
        for e in entries:
            print(f"{e['id']:8s} {e['signature']} {e['size']}x{e['size']}")
        print("parametric: family<k>:theta=<rad>, family<k>:alpha=<re>,<im>:beta=<re>,<im>")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gybe",
        description="Construct, verify, classify, and search unitary solutions "
        "of generalized Yang-Baxter equations, and evaluate the braiding "
        "circuits they afford.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, solution=True, matrix=True):
        if solution:
            p.add_argument("--solution", action="append", help="registry solution id")
        if matrix:
            p.add_argument("--matrix", help="matrix JSON file, or - for stdin")
            p.add_argument("--signature", help="equation signature d,m,l")
        p.add_argument("--tol", type=float, default=None, help="tolerance")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("verify", help="check a solution against its equation")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("family", help="construct a family member")
    p.add_argument("--family", type=int, required=True, choices=(1, 2, 3))
    p.add_argument("--theta", type=float, default=None, help="angle in radians")
    p.add_argument("--alpha", default=None, help="re,im on the unit circle")
    p.add_argument("--beta", default=None, help="re,im on the unit circle")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("classify", help="parameter category of a block solution")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("equiv", help="search for a gauge-equivalence witness")
    add_common(p)
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("braid", help="evaluate braid words in a representation")
    add_common(p)
    p.add_argument("--word", help="braid word, e.g. 'n=4: 1,2,-1,3'")
    p.add_argument("--compare", help="second braid word to compare against")
    p.add_argument("--state", help="state vector JSON file, or - for stdin")
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("search", help="solve a zero pattern numerically")
    p.add_argument("--pattern", help="pattern file (0/1 grid or JSON), or -")
    p.add_argument("--signature", help="equation signature d,m,l")
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("registry", help="list named solutions")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_registry)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except Exception as exc:  # malformed input must not crash the process
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
