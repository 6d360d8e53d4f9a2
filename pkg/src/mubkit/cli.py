"""Command-line entry point: ``mubkit <command> ...``.

Exit codes: 0 success, 2 dimension is not a prime power, 3 shape mismatch,
4 non-Hermitian input, 5 invalid state, 1 anything else (usage included).
The default verification tolerance may be set with ``MUBKIT_TOL``.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import breidbart as bb
from . import formats
from .errors import (
    CompositeDimension,
    DimensionMismatch,
    MubError,
    NotAState,
    NotHermitian,
    UnsupportedDimension,
)
from .expansion import GeneralCoefficientTable, expand, expand_general, reconstruct, reconstruct_general
from .field import digit_sum_table, index_to_digits, parse_prime_power
from .linalg import is_hermitian
from .mub import CONVENTIONS, build_mub_set, verify_complementarity
from .tomography import RNG_ALGORITHM, check_state, estimate_state, frobenius_error, simulate_measurements

EXIT_CODES = [
    ((CompositeDimension, UnsupportedDimension), 2),
    (DimensionMismatch, 3),
    (NotHermitian, 4),
    (NotAState, 5),
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _default_tol() -> float:
    return float(os.environ.get("MUBKIT_TOL", "1e-10"))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _mubs_for(N: int, mub_dir, convention):
    if mub_dir:
        mubs = formats.read_mub_dir(mub_dir)
        if mubs.N != N:
            raise DimensionMismatch(f"operator is {N}-dimensional but {mub_dir} holds {mubs.N}-dimensional bases")
        return mubs
    return build_mub_set(N, convention)


def cmd_mub(args) -> int:
    mubs = build_mub_set(parse_prime_power(args.N), args.convention)
    if args.out:
        formats.write_mub_dir(args.out, mubs)
    status = 0
    if args.verify:
        report = verify_complementarity(mubs, args.tol)
        print(f"max_same_basis_dev  {report.max_same_basis_dev:.3e}")
        print(f"max_cross_basis_dev {report.max_cross_basis_dev:.3e}")
        print("PASS" if report.passed else "FAIL")
        status = 0 if report.passed else 1
    if not args.out and not args.verify:
        for k in range(mubs.N + 1):
            sys.stdout.write(formats.dumps(formats.matrix_to_json(mubs.bases[k], {"convention": mubs.convention})))
    return status


def cmd_expand(args) -> int:
    A, _ = formats.read_matrix(args.op_file)
    mubs = _mubs_for(A.shape[0], args.mub_dir, args.convention)
    if args.general:
        table = expand_general(A, mubs)
    else:
        if not is_hermitian(A):
            raise NotHermitian(f"{args.op_file} is not Hermitian; pass --general for complex coefficients")
        table = expand(A, mubs)
    _emit(formats.dumps(formats.coefficients_to_json(table)), args.output)
    return 0


def cmd_reconstruct(args) -> int:
    table = formats.coefficients_from_json(formats.read_json(args.coeff_file))
    mubs = _mubs_for(table.N, args.mub_dir, args.convention)
    if isinstance(table, GeneralCoefficientTable):
        A = reconstruct_general(table, mubs)
    else:
        A = reconstruct(table, mubs)
    meta = {"convention": mubs.convention, "description": f"reconstructed from {Path(args.coeff_file).name}"}
    _emit(formats.dumps(formats.matrix_to_json(A, meta)), args.output)
    return 0


def cmd_breidbart(args) -> int:
    mubs = build_mub_set(parse_prime_power(args.N), args.convention)
    sol = bb.solve(mubs)
    report = bb.verify_properties(sol, mubs)
    verdict = bb.physicality_verdict(sol)
    probs = bb.guess_probabilities(args.N)
    summary = {
        "N": sol.N,
        "convention": sol.convention,
        "x": sol.x,
        "y": sol.y,
        "properties": {**report.checks, "passed": report.passed, "tol": report.tol},
        "physical": verdict.physical,
        "min_eigenvalue": verdict.min_eigenvalue,
        "negative_counts": list(verdict.negative_counts),
        "spectra": [[float(v) for v in s] for s in verdict.spectra],
        "guess_probability": {"breidbart": probs.breidbart, "intercept_resend": probs.intercept_resend},
    }
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for n, op in enumerate(sol.operators):
            meta = {"convention": sol.convention, "description": f"intermediate operator for letter {n + 1}"}
            formats.write_matrix(out / f"operator_{n + 1:02d}.json", op, meta)
        formats.write_json(out / "breidbart.json", summary)
    sys.stdout.write(formats.dumps(summary))
    return 0


def render_digit_sum_table(N: int, r_indices) -> str:
    """Tab-separated table of ``k . r mod p`` for each ``r``; one row per k = 1..N."""
    pp = parse_prime_power(N)
    tables = [digit_sum_table(r, pp) for r in r_indices]

    def vec(d):
        return "(" + ",".join(str(x) for x in d) + ")"

    header = ["k", "k^T"]
    for r in r_indices:
        header += [f"r{r}^T", f"k^T r{r}", "Sum"]
    lines = ["\t".join(header)]
    for i in range(N):
        row = [str(tables[0][i].k), vec(tables[0][i].k_digits)]
        for r, t in zip(r_indices, tables):
            rd = t[i]
            row += [vec(index_to_digits(r, pp).digits), "+".join(str(x) for x in rd.terms), str(rd.total)]
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def cmd_table1(args) -> int:
    sys.stdout.write(render_digit_sum_table(args.N, args.r))
    return 0


def cmd_tomo(args) -> int:
    if args.shots <= 0:
        raise UsageError("tomo: --shots must be a positive integer")
    A, _ = formats.read_matrix(args.state_file)
    state = check_state(A)
    mubs = build_mub_set(parse_prime_power(state.shape[0]), args.convention)
    if args.shots < mubs.N + 1:
        raise UsageError(f"tomo: --shots must be at least N+1 = {mubs.N + 1}")
    records = simulate_measurements(state, mubs, args.shots, args.seed)
    estimate = estimate_state(records, mubs, project=args.project)
    err = frobenius_error(estimate, state)
    meta = {"rng": RNG_ALGORITHM, "shots": args.shots, "convention": mubs.convention}
    summary = {
        "N": mubs.N,
        "shots": args.shots,
        "seed": args.seed,
        "rng": RNG_ALGORITHM,
        "projected": bool(args.project),
        "frobenius_error": err,
        "trace": float(np.trace(estimate).real),
    }
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        formats.write_json(out / "records.json", formats.records_to_json(records, meta))
        desc = "estimate, clipped and renormalised" if args.project else "linear estimate"
        formats.write_matrix(out / "estimate.json", estimate, {"convention": mubs.convention, "description": desc})
    sys.stdout.write(formats.dumps(summary))
    return 0


def cmd_scan(args) -> int:
    rows = bb.conjecture_scan(args.N, args.convention)
    print("N\tphysical\tmin_eigenvalue\tnegative_counts")
    for r in rows:
        print(f"{r.N}\t{r.physical}\t{r.min_eigenvalue:.6f}\t{list(r.negative_counts)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mubkit", description="Mutually unbiased bases and the expectation-value expansion.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def conv(p):
        p.add_argument("--convention", choices=CONVENTIONS, default="field", help="basis/letter labeling")

    p = sub.add_parser("mub", help="construct the N+1 bases")
    p.add_argument("N", type=int)
    p.add_argument("--out", help="directory for basis_KK.json files")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--tol", type=float, default=_default_tol())
    conv(p)
    p.set_defaults(func=cmd_mub)

    p = sub.add_parser("expand", help="expansion coefficients of an operator file")
    p.add_argument("op_file")
    p.add_argument("--mub-dir")
    p.add_argument("--general", action="store_true", help="allow non-Hermitian input (complex coefficients)")
    p.add_argument("-o", "--output")
    conv(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("reconstruct", help="operator from a coefficient file")
    p.add_argument("coeff_file")
    p.add_argument("--mub-dir")
    p.add_argument("-o", "--output")
    conv(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("breidbart", help="intermediate operators, spectra and verdict")
    p.add_argument("N", type=int)
    p.add_argument("--out")
    conv(p)
    p.set_defaults(func=cmd_breidbart)

    p = sub.add_parser("table1", help="digit-sum table for products in GF(9)")
    p.add_argument("--N", type=int, default=9)
    p.add_argument("--r", type=int, nargs="+", default=[1, 4, 5])
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("tomo", help="simulate sub-ensemble tomography of a state file")
    p.add_argument("state_file")
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--project", action="store_true", help="clip negative eigenvalues (post-processing)")
    conv(p)
    p.set_defaults(func=cmd_tomo)

    p = sub.add_parser("scan", help="physicality verdicts over several dimensions")
    p.add_argument("N", type=int, nargs="+")
    conv(p)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except MubError as exc:
        for kinds, code in EXIT_CODES:
            if isinstance(exc, kinds):
                print(f"error: {exc}", file=sys.stderr)
                return code
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
