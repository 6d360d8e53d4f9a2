"""JSON file formats: matrices, coefficient tables, measurement records, MUB directories.

Complex entries are ``{"re": float, "im": float}`` objects.  Floats are
written with ``repr``, the shortest string that parses back to the same
double, so every format round-trips exactly.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, MubError
from .expansion import CoefficientTable, GeneralCoefficientTable
from .field import parse_prime_power
from .mub import MubSet, _frozen, verify_complementarity
from .tomography import MeasurementRecord


class FormatError(MubError, ValueError):
    pass


def _finite(x):
    x = float(x)
    if not math.isfinite(x):
        raise FormatError(f"non-finite value {x}")
    return x


def _cplx(z) -> dict:
    z = complex(z)
    return {"re": _finite(z.real), "im": _finite(z.imag)}


def _uncplx(obj) -> complex:
    if isinstance(obj, dict):
        try:
            return complex(_finite(obj["re"]), _finite(obj.get("im", 0.0)))
        except KeyError as exc:
            raise FormatError(f"complex value missing {exc}") from None
    return complex(_finite(obj), 0.0)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def matrix_to_json(A, metadata: dict | None = None) -> dict:
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got {A.shape}")
    out = {"dim": A.shape[0], "entries": [[_cplx(z) for z in row] for row in A]}
    if metadata:
        out["metadata"] = dict(metadata)
    return out


def matrix_from_json(obj) -> tuple[np.ndarray, dict]:
    try:
        dim = int(obj["dim"])
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"matrix file needs 'dim' and 'entries': {exc}") from None
    if len(entries) != dim or any(len(row) != dim for row in entries):
        raise DimensionMismatch(f"entries are not {dim}x{dim}")
    A = np.array([[_uncplx(z) for z in row] for row in entries], dtype=np.complex128).reshape(dim, dim)
    return A, dict(obj.get("metadata", {}))


def coefficients_to_json(table) -> dict:
    if isinstance(table, GeneralCoefficientTable):
        return {
            "dim": table.N,
            "complex": True,
            "trace": _cplx(table.trace),
            "rows": [[_cplx(z) for z in row] for row in table.rows],
        }
    return {
        "dim": table.N,
        "trace": _finite(table.trace),
        "rows": [[_finite(c) for c in row] for row in table.rows],
    }


def coefficients_from_json(obj):
    try:
        dim = int(obj["dim"])
        rows = obj["rows"]
        trace = obj["trace"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"coefficient file needs 'dim', 'trace' and 'rows': {exc}") from None
    if len(rows) != dim + 1 or any(len(r) != dim for r in rows):
        raise DimensionMismatch(f"expected {dim + 1} rows of {dim} coefficients")
    if obj.get("complex"):
        arr = np.array([[_uncplx(z) for z in r] for r in rows], dtype=np.complex128)
        table = GeneralCoefficientTable(arr, _uncplx(trace))
    else:
        arr = np.array([[_finite(c) for c in r] for r in rows], dtype=float)
        table = CoefficientTable(arr, _finite(trace))
    table.check_consistent()
    return table


def records_to_json(records, metadata: dict | None = None) -> dict:
    out = {
        "records": [
            {"basis": r.basis, "shots": r.shots, "counts": list(r.counts), "seed": r.seed} for r in records
        ]
    }
    if metadata:
        out["metadata"] = dict(metadata)
    return out


def records_from_json(obj) -> list[MeasurementRecord]:
    try:
        return [
            MeasurementRecord(int(r["basis"]), int(r["shots"]), tuple(int(c) for c in r["counts"]), int(r["seed"]))
            for r in obj["records"]
        ]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed record file: {exc}") from None


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from None


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_matrix(path):
    return matrix_from_json(read_json(path))


def write_matrix(path, A, metadata=None) -> None:
    write_json(path, matrix_to_json(A, metadata))


def basis_filename(k: int) -> str:
    return f"basis_{k:02d}.json"


def write_mub_dir(out_dir, mubs: MubSet) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for k in range(mubs.N + 1):
        meta = {
            "convention": mubs.convention,
            "description": f"basis {k} of {mubs.N + 1}; column l is vector l",
        }
        path = out / basis_filename(k)
        write_matrix(path, mubs.bases[k], meta)
        paths.append(path)
    return paths


def read_mub_dir(path, tol: float = 1e-10) -> MubSet:
    path = Path(path)
    files = sorted(path.glob("basis_*.json"))
    if not files:
        raise FormatError(f"no basis_*.json files in {path}")
    mats, convention = [], None
    for f in files:
        A, meta = read_matrix(f)
        mats.append(A)
        convention = convention or meta.get("convention")
    N = mats[0].shape[0]
    if len(mats) != N + 1 or any(m.shape != (N, N) for m in mats):
        raise DimensionMismatch(f"{path} holds {len(mats)} bases; need {N + 1} of size {N}")
    mubs = _frozen(np.array(mats), parse_prime_power(N), convention or "file")
    report = verify_complementarity(mubs, tol)
    if not report.passed:
        raise FormatError(
            f"bases in {path} are not mutually unbiased "
            f"(deviations {report.max_same_basis_dev:.3g}, {report.max_cross_basis_dev:.3g})"
        )
    return mubs
