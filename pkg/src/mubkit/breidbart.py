"""Intermediate ("Breidbart") measurement operators over a complete MUB set.

For each letter n the operator

    R_n = sum_k ( x P_kn + y sum_{l != n} P_kl ) - 1

has overlap ``x`` with every state encoding letter n and ``y`` with every
other state.  Unit trace fixes ``y = (1 - x)/(N - 1)`` and mutual
orthonormality of the ``R_n`` fixes ``x``.  Nothing forces the ``R_n`` to be
positive, so each set is checked for negative eigenvalues.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CompositeDimension, IndexOutOfRange, UnsupportedDimension
from .field import parse_prime_power
from .linalg import Spectrum, hermitian_eigen
from .mub import MubSet, build_mub_set

PHYSICAL_TOL = 1e-10


def _supported(N):
    try:
        return parse_prime_power(N)
    except CompositeDimension as exc:
        raise UnsupportedDimension(str(exc)) from exc


def x_value(N: int) -> float:
    """Probability of inferring the sent letter correctly; the root with x > y."""
    _supported(N)
    return 1 / N + math.sqrt(1 / N**2 + (N - 3) / (N * (N + 1)))


def y_value(N: int, x: float) -> float:
    if N < 2:
        raise UnsupportedDimension(f"N={N} is below 2")
    if not 0 < x <= 1:
        raise ValueError(f"x={x} outside (0, 1]")
    return (1 - x) / (N - 1)


def build_intermediate(n: int, mubs: MubSet, x: float | None = None, y: float | None = None) -> np.ndarray:
    N = mubs.N
    if not 0 <= n < N:
        raise IndexOutOfRange(f"letter {n} outside [0, {N - 1}]")
    if x is None:
        x = x_value(N)
    if y is None:
        y = y_value(N, x)
    weights = np.full(N, y)
    weights[n] = x
    b = mubs.bases
    op = np.einsum("l,kul,kvl->uv", weights, b, b.conj()) - np.eye(N)
    return (op + op.conj().T) / 2


@dataclass(frozen=True)
class BreidbartSolution:
    N: int
    x: float
    y: float
    operators: np.ndarray
    spectra: tuple[Spectrum, ...]
    convention: str

    @property
    def physical(self) -> bool:
        return all(s.min >= -PHYSICAL_TOL for s in self.spectra)


def solve(mubs: MubSet) -> BreidbartSolution:
    N = mubs.N
    x = x_value(N)
    y = y_value(N, x)
    ops = np.array([build_intermediate(n, mubs, x, y) for n in range(N)])
    ops.setflags(write=False)
    spectra = tuple(hermitian_eigen(op) for op in ops)
    return BreidbartSolution(N, x, y, ops, spectra, mubs.convention)


@dataclass(frozen=True)
class PropertyReport:
    """Maximum deviation of each defining property of the operator set."""

    correct_overlap_dev: float
    wrong_overlap_dev: float
    trace_dev: float
    orthonormality_dev: float
    tol: float

    @property
    def checks(self) -> dict[str, float]:
        return {
            "correct_overlap": self.correct_overlap_dev,
            "wrong_overlap": self.wrong_overlap_dev,
            "unit_trace": self.trace_dev,
            "orthonormality": self.orthonormality_dev,
        }

    @property
    def passed(self) -> bool:
        return all(v < self.tol for v in self.checks.values())


def verify_properties(solution: BreidbartSolution, mubs: MubSet, tol: float = 1e-10) -> PropertyReport:
    N = mubs.N
    ops = np.asarray(solution.operators)
    b = mubs.bases
    # overlaps[n, k, l] = Tr{R_n P_kl}
    overlaps = np.einsum("kul,nuv,kvl->nkl", b.conj(), ops, b).real
    target = np.full((N, N + 1, N), solution.y)
    for n in range(N):
        target[n, :, n] = solution.x
    dev = np.abs(overlaps - target)
    own = np.zeros_like(dev, dtype=bool)
    for n in range(N):
        own[n, :, n] = True
    traces = np.einsum("nii->n", ops).real
    gram = np.einsum("aij,bji->ab", ops, ops).real
    return PropertyReport(
        correct_overlap_dev=float(dev[own].max()),
        wrong_overlap_dev=float(dev[~own].max()),
        trace_dev=float(np.abs(traces - 1).max()),
        orthonormality_dev=float(np.abs(gram - np.eye(N)).max()),
        tol=tol,
    )


@dataclass(frozen=True)
class Verdict:
    physical: bool
    spectra: tuple[np.ndarray, ...]
    negative_counts: tuple[int, ...]
    min_eigenvalue: float


def physicality_verdict(solution: BreidbartSolution, tol: float = PHYSICAL_TOL) -> Verdict:
    spectra = tuple(s.eigenvalues for s in solution.spectra)
    lowest = min(float(s[0]) for s in spectra)
    return Verdict(
        physical=lowest >= -tol,
        spectra=spectra,
        negative_counts=tuple(int(np.count_nonzero(s < -tol)) for s in spectra),
        min_eigenvalue=lowest,
    )


@dataclass(frozen=True)
class GuessProbabilities:
    breidbart: float
    intercept_resend: float


def guess_probabilities(N: int) -> GuessProbabilities:
    """Eavesdropper success rates: intermediate basis vs. intercept-resend.

    Intercept-resend picks one of the N+1 bases at random: certain when it
    matches the sender's, a uniform guess otherwise, ``2/(N+1)`` overall.
    """
    _supported(N)
    return GuessProbabilities(x_value(N), 2 / (N + 1))


@dataclass(frozen=True)
class ScanRow:
    N: int
    physical: bool
    min_eigenvalue: float
    negative_counts: tuple[int, ...]
    properties_ok: bool = field(default=True)


def conjecture_scan(N_list, convention: str = "field") -> list[ScanRow]:
    """Run the full pipeline per dimension and report the verdicts."""
    rows = []
    for N in N_list:
        mubs = build_mub_set(_supported(N), convention)
        sol = solve(mubs)
        verdict = physicality_verdict(sol)
        report = verify_properties(sol, mubs)
        rows.append(ScanRow(N, verdict.physical, verdict.min_eigenvalue, verdict.negative_counts, report.passed))
    return rows
