"""Expectation-value expansion of operators over a complete MUB set.

Any operator ``O`` on an N-dimensional space satisfies

    O = sum_{k=0..N} sum_l Tr{P_kl O} P_kl - Tr{O} 1

where ``P_kl`` projects on vector ``l`` of basis ``k``.  For Hermitian ``O``
the coefficients are real expectation values; each row ``k`` sums to the
trace, which leaves ``N**2`` independent numbers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InconsistentRows
from .linalg import as_square, check_hermitian
from .mub import MubSet

ROW_TOL = 1e-8
IMAG_TOL = 1e-12


@dataclass(frozen=True)
class CoefficientTable:
    """``rows[k, l] = Tr{P_kl O}`` (real) and ``trace = Tr{O}``."""

    rows: np.ndarray
    trace: float

    @property
    def N(self) -> int:
        return self.rows.shape[1]

    def row_sum_deviation(self) -> float:
        return float(np.abs(self.rows.sum(axis=1) - self.trace).max())

    def check_consistent(self, tol: float = ROW_TOL) -> None:
        N = self.N
        if self.rows.shape != (N + 1, N):
            raise DimensionMismatch(f"expected {(N + 1, N)} coefficient rows, got {self.rows.shape}")
        dev = self.row_sum_deviation()
        if dev > tol:
            raise InconsistentRows(f"row sums differ from the trace by up to {dev:.3g}")

    def __eq__(self, other):
        if not isinstance(other, CoefficientTable):
            return NotImplemented
        return self.trace == other.trace and np.array_equal(self.rows, other.rows)


@dataclass(frozen=True)
class GeneralCoefficientTable:
    """Complex coefficients of an arbitrary (possibly non-Hermitian) operator."""

    rows: np.ndarray
    trace: complex

    @property
    def N(self) -> int:
        return self.rows.shape[1]

    def check_consistent(self, tol: float = ROW_TOL) -> None:
        N = self.N
        if self.rows.shape != (N + 1, N):
            raise DimensionMismatch(f"expected {(N + 1, N)} coefficient rows, got {self.rows.shape}")
        dev = float(np.abs(self.rows.sum(axis=1) - self.trace).max())
        if dev > tol:
            raise InconsistentRows(f"row sums differ from the trace by up to {dev:.3g}")


def _match(O, mubs):
    if O.shape[0] != mubs.N:
        raise DimensionMismatch(f"operator is {O.shape[0]}-dimensional, bases are {mubs.N}-dimensional")


def _coefficients(O, mubs):
    b = mubs.bases
    # <k,l| O |k,l> for every k, l
    return np.einsum("kul,uv,kvl->kl", b.conj(), O, b)


def expand(O, mubs: MubSet) -> CoefficientTable:
    O = check_hermitian(O)
    _match(O, mubs)
    O = (O + O.conj().T) / 2
    c = _coefficients(O, mubs)
    residue = float(np.abs(c.imag).max())
    if residue > IMAG_TOL * max(1.0, float(np.linalg.norm(O))):
        raise ArithmeticError(f"imaginary residue {residue:.3g} on Hermitian coefficients")
    rows = np.ascontiguousarray(c.real)
    rows.setflags(write=False)
    return CoefficientTable(rows, float(np.trace(O).real))


def expand_general(O, mubs: MubSet) -> GeneralCoefficientTable:
    O = as_square(O)
    _match(O, mubs)
    rows = _coefficients(O, mubs)
    rows.setflags(write=False)
    return GeneralCoefficientTable(rows, complex(np.trace(O)))


def _assemble(rows, trace, mubs):
    b = mubs.bases
    weighted = np.einsum("kl,kul,kvl->uv", rows, b, b.conj())
    return weighted - trace * np.eye(mubs.N)


def reconstruct(table: CoefficientTable, mubs: MubSet) -> np.ndarray:
    """Rebuild the Hermitian operator from its coefficients."""
    if table.N != mubs.N:
        raise DimensionMismatch(f"table is for N={table.N}, bases for N={mubs.N}")
    table.check_consistent()
    out = _assemble(np.asarray(table.rows, dtype=float), table.trace, mubs)
    return (out + out.conj().T) / 2


def reconstruct_general(table: GeneralCoefficientTable, mubs: MubSet) -> np.ndarray:
    if table.N != mubs.N:
        raise DimensionMismatch(f"table is for N={table.N}, bases for N={mubs.N}")
    table.check_consistent()
    return _assemble(np.asarray(table.rows, dtype=complex), table.trace, mubs)


def minimal_parameters(table: CoefficientTable) -> np.ndarray:
    """The ``N**2`` numbers that fix the table: row 0 whole, then N-1 per row."""
    table.check_consistent()
    rows = np.asarray(table.rows)
    return np.concatenate([rows[0], rows[1:, :-1].ravel()])


def inflate(params, N: int) -> CoefficientTable:
    """Inverse of :func:`minimal_parameters`; the dropped entries come from row sums."""
    params = np.asarray(params, dtype=float)
    if params.shape != (N * N,):
        raise DimensionMismatch(f"expected {N * N} parameters, got {params.shape}")
    trace = float(params[:N].sum())
    rows = np.empty((N + 1, N))
    rows[0] = params[:N]
    partial = params[N:].reshape(N, N - 1)
    rows[1:, :-1] = partial
    rows[1:, -1] = trace - partial.sum(axis=1)
    rows.setflags(write=False)
    return CoefficientTable(rows, trace)


def matrix_elements(O, mubs: MubSet, m: int) -> np.ndarray:
    """``O_qn = <m,q| O |m,n>`` in basis ``m``."""
    O = as_square(O)
    _match(O, mubs)
    b = mubs.bases[m]
    return b.conj().T @ O @ b


def standard_expansion(elements, mubs: MubSet, m: int) -> np.ndarray:
    """``sum_{q,n} O_qn |m,q><m,n|``."""
    b = mubs.bases[m]
    return b @ np.asarray(elements) @ b.conj().T
