"""Small dense complex linear algebra: traces, inner products, Hermitian checks
and a self-contained Jacobi eigensolver."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DimensionMismatch, NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-12


def as_square(A) -> np.ndarray:
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def hermiticity_error(A) -> float:
    A = as_square(A)
    return float(np.abs(A - A.conj().T).max()) if A.size else 0.0


def is_hermitian(A, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_error(A) < tol


def check_hermitian(A, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``A`` as a complex array, raising :class:`NotHermitian` if it is not."""
    A = as_square(A)
    err = hermiticity_error(A)
    if not err < tol:
        raise NotHermitian(f"max |A - A^H| = {err:.3g} exceeds {tol:g}")
    return A


def trace(A) -> complex:
    A = as_square(A)
    return complex(np.trace(A))


def frobenius_inner(A, B) -> complex:
    """``Tr{A^H B}``."""
    A, B = as_square(A), as_square(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes {A.shape} and {B.shape} differ")
    return complex(np.vdot(A, B))


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    residual: float
    sweeps: int

    @property
    def min(self) -> float:
        return float(self.eigenvalues[0])

    def count_below(self, threshold: float) -> int:
        return int(np.count_nonzero(self.eigenvalues < threshold))


def hermitian_eigen(H, tol: float = 1e-12, vectors: bool = False, max_sweeps: int = 100) -> Spectrum:
    """Eigen-decomposition by cyclic Jacobi rotations.

    Eigenvalues are returned ascending, with eigenvectors (columns) in the
    same order when ``vectors`` is true.  ``tol`` bounds the off-diagonal
    Frobenius norm relative to ``max(1, ||H||_F)``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    H = check_hermitian(H)
    diag, vecs, off, sweeps = kernels.jacobi_hermitian(H, vectors, tol, max_sweeps)
    scale = max(1.0, float(np.linalg.norm(H)))
    if off > tol * scale:
        raise NoConvergence(f"off-diagonal norm {off:.3g} after {sweeps} sweeps")
    order = np.argsort(diag, kind="stable")
    diag = diag[order]
    if vecs is not None:
        vecs = vecs[:, order]
    diag.setflags(write=False)
    return Spectrum(diag, vecs, float(off), sweeps)


def eigvalsh(H, tol: float = 1e-12) -> np.ndarray:
    return hermitian_eigen(H, tol).eigenvalues


def hermitian_decompose(O):
    """Split ``O`` into ``(O + O^H, i(O - O^H))``; ``O == (plus - 1j*minus) / 2``."""
    O = as_square(O)
    Oh = O.conj().T
    return O + Oh, 1j * (O - Oh)


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128)
    return np.outer(v, v.conj())
