"""Non-adaptive state estimation from the N+1 complementary measurements.

An ensemble of M copies is split evenly across the N+1 bases.  The
per-basis outcome frequencies estimate the expansion coefficients, and the
expansion then gives the state estimate directly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, MissingBasis, NotAState
from .expansion import CoefficientTable, expand, reconstruct
from .linalg import as_square, hermitian_eigen, hermiticity_error
from .mub import MubSet

RNG_ALGORITHM = "numpy PCG64 seeded by SeedSequence([seed, basis])"
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-10


def check_state(rho) -> np.ndarray:
    """Return ``rho`` as an array if it is a density operator, else raise NotAState."""
    rho = as_square(rho)
    herm = hermiticity_error(rho)
    if herm >= 1e-12:
        raise NotAState(f"state is not Hermitian (max |A - A^H| = {herm:.3g})")
    tr = np.trace(rho).real
    if abs(tr - 1) > TRACE_TOL:
        raise NotAState(f"trace {tr!r} differs from 1")
    lowest = hermitian_eigen(rho).min
    if lowest < -POSITIVITY_TOL:
        raise NotAState(f"state has negative eigenvalue {lowest:.3g}")
    return (rho + rho.conj().T) / 2


@dataclass(frozen=True)
class MeasurementRecord:
    basis: int
    shots: int
    counts: tuple[int, ...]
    seed: int

    def __post_init__(self):
        if sum(self.counts) != self.shots:
            raise ValueError(f"counts sum to {sum(self.counts)}, expected {self.shots}")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")


def split_shots(M: int, n_bases: int) -> list[int]:
    """Equal split; the remainder goes one each to the lowest-numbered bases."""
    base, extra = divmod(M, n_bases)
    return [base + (1 if k < extra else 0) for k in range(n_bases)]


def outcome_probabilities(state, mubs: MubSet) -> np.ndarray:
    probs = np.clip(np.asarray(expand(state, mubs).rows), 0.0, None)
    return probs / probs.sum(axis=1, keepdims=True)


def simulate_measurements(state, mubs: MubSet, M: int, seed: int) -> list[MeasurementRecord]:
    state = check_state(state)
    N = mubs.N
    if state.shape[0] != N:
        raise DimensionMismatch(f"state is {state.shape[0]}-dimensional, bases are {N}-dimensional")
    if M < N + 1:
        raise ValueError(f"need at least {N + 1} shots, got {M}")
    probs = outcome_probabilities(state, mubs)
    records = []
    for k, shots in enumerate(split_shots(M, N + 1)):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, k])))
        counts = rng.multinomial(shots, probs[k])
        records.append(MeasurementRecord(k, shots, tuple(int(c) for c in counts), seed))
    return records


def frequencies(records, N: int) -> np.ndarray:
    by_basis = {}
    for r in records:
        if r.basis in by_basis:
            raise ValueError(f"basis {r.basis} recorded twice")
        if len(r.counts) != N:
            raise DimensionMismatch(f"record for basis {r.basis} has {len(r.counts)} outcomes, expected {N}")
        by_basis[r.basis] = r
    missing = [k for k in range(N + 1) if k not in by_basis]
    if missing:
        raise MissingBasis(f"no record for bases {missing}")
    return np.array([np.asarray(by_basis[k].counts, dtype=float) / by_basis[k].shots for k in range(N + 1)])


def estimate_state(records, mubs: MubSet, project: bool = False) -> np.ndarray:
    """Plug the outcome frequencies into the expansion.

    The result is Hermitian with unit trace but not necessarily positive.
    ``project=True`` clips negative eigenvalues and renormalises; that is
    post-processing, not part of the linear estimator.
    """
    freqs = frequencies(records, mubs.N)
    table = CoefficientTable(freqs, 1.0)
    est = reconstruct(table, mubs)
    if project:
        est = project_to_state(est)
    return est


def estimate_from_probabilities(probs, mubs: MubSet) -> np.ndarray:
    return reconstruct(CoefficientTable(np.asarray(probs, dtype=float), 1.0), mubs)


def project_to_state(op) -> np.ndarray:
    spec = hermitian_eigen(op, vectors=True)
    w = np.clip(spec.eigenvalues, 0.0, None)
    if w.sum() == 0:
        raise NotAState("no positive part to renormalise")
    w = w / w.sum()
    v = spec.eigenvectors
    return (v * w) @ v.conj().T


def frobenius_error(a, b) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def random_pure_state(N: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=N) + 1j * rng.normal(size=N)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_hermitian(N: int, rng) -> np.ndarray:
    a = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    return (a + a.conj().T) / 2
