import itertools

import numpy as np
import pytest

from mubkit.errors import CompositeDimension, IndexOutOfRange
from mubkit.mub import (
    MubSet,
    build_mub_set,
    build_qubit_mubs,
    overlap_sum,
    overlap_sum_tensor,
    verify_complementarity,
)

DIMS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]
R2 = 1 / np.sqrt(2)


def test_qubit_bases_entries():
    b = build_qubit_mubs().bases
    assert np.array_equal(b[0], np.eye(2))
    assert np.allclose(b[1][:, 0], [R2, R2], atol=0, rtol=0) or np.abs(b[1][:, 0] - [R2, R2]).max() < 1e-16
    assert np.abs(b[1][:, 1] - [R2, -R2]).max() < 1e-16
    assert np.abs(b[2][:, 0] - [R2, 1j * R2]).max() < 1e-16
    assert np.abs(b[2][:, 1] - [R2, -1j * R2]).max() < 1e-16


def test_qubit_cross_overlaps_half():
    b = build_qubit_mubs().bases
    for a, c in itertools.combinations(range(3), 2):
        assert np.abs(np.abs(b[a].conj().T @ b[c]) ** 2 - 0.5).max() < 1e-15


def _same_rays(a, b):
    # every vector of basis a equals some vector of basis b up to a global phase
    return all(max(abs(np.vdot(v, w)) for w in b.T) > 1 - 1e-12 for v in a.T)


@pytest.mark.parametrize("convention", ["field", "zero_first"])
def test_generated_qubit_set_matches_explicit_one(convention):
    ours = build_mub_set(2, convention).bases
    ref = build_qubit_mubs().bases
    for a in ours:
        assert sum(_same_rays(a, b) for b in ref) == 1


def test_zero_first_qubit_vectors():
    b = build_mub_set(2, "zero_first").bases
    assert np.abs(b[1] - build_qubit_mubs().bases[1]).max() < 1e-15
    # circular basis with the letters in the order that yields the textbook operator signs
    assert np.abs(b[2][:, 0] - [R2, -1j * R2]).max() < 1e-15
    assert np.abs(b[2][:, 1] - [R2, 1j * R2]).max() < 1e-15


def test_field_convention_golden_qutrit_vector():
    # basis 1, letter 1: components for field elements 1, 2, 0 carry w^(u^2 + u)
    w = np.exp(2j * np.pi / 3)
    v = build_mub_set(3).vector(1, 0)
    assert np.abs(v - np.array([w**2, 1, 1]) / np.sqrt(3)).max() < 1e-15


@pytest.mark.parametrize("N", DIMS)
@pytest.mark.parametrize("convention", ["field", "zero_first"])
def test_complementarity(N, convention):
    mubs = build_mub_set(N, convention)
    assert mubs.bases.shape == (N + 1, N, N)
    report = verify_complementarity(mubs, 1e-10)
    assert report.passed, report


def test_qutrit_all_cross_overlaps():
    b = build_mub_set(3).bases
    values = [abs(np.vdot(b[a][:, l], b[c][:, n])) ** 2 for a, c in itertools.combinations(range(4), 2) for l in range(3) for n in range(3)]
    assert len(values) == 54
    assert max(abs(v - 1 / 3) for v in values) < 1e-12


@pytest.mark.parametrize("N", DIMS)
def test_unitarity_and_standard_basis(N):
    mubs = build_mub_set(N)
    assert np.array_equal(mubs.bases[0], np.eye(N))
    for U in mubs.bases:
        assert np.abs(U.conj().T @ U - np.eye(N)).max() < 1e-12
        assert np.abs(U @ U.conj().T - np.eye(N)).max() < 1e-12  # completeness of each basis


def test_bases_are_read_only():
    mubs = build_mub_set(3)
    with pytest.raises(ValueError):
        mubs.bases[0, 0, 0] = 2


@pytest.mark.parametrize("N", [3, 4, 9])
def test_corrupted_set_fails(N):
    mubs = build_mub_set(N)
    bad = mubs.bases.copy()
    bad[1][:, 0] = np.eye(N)[:, 0]
    report = verify_complementarity(MubSet(mubs.pp, bad, "corrupt"), 1e-10)
    assert not report.passed
    assert report.max_cross_basis_dev >= (N - 1) / N**2


def test_composite_rejected():
    with pytest.raises(CompositeDimension):
        build_mub_set(6)
    with pytest.raises(ValueError):
        build_mub_set(3, "nonsense")


def _expected_overlap_sum(u, q, n, v):
    # for n != q: 1 iff u == q and v == n (the three cases of the proof);
    # for n == q the sum collapses by completeness to delta_uv
    if n == q:
        return 1.0 if u == v else 0.0
    return 1.0 if (u == q and v == n) else 0.0


def test_overlap_sum_three_cases_qutrit():
    mubs = build_mub_set(3)
    assert abs(overlap_sum(mubs, 0, 1, 1, 2, 2) - 1) < 1e-12  # u = q, v = n
    assert abs(overlap_sum(mubs, 0, 1, 1, 2, 0)) < 1e-12  # u = q, v != n
    assert abs(overlap_sum(mubs, 0, 0, 1, 2, 1)) < 1e-12  # u != q, v = n
    assert abs(overlap_sum(mubs, 0, 0, 1, 2, 0)) < 1e-12  # u != q, v != n
    assert abs(overlap_sum(mubs, 0, 0, 1, 1, 0) - 1) < 1e-12  # n == q, u == v


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_overlap_sum_exhaustive(N):
    mubs = build_mub_set(N)
    for m in range(N + 1):
        T = overlap_sum_tensor(mubs, m)
        for u, q, n, v in itertools.product(range(N), repeat=4):
            assert abs(T[u, q, n, v] - _expected_overlap_sum(u, q, n, v)) < 1e-10


@pytest.mark.parametrize("N", [7, 8, 9])
def test_overlap_sum_sampled(N):
    mubs = build_mub_set(N)
    rng = np.random.default_rng(N)
    for _ in range(500):
        m = int(rng.integers(0, N + 1))
        u, q, n, v = (int(i) for i in rng.integers(0, N, size=4))
        if rng.random() < 0.3:
            q, v = u, n
        assert abs(overlap_sum(mubs, m, u, q, n, v) - _expected_overlap_sum(u, q, n, v)) < 1e-9


def test_overlap_sum_matches_tensor():
    mubs = build_mub_set(4)
    T = overlap_sum_tensor(mubs, 2)
    for idx in [(0, 1, 2, 3), (1, 1, 2, 2), (3, 3, 0, 1), (2, 0, 2, 0)]:
        assert abs(overlap_sum(mubs, 2, *idx) - T[idx]) < 1e-14


def test_overlap_sum_index_errors():
    mubs = build_mub_set(3)
    with pytest.raises(IndexOutOfRange):
        overlap_sum(mubs, 4, 0, 0, 0, 0)
    with pytest.raises(IndexOutOfRange):
        overlap_sum(mubs, 0, 0, 3, 0, 0)
