import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mubkit.errors import DimensionMismatch, InconsistentRows, NotHermitian
from mubkit.expansion import (
    CoefficientTable,
    expand,
    expand_general,
    inflate,
    matrix_elements,
    minimal_parameters,
    reconstruct,
    reconstruct_general,
    standard_expansion,
)
from mubkit.linalg import hermitian_decompose
from mubkit.mub import build_mub_set

from conftest import random_hermitian

SUPPORTED = [2, 3, 4, 5, 7, 8, 9]
MUBS = {N: build_mub_set(N) for N in SUPPORTED}


def direct_coefficients(O, mubs):
    """Oracle: Tr{P_kl O} one projector at a time."""
    N = mubs.N
    return np.array([[np.trace(mubs.projector(k, l) @ O) for l in range(N)] for k in range(N + 1)])


@pytest.mark.parametrize("N", SUPPORTED)
def test_identity_gives_all_ones(N):
    table = expand(np.eye(N), MUBS[N])
    assert np.abs(np.asarray(table.rows) - 1).max() < 1e-14
    assert table.trace == N


@pytest.mark.parametrize("N", [3, 4, 5])
def test_standard_projector(N):
    mubs = MUBS[N]
    table = expand(mubs.projector(0, 0), mubs)
    rows = np.asarray(table.rows)
    expected0 = np.zeros(N)
    expected0[0] = 1
    assert np.abs(rows[0] - expected0).max() < 1e-14
    assert np.abs(rows[1:] - 1 / N).max() < 1e-14


def test_random_qutrit_row_sums_and_oracle(rng):
    O = random_hermitian(3, rng)
    table = expand(O, MUBS[3])
    assert np.abs(np.asarray(table.rows).sum(axis=1) - np.trace(O).real).max() < 1e-12
    assert np.abs(np.asarray(table.rows) - direct_coefficients(O, MUBS[3]).real).max() < 1e-12


def test_identity_table_reconstructs_identity():
    for N in (2, 3, 4):
        table = CoefficientTable(np.ones((N + 1, N)), float(N))
        assert np.abs(reconstruct(table, MUBS[N]) - np.eye(N)).max() < 1e-14


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_roundtrip_random(N):
    rng = np.random.default_rng(N)
    worst = 0.0
    for _ in range(100):
        O = random_hermitian(N, rng)
        worst = max(worst, np.abs(reconstruct(expand(O, MUBS[N]), MUBS[N]) - O).max())
    assert worst < 1e-10


@pytest.mark.parametrize("convention", ["field", "zero_first"])
def test_projector_roundtrip(convention):
    mubs = build_mub_set(4, convention)
    P = mubs.projector(2, 3)
    assert np.abs(reconstruct(expand(P, mubs), mubs) - P).max() < 1e-10


@settings(max_examples=40, deadline=None)
@given(
    N=st.sampled_from(SUPPORTED),
    seed=st.integers(0, 2**32 - 1),
    a=st.floats(-5, 5),
    b=st.floats(-5, 5),
)
def test_linearity(N, seed, a, b):
    rng = np.random.default_rng(seed)
    O1, O2 = random_hermitian(N, rng), random_hermitian(N, rng)
    mubs = MUBS[N]
    lhs = np.asarray(expand(a * O1 + b * O2, mubs).rows)
    rhs = a * np.asarray(expand(O1, mubs).rows) + b * np.asarray(expand(O2, mubs).rows)
    assert np.abs(lhs - rhs).max() < 1e-12 * max(1.0, abs(a) + abs(b)) * 10


@settings(max_examples=40, deadline=None)
@given(N=st.sampled_from(SUPPORTED), seed=st.integers(0, 2**32 - 1))
def test_roundtrip_and_row_sums_property(N, seed):
    rng = np.random.default_rng(seed)
    O = random_hermitian(N, rng)
    table = expand(O, MUBS[N])
    assert table.row_sum_deviation() < 1e-12 * max(1.0, np.linalg.norm(O))
    assert np.abs(reconstruct(table, MUBS[N]) - O).max() < 1e-10


@pytest.mark.parametrize("N", [3, 4, 8, 9])
def test_equivalence_with_single_basis_expansion(rng, N):
    mubs = MUBS[N]
    O = random_hermitian(N, rng)
    from_mubs = reconstruct(expand(O, mubs), mubs)
    for m in range(N + 1):
        assert np.abs(standard_expansion(matrix_elements(O, mubs, m), mubs, m) - from_mubs).max() < 1e-10


def test_density_operator_coefficients_are_probabilities(rng):
    psi = rng.normal(size=5) + 1j * rng.normal(size=5)
    psi /= np.linalg.norm(psi)
    table = expand(np.outer(psi, psi.conj()), MUBS[5])
    rows = np.asarray(table.rows)
    assert rows.min() >= -1e-10 and rows.max() <= 1 + 1e-10
    assert abs(table.trace - 1) < 1e-12


def test_expand_errors():
    with pytest.raises(DimensionMismatch):
        expand(np.eye(3), MUBS[4])
    with pytest.raises(NotHermitian):
        expand(np.array([[0, 1], [0, 0]]), MUBS[2])


def test_inconsistent_rows_rejected():
    rows = np.ones((4, 3))
    rows[2, 1] += 1e-6
    with pytest.raises(InconsistentRows):
        reconstruct(CoefficientTable(rows, 3.0), MUBS[3])
    with pytest.raises(DimensionMismatch):
        reconstruct(CoefficientTable(np.ones((4, 3)), 3.0), MUBS[4])


def test_rounded_table_still_loads():
    rows = np.ones((4, 3))
    rows[2, 1] += 1e-9
    reconstruct(CoefficientTable(rows, 3.0), MUBS[3])


def test_general_consistent_with_hermitian(rng):
    O = random_hermitian(4, rng)
    g = expand_general(O, MUBS[4])
    assert np.abs(np.asarray(g.rows).imag).max() < 1e-12
    assert np.abs(np.asarray(g.rows).real - np.asarray(expand(O, MUBS[4]).rows)).max() < 1e-12


def test_general_qubit_off_diagonal():
    mubs = MUBS[2]
    O = 1j * np.outer(mubs.vector(0, 0), mubs.vector(0, 1).conj())
    assert np.abs(reconstruct_general(expand_general(O, mubs), mubs) - O).max() < 1e-12


@pytest.mark.parametrize("N", [4, 8])
def test_general_roundtrip_random(rng, N):
    O = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    assert np.abs(reconstruct_general(expand_general(O, MUBS[N]), MUBS[N]) - O).max() < 1e-10


def test_general_equals_decomposition_combination(rng):
    O = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    plus, minus = hermitian_decompose(O)
    combined = (np.asarray(expand(plus, MUBS[3]).rows) - 1j * np.asarray(expand(minus, MUBS[3]).rows)) / 2
    assert np.abs(np.asarray(expand_general(O, MUBS[3]).rows) - combined).max() < 1e-12


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_minimal_parameters_count_and_roundtrip(rng, N):
    table = expand(random_hermitian(N, rng), MUBS[N])
    params = minimal_parameters(table)
    assert params.shape == (N * N,)
    back = inflate(params, N)
    assert np.abs(np.asarray(back.rows) - np.asarray(table.rows)).max() < 1e-12
    assert abs(back.trace - table.trace) < 1e-12
    assert np.array_equal(minimal_parameters(back), params)


def test_density_operator_has_one_fewer_free_parameter():
    psi = np.array([1, 1j, -1]) / np.sqrt(3)
    params = minimal_parameters(expand(np.outer(psi, psi.conj()), MUBS[3]))
    assert params.size == 9
    # the trace fixes the last entry of row 0 from the first N-1
    assert abs(params[:3].sum() - 1) < 1e-12


def test_inflate_wrong_length():
    with pytest.raises(DimensionMismatch):
        inflate(np.zeros(5), 2)
