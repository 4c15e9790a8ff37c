import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zenoqaoa.errors import DimensionMismatch, NonHermitianInput, QubitOutOfRange
from zenoqaoa.numerics import (
    HADAMARD,
    PAULI_X,
    HermitianEig,
    apply_single_qubit_gate,
    expm_hermitian,
    is_unitary,
    kron_gate_matrix,
    matvec,
    random_hermitian,
    random_state,
)


def taylor_expm(A, terms=30):
    out = np.eye(A.shape[0], dtype=complex)
    term = np.eye(A.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ A / k
        out = out + term
    return out


def naive_matvec(M, v):
    out = [0j] * len(M)
    for i in range(len(M)):
        for j in range(len(v)):
            out[i] += M[i][j] * v[j]
    return np.array(out)


def test_expm_of_zero_is_identity():
    assert np.array_equal(expm_hermitian(np.zeros((2, 2)), 1.0), np.eye(2))


def test_expm_hadamard_hamiltonian_gives_hadamard():
    # exp(-i pi/2 (I - H)) = (-iI)(iH) = H; equivalently (I - H)/2 evolved for time pi
    assert np.allclose(expm_hermitian(np.eye(2) - HADAMARD, np.pi / 2), HADAMARD, atol=1e-12)
    assert np.allclose(expm_hermitian((np.eye(2) - HADAMARD) / 2, np.pi), HADAMARD, atol=1e-12)


def test_expm_matches_taylor_series():
    H = np.array([[0, 1, 1], [1, 0, 0], [1, 0, 0]], dtype=float)
    expected = taylor_expm(-1j * 0.1 * H)
    assert np.allclose(expm_hermitian(H, 0.1), expected, atol=1e-14, rtol=0)


def test_expm_random_matches_taylor(rng):
    H = random_hermitian(5, rng, scale=0.3)
    assert np.allclose(expm_hermitian(H, 0.7), taylor_expm(-0.7j * H, 40), atol=1e-12)


def test_expm_rejects_non_hermitian():
    with pytest.raises(NonHermitianInput):
        expm_hermitian(np.array([[0, 1], [0, 0]]), 1.0)


def test_expm_at_zero_time(rng):
    H = random_hermitian(6, rng)
    assert np.max(np.abs(expm_hermitian(H, 0.0) - np.eye(6))) <= 1e-14


def test_eig_reuse_matches_direct(rng):
    H = random_hermitian(4, rng)
    eig = HermitianEig(H)
    for t in (0.1, 1.3, -2.0):
        assert np.allclose(eig.unitary(t), expm_hermitian(H, t), atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(dim=st.integers(1, 8), t1=st.floats(-5, 5), t2=st.floats(-5, 5),
       seed=st.integers(0, 2**32 - 1))
def test_expm_unitary_and_semigroup(dim, t1, t2, seed):
    rng = np.random.default_rng(seed)
    H = random_hermitian(dim, rng)
    U1, U2 = expm_hermitian(H, t1), expm_hermitian(H, t2)
    assert is_unitary(U1)
    v = random_state(dim, rng)
    assert abs(np.linalg.norm(U1 @ v) - 1) <= 1e-10
    assert np.max(np.abs(expm_hermitian(H, t1 + t2) - U1 @ U2)) <= 1e-10


def test_matvec_identity_and_diagonal():
    v = np.array([1, 2j, 3, 4])
    assert np.array_equal(matvec(np.eye(4), v), v)
    out = matvec(np.diag([1, 2, 2, 1]), np.ones(4) / 2)
    assert np.allclose(out, np.array([1, 2, 2, 1]) / 2)


def test_matvec_against_loops(rng):
    M = random_hermitian(4, rng)
    v = random_state(4, rng)
    assert np.max(np.abs(matvec(M, v) - naive_matvec(M.tolist(), v.tolist()))) <= 1e-13


def test_matvec_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        matvec(np.eye(3), np.ones(2))


def basis_state(x, n):
    v = np.zeros(2**n, dtype=complex)
    v[x] = 1
    return v


def test_x_on_qubit0_flips_low_bit():
    out = apply_single_qubit_gate(basis_state(0b00, 2), PAULI_X, 0)
    assert np.array_equal(out, basis_state(0b01, 2))


def test_hadamard_layer_on_two_qubits():
    psi = basis_state(0, 2)
    for q in range(2):
        psi = apply_single_qubit_gate(psi, HADAMARD, q)
    assert np.allclose(psi, np.full(4, 0.5), atol=1e-15)


@pytest.mark.parametrize("x", range(4))
def test_x_on_qubit1_matches_kronecker(x):
    oracle = np.kron(PAULI_X, np.eye(2))  # acts on x1 in |x1 x0>
    expected = oracle @ basis_state(x, 2)
    assert np.array_equal(apply_single_qubit_gate(basis_state(x, 2), PAULI_X, 1), expected)
    assert np.array_equal(expected, basis_state(x ^ 0b10, 2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gate_application_matches_kron_all_positions(n, rng):
    for q in range(n):
        gate = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        psi = random_state(2**n, rng)
        expected = kron_gate_matrix(gate, q, n) @ psi
        assert np.max(np.abs(apply_single_qubit_gate(psi, gate, q) - expected)) <= 1e-12


def test_gate_errors():
    with pytest.raises(QubitOutOfRange):
        apply_single_qubit_gate(np.ones(4), PAULI_X, 2)
    with pytest.raises(DimensionMismatch):
        apply_single_qubit_gate(np.ones(3), PAULI_X, 0)


def test_random_state_normalized(rng):
    assert math.isclose(np.linalg.norm(random_state(16, rng)), 1.0, abs_tol=1e-12)
