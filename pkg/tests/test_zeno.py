import numpy as np
import pytest

from zenoqaoa.cnf import prefix, random_3sat
from zenoqaoa.errors import DimensionMismatch, TooLarge
from zenoqaoa.hamiltonians import SelectionBasis, build_reduced, hb_matrix, hp_matrix
from zenoqaoa.modelcount import enumerate_models_dpll
from zenoqaoa.numerics import expm_hermitian, random_hermitian, random_state
from zenoqaoa.zeno import (
    ReducedState,
    ZenoSplit,
    compress,
    evolve_reduced,
    lift,
    projected_hamiltonian,
    projector,
    verify_reduction,
    zeno_full_reference,
)

S3 = 1 / np.sqrt(3)


@pytest.fixture
def example_basis():
    return SelectionBasis(2, [0, 1, 2])


def test_compress_example(example_basis):
    psi = np.array([S3, S3, 0, S3])
    split = compress(psi, example_basis)
    assert np.allclose(split.reduced.amplitudes, [S3, S3, 0])
    assert np.allclose(split.residual, [0, 0, 0, S3])


def test_compress_full_and_empty(rng):
    psi = random_state(8, rng)
    full = compress(psi, SelectionBasis.full(3))
    assert np.array_equal(full.reduced.amplitudes, psi) and not full.residual.any()
    empty = compress(psi, SelectionBasis(3, []))
    assert empty.reduced.d == 0 and np.array_equal(empty.residual, psi)


def test_compress_dimension_mismatch(example_basis):
    with pytest.raises(DimensionMismatch):
        compress(np.ones(8), example_basis)


def test_lift_round_trip_exact(rng):
    for _ in range(100):
        n = int(rng.integers(1, 7))
        basis = SelectionBasis(n, np.flatnonzero(rng.random(2**n) < 0.5))
        psi = random_state(2**n, rng)
        split = compress(psi, basis)
        assert np.array_equal(lift(split), psi)
        assert not split.residual[basis.indices].any()
        assert abs(split.reduced.norm_sq() + split.residual_norm_sq - 1) <= 1e-10


def test_lift_example_final_state(example_basis):
    t = 0.6
    reduced = ReducedState([S3 * np.exp(-1j * t), S3 * np.exp(-2j * t), 0], example_basis)
    out = lift(ZenoSplit(reduced, np.array([0, 0, 0, S3], dtype=complex)))
    assert np.allclose(out, [S3 * np.exp(-1j * t), S3 * np.exp(-2j * t), 0, S3])


def test_lift_zero_reduced(example_basis):
    r = np.array([0, 0, 0, 0.5j])
    assert np.array_equal(lift(ZenoSplit(ReducedState(np.zeros(3), example_basis), r)), r)


def test_evolve_reduced_diagonal_example(phi, example_basis):
    delta = 0.25
    ops = build_reduced(phi, example_basis, delta)
    state = ReducedState([S3, S3, 0], example_basis)
    assert np.array_equal(evolve_reduced(state, ops.up_red, 0).amplitudes, state.amplitudes)
    out = evolve_reduced(state, ops.up_red, 1).amplitudes
    assert np.allclose(out, [np.exp(-1j * delta) * S3, np.exp(-2j * delta) * S3, 0])


def test_evolve_reduced_preserves_norm(phi, example_basis, rng):
    ops = build_reduced(phi, example_basis, 0.7)
    state = ReducedState(rng.normal(size=3) + 1j * rng.normal(size=3), example_basis)
    out = evolve_reduced(state, ops.ub_red, 13)
    assert abs(out.norm_sq() - state.norm_sq()) <= 1e-10
    with pytest.raises(DimensionMismatch):
        evolve_reduced(state, np.eye(4), 1)


def test_example_projected_hamiltonians(phi, example_basis):
    hbz = projected_hamiltonian(hb_matrix(2), example_basis).real
    assert hbz.tolist() == [[0, 1, 1, 0], [1, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]]
    hpz = projected_hamiltonian(hp_matrix(phi), example_basis).real
    assert np.array_equal(hpz, np.diag([1, 2, 2, 0]))
    assert np.array_equal(projector(example_basis), np.diag([1, 1, 1, 0]))


def test_zeno_reference_full_space_is_plain_evolution(rng):
    H = random_hermitian(8, rng)
    psi = random_state(8, rng)
    out = zeno_full_reference(psi, H, SelectionBasis.full(3), 1.1)
    assert np.allclose(out, expm_hermitian(H, 1.1) @ psi, atol=1e-12)


def test_zeno_reference_guard():
    with pytest.raises(TooLarge):
        zeno_full_reference(np.ones(2**13), np.eye(1), SelectionBasis(13, [0]), 0.1)


def _constraint_basis(rng, n):
    f = random_3sat(n, 3 * n, int(rng.integers(2**31)))
    return SelectionBasis.from_models(enumerate_models_dpll(prefix(f, int(rng.integers(0, 2 * n)))))


def test_reduction_random_n6(rng):
    for _ in range(10):
        basis = _constraint_basis(rng, 6)
        assert verify_reduction(random_state(64, rng), random_hermitian(64, rng), basis,
                               float(rng.uniform(0, 5))) <= 1e-9


def test_reduction_at_time_zero(rng):
    basis = _constraint_basis(rng, 5)
    assert verify_reduction(random_state(32, rng), random_hermitian(32, rng), basis, 0.0) <= 1e-14


def test_residual_is_invariant(rng):
    for _ in range(10):
        basis = _constraint_basis(rng, 5)
        psi = random_state(32, rng)
        r = compress(psi, basis).residual
        for t in (0.3, 2.0, 4.5):
            out = zeno_full_reference(psi, random_hermitian(32, rng), basis, t)
            assert np.max(np.abs(compress(out, basis).residual - r)) <= 1e-10


def test_reduced_norm_conserved(rng):
    basis = _constraint_basis(rng, 6)
    if basis.d == 0:
        basis = SelectionBasis(6, [0, 1, 3])
    psi = random_state(64, rng)
    H = random_hermitian(64, rng)
    split = compress(psi, basis)
    Uhat = expm_hermitian(H[np.ix_(basis.indices, basis.indices)], 2.2)
    out = evolve_reduced(split.reduced, Uhat, 5)
    assert abs(out.norm_sq() - split.reduced.norm_sq()) <= 1e-10
