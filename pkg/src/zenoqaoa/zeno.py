"""Compression of states and dynamics onto a standard-basis Zeno subspace.

For a selection S of basis states, the projected evolution
``exp(-it P H P)`` acting on ``psi0`` equals ``S exp(-it S^T H S) S^T psi0 + r``
with ``r = (I - P) psi0`` left untouched. ``compress``/``lift`` move between
the two pictures; ``zeno_full_reference`` and ``verify_reduction`` check the
identity against an explicit full-space computation.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, TooLarge
from .hamiltonians import SelectionBasis
from .numerics import as_matrix, expm_hermitian

ORACLE_MAX_N = 12


@dataclass(frozen=True, eq=False)
class ReducedState:
    amplitudes: np.ndarray
    basis: SelectionBasis

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != self.basis.d:
            raise DimensionMismatch(
                f"{amps.shape[0]} amplitudes for a basis of dimension {self.basis.d}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @property
    def d(self):
        return self.basis.d

    def norm_sq(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


@dataclass(frozen=True, eq=False)
class ZenoSplit:
    reduced: ReducedState
    residual: np.ndarray

    @property
    def residual_norm_sq(self):
        return float(np.vdot(self.residual, self.residual).real)


def _check_full(psi, basis):
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.shape[0] != 2**basis.n:
        raise DimensionMismatch(
            f"state of length {psi.shape} does not match 2**{basis.n}"
        )
    return psi


def compress(psi, basis):
    """Split ``psi`` into ``S^T psi`` and the residual ``(I - P) psi``."""
    psi = _check_full(psi, basis)
    reduced = ReducedState(psi[basis.indices].copy(), basis)
    residual = psi.copy()
    residual[basis.indices] = 0
    return ZenoSplit(reduced, residual)


def lift(split):
    """Scatter the reduced amplitudes back and add the residual."""
    basis = split.reduced.basis
    out = _check_full(split.residual, basis).copy()
    out[basis.indices] += split.reduced.amplitudes
    return out


def lift_reduced(state, residual=None):
    """``S psi_hat``, plus ``residual`` when given."""
    split = ZenoSplit(
        state,
        np.zeros(2**state.basis.n, dtype=complex) if residual is None else residual,
    )
    return lift(split)


def evolve_reduced(state, U, repetitions=1):
    """Apply ``U`` to the reduced amplitudes ``repetitions`` times.

    A 1-d ``U`` is taken as the diagonal of a diagonal unitary.
    """
    if repetitions < 0:
        raise ValueError("repetitions must be non-negative")
    U = np.asarray(U)
    amps = state.amplitudes
    if U.ndim == 1:
        if U.shape[0] != state.d:
            raise DimensionMismatch(f"diagonal of length {U.shape[0]} for d={state.d}")
        for _ in range(repetitions):
            amps = U * amps
    else:
        if U.shape != (state.d, state.d):
            raise DimensionMismatch(f"unitary of shape {U.shape} for d={state.d}")
        for _ in range(repetitions):
            amps = U @ amps
    return ReducedState(amps, state.basis)


def projector(basis):
    """Materialized ``P = S S^T`` (oracle use)."""
    return np.diag(basis.mask().astype(float))


def projected_hamiltonian(H, basis):
    """Materialized ``P H P`` (oracle use)."""
    H = as_matrix(H)
    if H.shape[0] != 2**basis.n:
        raise DimensionMismatch(f"Hamiltonian of shape {H.shape} for n={basis.n}")
    m = basis.mask()
    return H * np.outer(m, m)


def zeno_full_reference(psi0, H, basis, t):
    """``exp(-it P H P) psi0`` computed in the full space. Oracle for n <= 12."""
    if basis.n > ORACLE_MAX_N:
        raise TooLarge(f"full Zeno reference limited to n <= {ORACLE_MAX_N}")
    psi0 = _check_full(psi0, basis)
    P = projector(basis)
    H = as_matrix(H)
    if H.shape[0] != psi0.shape[0]:
        raise DimensionMismatch(f"Hamiltonian of shape {H.shape} for n={basis.n}")
    HZ = P @ H @ P
    return expm_hermitian(HZ, t) @ psi0


def reduced_hamiltonian(H, basis):
    """``S^T H S``: the principal submatrix on the selected indices."""
    H = as_matrix(H)
    return H[np.ix_(basis.indices, basis.indices)]


def verify_reduction(psi0, H, basis, t):
    """Max-abs deviation between full projected evolution and reduce-evolve-lift."""
    full = zeno_full_reference(psi0, H, basis, t)
    split = compress(psi0, basis)
    if basis.d:
        Uhat = expm_hermitian(reduced_hamiltonian(H, basis), t)
        evolved = evolve_reduced(split.reduced, Uhat, 1)
    else:
        evolved = split.reduced
    via_reduced = lift(ZenoSplit(evolved, split.residual))
    return float(np.max(np.abs(full - via_reduced)))
