"""Dense complex linear algebra on state vectors and small Hermitian matrices.

Basis index ``x`` encodes qubit ``j`` in bit ``j`` (qubit 0 is the least
significant bit), so ``|x1 x0>`` is entry ``x = 2*x1 + x0``.
"""

import numpy as np

from .errors import DimensionMismatch, NonHermitianInput, QubitOutOfRange

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def as_matrix(H):
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {H.shape}")
    return H


def is_hermitian(H, tol=HERMITIAN_TOL):
    H = as_matrix(H)
    return bool(np.all(np.abs(H - H.conj().T) <= tol))


def is_unitary(U, tol=UNITARY_TOL):
    U = as_matrix(U)
    eye = np.eye(U.shape[0])
    return bool(np.all(np.abs(U.conj().T @ U - eye) <= tol))


def is_normalized(v, tol=1e-12):
    v = np.asarray(v)
    return abs(np.vdot(v, v).real - 1.0) <= tol


class HermitianEig:
    """Eigendecomposition ``H = V diag(w) V^dagger`` reusable for many times ``t``."""

    def __init__(self, H, check=True):
        H = as_matrix(H)
        if check and not is_hermitian(H):
            raise NonHermitianInput("matrix is not Hermitian within 1e-12")
        self.dim = H.shape[0]
        if self.dim == 0:
            self.eigenvalues = np.zeros(0)
            self.eigenvectors = np.zeros((0, 0), dtype=complex)
        elif not H.imag.any():
            # real symmetric input: the real solver is several times faster
            self.eigenvalues, self.eigenvectors = np.linalg.eigh(H.real)
        else:
            self.eigenvalues, self.eigenvectors = np.linalg.eigh(H)

    def unitary(self, t):
        """Return ``exp(-i t H)``."""
        V = self.eigenvectors
        phases = np.exp(-1j * t * self.eigenvalues)
        return (V * phases) @ V.conj().T


def expm_hermitian(H, t):
    """Return ``exp(-i t H)`` for Hermitian ``H`` via eigendecomposition.

    Raises NonHermitianInput when ``H`` deviates from its conjugate
    transpose by more than 1e-12 in any entry.
    """
    H = as_matrix(H)
    if H.shape[0] == 0:
        raise DimensionMismatch("matrix dimension must be at least 1")
    return HermitianEig(H).unitary(t)


def matvec(M, v):
    M = np.asarray(M)
    v = np.asarray(v)
    if M.ndim != 2 or v.ndim != 1 or M.shape[1] != v.shape[0]:
        raise DimensionMismatch(f"cannot multiply {M.shape} by {v.shape}")
    return M @ v


def num_qubits(dim):
    """Return ``n`` with ``2**n == dim`` or raise DimensionMismatch."""
    if dim < 1 or dim & (dim - 1):
        raise DimensionMismatch(f"state dimension {dim} is not a power of two")
    return dim.bit_length() - 1


def apply_single_qubit_gate(state, gate, qubit):
    """Apply ``gate`` on ``qubit`` of a 2**n state vector in O(2**n).

    The state is viewed as an array of shape ``(2**(n-1-q), 2, 2**q)`` so that
    the middle axis is the bit of qubit ``q``.
    """
    state = np.asarray(state, dtype=complex)
    if state.ndim != 1:
        raise DimensionMismatch("state must be a vector")
    n = num_qubits(state.shape[0])
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (2, 2):
        raise DimensionMismatch(f"gate must be 2x2, got {gate.shape}")
    if not 0 <= qubit < n:
        raise QubitOutOfRange(f"qubit {qubit} out of range for {n} qubits")
    psi = state.reshape(2 ** (n - 1 - qubit), 2, 2**qubit)
    out = np.einsum("ab,ibj->iaj", gate, psi)
    return out.reshape(-1)


def kron_gate_matrix(gate, qubit, n):
    """Materialize ``I x ... x gate x ... x I`` (oracle helper, small n only)."""
    if not 0 <= qubit < n:
        raise QubitOutOfRange(f"qubit {qubit} out of range for {n} qubits")
    # Kronecker factors run from the most significant qubit down to qubit 0.
    out = np.eye(1, dtype=complex)
    for j in reversed(range(n)):
        out = np.kron(out, gate if j == qubit else np.eye(2))
    return out


def random_hermitian(dim, rng, scale=1.0):
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (A + A.conj().T) / 2


def random_state(dim, rng):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)
