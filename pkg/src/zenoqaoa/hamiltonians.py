"""Problem and mixer Hamiltonians, full and restricted to a standard-basis selection.

The production path never builds a ``2**n x 2**n`` object: the problem
Hamiltonian is diagonal and evaluated per assignment, and mixer entries
depend only on the Hamming distance of two indices.
"""

import hashlib
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .cnf import count_satisfied, count_satisfied_many
from .errors import BasisMismatch, DimensionMismatch, InvalidParams, TooLarge
from .numerics import PAULI_X, HermitianEig, apply_single_qubit_gate, num_qubits

ORACLE_MAX_N = 14


@dataclass(frozen=True, eq=False)
class SelectionBasis:
    """Sorted computational-basis indices spanning a subspace (the columns of S)."""

    n: int
    indices: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64).reshape(-1)
        if len(idx) and (idx[0] < 0 or idx[-1] >= 2**self.n or np.any(np.diff(idx) <= 0)):
            raise InvalidParams("basis indices must be strictly ascending within [0, 2**n)")
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    @classmethod
    def full(cls, n):
        return cls(n, np.arange(2**n, dtype=np.int64))

    @classmethod
    def from_models(cls, model_set):
        return cls(model_set.n, model_set.models)

    @property
    def d(self):
        return len(self.indices)

    def __len__(self):
        return self.d

    @cached_property
    def key(self):
        return (self.n, hashlib.sha1(self.indices.tobytes()).hexdigest())

    def __eq__(self, other):
        return isinstance(other, SelectionBasis) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def mask(self):
        """Boolean membership vector of length ``2**n``."""
        m = np.zeros(2**self.n, dtype=bool)
        m[self.indices] = True
        return m

    def matrix(self):
        """Materialized ``2**n x d`` isometry S (oracle use)."""
        S = np.zeros((2**self.n, self.d))
        S[self.indices, np.arange(self.d)] = 1.0
        return S


@dataclass(frozen=True)
class DiagonalHamiltonian:
    diag: np.ndarray

    @property
    def dim(self):
        return len(self.diag)

    def to_matrix(self):
        return np.diag(self.diag).astype(complex)


class ProblemDiagonal:
    """Problem Hamiltonian of a formula as a lazily evaluated diagonal.

    ``hp[x]`` is the number of clauses satisfied by assignment ``x`` and costs
    O(m); ``hp.values(xs)`` evaluates many entries at once.
    """

    def __init__(self, f):
        self.formula = f
        self.dim = 2**f.n

    def __getitem__(self, x):
        if not 0 <= x < self.dim:
            raise IndexError(x)
        return count_satisfied(self.formula, int(x))

    def values(self, xs):
        return count_satisfied_many(self.formula, xs).astype(float)

    def dense(self):
        return DiagonalHamiltonian(self.values(np.arange(self.dim, dtype=np.int64)))

    def total(self):
        """Sum of all diagonal entries in O(m), without enumerating assignments."""
        n = self.formula.n
        s = 0
        for c in self.formula.clauses:
            if c.is_tautology():
                s += 2**n
            else:
                s += 2**n - 2 ** (n - len(set(c.variables)))
        return s


def hp_diagonal(f):
    return ProblemDiagonal(f)


def hamming_distance(k, l):
    return bin(int(k) ^ int(l)).count("1")


def hb_entry(k, l, n):
    if not (0 <= k < 2**n and 0 <= l < 2**n):
        raise IndexError(f"index outside [0, 2**{n})")
    return 1.0 if hamming_distance(k, l) == 1 else 0.0


def ub_entry(k, l, n, delta):
    """Entry ``(k, l)`` of ``exp(-i delta H_B)``: cos^(n-h) * (-i sin)^h, h = Hamming distance."""
    if not (0 <= k < 2**n and 0 <= l < 2**n):
        raise IndexError(f"index outside [0, 2**{n})")
    h = hamming_distance(k, l)
    return complex(np.cos(delta) ** (n - h) * (-1j * np.sin(delta)) ** h)


def mixer_gate(delta):
    return np.cos(delta) * np.eye(2) - 1j * np.sin(delta) * PAULI_X


def apply_ub_full(state, delta):
    """Apply ``exp(-i delta H_B)`` as one 2x2 rotation per qubit, O(n 2**n)."""
    state = np.asarray(state, dtype=complex)
    if state.ndim != 1:
        raise DimensionMismatch("state must be a vector")
    n = num_qubits(state.shape[0])
    gate = mixer_gate(delta)
    for q in range(n):
        state = apply_single_qubit_gate(state, gate, q)
    return state


def _popcount_is_one(x):
    return (x != 0) & ((x & (x - 1)) == 0)


def hb_submatrix(indices):
    """Adjacency of Hamming-distance-1 pairs among ``indices`` (d x d, O(d**2))."""
    idx = np.asarray(indices, dtype=np.int64)
    return _popcount_is_one(idx[:, None] ^ idx[None, :]).astype(float)


def hb_matrix(n):
    """Full mixer ``sum_j X_j`` (oracle use, n <= 14)."""
    if n > ORACLE_MAX_N:
        raise TooLarge(f"refusing to materialize a 2**{n} mixer")
    return hb_submatrix(np.arange(2**n, dtype=np.int64))


def ub_matrix(n, delta):
    """Full ``exp(-i delta H_B)`` from the closed form (oracle use)."""
    if n > ORACLE_MAX_N:
        raise TooLarge(f"refusing to materialize a 2**{n} mixer unitary")
    idx = np.arange(2**n, dtype=np.int64)
    x = idx[:, None] ^ idx[None, :]
    h = np.zeros(x.shape, dtype=np.int64)
    for b in range(n):
        h += (x >> b) & 1
    return np.cos(delta) ** (n - h) * (-1j * np.sin(delta)) ** h


def hp_matrix(f):
    """Full diagonal problem Hamiltonian as a dense matrix (oracle use)."""
    if f.n > ORACLE_MAX_N:
        raise TooLarge(f"refusing to materialize a 2**{f.n} problem Hamiltonian")
    return hp_diagonal(f).dense().to_matrix()


def reduce_general(H, S):
    """``S^dagger H S`` for an arbitrary isometry S (oracle helper, n <= 10)."""
    S = np.asarray(S)
    if S.shape[0] > 2**10:
        raise TooLarge("general reduction is an oracle helper for n <= 10")
    return S.conj().T @ np.asarray(H) @ S


_MIXER_EIG_CACHE = {}
_MIXER_EIG_CACHE_SIZE = 8


def reduced_mixer_eig(basis):
    """Cached eigendecomposition of the reduced mixer for ``basis``."""
    eig = _MIXER_EIG_CACHE.get(basis.key)
    if eig is None:
        eig = HermitianEig(hb_submatrix(basis.indices), check=False)
        if len(_MIXER_EIG_CACHE) >= _MIXER_EIG_CACHE_SIZE:
            _MIXER_EIG_CACHE.pop(next(iter(_MIXER_EIG_CACHE)))
        _MIXER_EIG_CACHE[basis.key] = eig
    return eig


@dataclass(frozen=True)
class ReducedOperators:
    """Reduced problem/mixer Hamiltonians and their unitaries for one time step.

    ``up_red`` holds only the diagonal of the (diagonal) problem unitary.
    """

    hp_red: DiagonalHamiltonian
    hb_red: np.ndarray
    delta: float
    up_red: np.ndarray
    ub_red: np.ndarray
    basis: SelectionBasis = field(repr=False, default=None)

    @property
    def d(self):
        return self.hp_red.dim


def build_reduced(f_problem, basis, delta, cache=True):
    """Reduced operators of ``f_problem`` on ``basis`` in O(m d + d**2) plus one eigensolve.

    The mixer eigendecomposition is reused across calls with the same basis
    unless ``cache=False``.
    """
    if basis.n != f_problem.n:
        raise BasisMismatch(f"basis has n={basis.n}, formula has n={f_problem.n}")
    hp = DiagonalHamiltonian(hp_diagonal(f_problem).values(basis.indices))
    hb = hb_submatrix(basis.indices)
    up = np.exp(-1j * delta * hp.diag)
    if basis.d == 0:
        ub = np.zeros((0, 0), dtype=complex)
    else:
        eig = reduced_mixer_eig(basis) if cache else HermitianEig(hb, check=False)
        ub = eig.unitary(delta)
    return ReducedOperators(hp, hb, float(delta), up, ub, basis)


def reduced_to_dict(ops):
    """JSON-friendly view: dimension, problem diagonal and mixer adjacency pairs."""
    rows, cols = np.nonzero(np.triu(ops.hb_red))
    return {
        "n": ops.basis.n if ops.basis is not None else None,
        "d": ops.d,
        "delta": ops.delta,
        "indices": [int(x) for x in ops.basis.indices] if ops.basis is not None else None,
        "hp_diagonal": [float(v) for v in ops.hp_red.diag],
        "hb_pairs": [[int(a), int(b)] for a, b in zip(rows, cols)],
    }
