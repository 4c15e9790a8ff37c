"""QAOA schedule evaluation: constrained in the reduced space, and full-space oracles.

A schedule ``[(k_1, l_1), ..., (k_K, l_K)]`` with time step ``delta`` produces

    w = U_B^{k_K} U_P^{l_K} ... U_B^{k_1} U_P^{l_1} psi0

so within every stage the problem unitary acts first. Powers are applied as
repeated matrix-vector products.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from . import zeno
from .cnf import count_satisfied_many, prefix
from .errors import EmptySubspace, InvalidParams, TooLarge
from .hamiltonians import (
    SelectionBasis,
    apply_ub_full,
    build_reduced,
    hb_matrix,
    hp_diagonal,
    hp_matrix,
)
from .modelcount import DEFAULT_CAP, enumerate_models_dpll
from .numerics import HADAMARD, apply_single_qubit_gate, expm_hermitian

DEFAULT_DELTA = 0.1
FULL_MAX_N = 20
SAMPLE_DENSE_MAX_N = 24


@dataclass(frozen=True)
class Schedule:
    stages: tuple
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        stages = tuple((int(k), int(l)) for k, l in self.stages)
        object.__setattr__(self, "stages", stages)
        if not stages:
            raise InvalidParams("a schedule needs at least one stage")
        if any(k < 0 or l < 0 for k, l in stages):
            raise InvalidParams("schedule powers must be non-negative")
        if all(k == 0 and l == 0 for k, l in stages):
            raise InvalidParams("schedule applies no unitary")
        if not self.delta >= 0:
            raise InvalidParams("delta must be non-negative")

    @property
    def kappa(self):
        return len(self.stages)

    @property
    def nu(self):
        return sum(k + l for k, l in self.stages)

    @classmethod
    def parse(cls, text, delta=DEFAULT_DELTA):
        """Parse ``"k1:l1,k2:l2,..."`` (mixer power before problem power)."""
        stages = []
        for part in text.split(","):
            try:
                k, l = part.split(":")
                stages.append((int(k), int(l)))
            except ValueError:
                raise InvalidParams(f"bad schedule stage {part!r}, expected k:l") from None
        return cls(tuple(stages), delta)

    def __str__(self):
        return ",".join(f"{k}:{l}" for k, l in self.stages)


@dataclass
class RunResult:
    final_reduced: zeno.ReducedState
    residual_norm_sq: float
    expectation_constrained: float
    expectation_full: float
    nu: int
    wall_time: float
    schedule: Schedule = None
    k_constraint: int = None
    initial: np.ndarray = field(default=None, repr=False)
    full_state: np.ndarray = field(default=None, repr=False)

    @property
    def n(self):
        return self.final_reduced.basis.n

    @property
    def d(self):
        return self.final_reduced.d

    def residual(self):
        """The static out-of-subspace component ``(I - P) psi0``."""
        basis = self.final_reduced.basis
        if self.initial is None:
            r = np.full(2**basis.n, 2 ** (-basis.n / 2), dtype=complex)
        else:
            r = np.array(self.initial, dtype=complex)
        r[basis.indices] = 0
        return r

    def lifted_state(self):
        if self.full_state is not None:
            return self.full_state
        return zeno.lift(zeno.ZenoSplit(self.final_reduced, self.residual()))

    def to_dict(self, include_state=False):
        out = {
            "n": self.n,
            "d": self.d,
            "k_constraint": self.k_constraint,
            "schedule": str(self.schedule) if self.schedule is not None else None,
            "delta": self.schedule.delta if self.schedule is not None else None,
            "nu": self.nu,
            "residual_norm_sq": self.residual_norm_sq,
            "reduced_norm_sq": self.final_reduced.norm_sq(),
            "expectation_constrained": self.expectation_constrained,
            "expectation_full": self.expectation_full,
            "wall_time": self.wall_time,
        }
        if include_state:
            amps = self.final_reduced.amplitudes
            out["basis"] = [int(x) for x in self.final_reduced.basis.indices]
            out["reduced_amplitudes"] = [[float(a.real), float(a.imag)] for a in amps]
        return out


def initial_uniform(n):
    if n < 1:
        raise InvalidParams("n must be at least 1")
    N = 2**n
    return np.full(N, 1 / np.sqrt(N), dtype=complex)


def hadamard_layer(n):
    """``H^{(x)n} |0...0>`` built gate by gate."""
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = 1
    for q in range(n):
        psi = apply_single_qubit_gate(psi, HADAMARD, q)
    return psi


def constraint_basis(f, k_constraint, cap=DEFAULT_CAP):
    """Selection basis spanned by the models of the first ``k_constraint`` clauses."""
    models = enumerate_models_dpll(prefix(f, k_constraint), cap)
    if models.truncated:
        raise TooLarge(f"constraint has more than {cap} models")
    return SelectionBasis.from_models(models)


def _is_uniform(psi0):
    return isinstance(psi0, str) and psi0 == "uniform"


def _expectations(hp_red, amps, residual_term):
    weights = np.abs(amps) ** 2
    inside = float(hp_red @ weights)
    norm_sq = float(weights.sum())
    constrained = inside / norm_sq if norm_sq > 0 else float("nan")
    return constrained, inside + residual_term


def evolve_schedule(ops, amps, schedule):
    """Apply a schedule to reduced amplitudes using prebuilt reduced operators."""
    for k, l in schedule.stages:
        for _ in range(l):
            amps = ops.up_red * amps
        for _ in range(k):
            amps = ops.ub_red @ amps
    return amps


def run_reduced(f, k_constraint, schedule, psi0="uniform", basis=None, cap=DEFAULT_CAP):
    """Constrained QAOA evaluated entirely in the d-dimensional Zeno subspace.

    ``basis`` may be passed to skip model enumeration of the constraint prefix.
    Raises EmptySubspace when the prefix is unsatisfiable.
    """
    start = time.perf_counter()
    if basis is None:
        basis = constraint_basis(f, k_constraint, cap)
    if basis.d == 0:
        raise EmptySubspace(k_constraint)
    ops = build_reduced(f, basis, schedule.delta)
    hp = hp_diagonal(f)
    N = 2**f.n
    if _is_uniform(psi0):
        amps = np.full(basis.d, 1 / np.sqrt(N), dtype=complex)
        residual_norm_sq = (N - basis.d) / N
        residual_term = (hp.total() - ops.hp_red.diag.sum()) / N
        initial = None
    else:
        split = zeno.compress(psi0, basis)
        amps = split.reduced.amplitudes
        residual_norm_sq = split.residual_norm_sq
        support = np.flatnonzero(split.residual)
        residual_term = float(
            np.abs(split.residual[support]) ** 2 @ hp.values(support)
        )
        initial = np.asarray(psi0, dtype=complex)
    amps = evolve_schedule(ops, amps, schedule)
    constrained, full = _expectations(ops.hp_red.diag, amps, residual_term)
    return RunResult(
        final_reduced=zeno.ReducedState(amps, basis),
        residual_norm_sq=residual_norm_sq,
        expectation_constrained=constrained,
        expectation_full=full,
        nu=schedule.nu,
        wall_time=time.perf_counter() - start,
        schedule=schedule,
        k_constraint=k_constraint,
        initial=initial,
    )


def _full_initial(n, psi0):
    if _is_uniform(psi0):
        return initial_uniform(n)
    psi = np.array(psi0, dtype=complex)
    if psi.shape != (2**n,):
        raise InvalidParams(f"initial state must have length 2**{n}")
    return psi


def run_full(f, schedule, psi0="uniform"):
    """Unconstrained QAOA on the full 2**n state with implicit operators."""
    if f.n > FULL_MAX_N:
        raise TooLarge(f"full-space simulation limited to n <= {FULL_MAX_N}")
    start = time.perf_counter()
    psi = _full_initial(f.n, psi0)
    diag = hp_diagonal(f).values(np.arange(2**f.n, dtype=np.int64))
    phases = np.exp(-1j * schedule.delta * diag)
    for k, l in schedule.stages:
        for _ in range(l):
            psi = phases * psi
        for _ in range(k):
            psi = apply_ub_full(psi, schedule.delta)
    energy = float(diag @ (np.abs(psi) ** 2))
    basis = SelectionBasis.full(f.n)
    return RunResult(
        final_reduced=zeno.ReducedState(psi, basis),
        residual_norm_sq=0.0,
        expectation_constrained=energy / float(np.vdot(psi, psi).real),
        expectation_full=energy,
        nu=schedule.nu,
        wall_time=time.perf_counter() - start,
        schedule=schedule,
        initial=None if _is_uniform(psi0) else np.asarray(psi0, dtype=complex),
        full_state=psi,
    )


def run_full_zeno(f, k_constraint, schedule, psi0="uniform", basis=None):
    """Constrained QAOA with materialized projected Hamiltonians (oracle, n <= 12)."""
    if f.n > zeno.ORACLE_MAX_N:
        raise TooLarge(f"full Zeno simulation limited to n <= {zeno.ORACLE_MAX_N}")
    start = time.perf_counter()
    if basis is None:
        basis = constraint_basis(f, k_constraint)
    if basis.d == 0:
        raise EmptySubspace(k_constraint)
    psi = _full_initial(f.n, psi0)
    HP = hp_matrix(f)
    UP = expm_hermitian(zeno.projected_hamiltonian(HP, basis), schedule.delta)
    UB = expm_hermitian(zeno.projected_hamiltonian(hb_matrix(f.n), basis), schedule.delta)
    for k, l in schedule.stages:
        for _ in range(l):
            psi = UP @ psi
        for _ in range(k):
            psi = UB @ psi
    split = zeno.compress(psi, basis)
    diag = HP.diagonal().real
    constrained, _ = _expectations(diag[basis.indices], split.reduced.amplitudes, 0.0)
    return RunResult(
        final_reduced=split.reduced,
        residual_norm_sq=split.residual_norm_sq,
        expectation_constrained=constrained,
        expectation_full=float(diag @ (np.abs(psi) ** 2)),
        nu=schedule.nu,
        wall_time=time.perf_counter() - start,
        schedule=schedule,
        k_constraint=k_constraint,
        initial=None if _is_uniform(psi0) else np.asarray(psi0, dtype=complex),
        full_state=psi,
    )


def sample(result, shots, seed=None):
    """Draw measurement outcomes from the lifted final state.

    Returns ``{bitmask: count}`` with only observed outcomes, sorted by bitmask.
    """
    if shots < 1:
        raise InvalidParams("shots must be at least 1")
    rng = np.random.default_rng(seed)
    if result.n <= SAMPLE_DENSE_MAX_N or result.full_state is not None:
        probs = np.abs(result.lifted_state()) ** 2
        probs = probs / probs.sum()
        counts = rng.multinomial(shots, probs)
        nz = np.flatnonzero(counts)
        return {int(x): int(counts[x]) for x in nz}
    if result.initial is not None:
        raise TooLarge(f"sampling a non-uniform residual needs n <= {SAMPLE_DENSE_MAX_N}")
    # two-stage draw: inside the subspace w.p. ||psi_hat||^2, else uniform off-model
    basis = result.final_reduced.basis
    inside_w = np.abs(result.final_reduced.amplitudes) ** 2
    p_in = inside_w.sum()
    p_in = p_in / (p_in + result.residual_norm_sq)
    n_in = rng.binomial(shots, p_in)
    out = {}
    for a, c in zip(basis.indices, rng.multinomial(n_in, inside_w / inside_w.sum())):
        if c:
            out[int(a)] = int(c)
    members = set(basis.indices.tolist())
    drawn = 0
    while drawn < shots - n_in:
        x = int(rng.integers(0, 2**result.n))
        if x not in members:
            out[x] = out.get(x, 0) + 1
            drawn += 1
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class ScheduleSpace:
    kappa: tuple = (1, 5)
    powers: tuple = (0, 10)
    delta: tuple = (0.05, 1.0)

    def draw(self, rng):
        kappa = int(rng.integers(self.kappa[0], self.kappa[1] + 1))
        powers = rng.integers(self.powers[0], self.powers[1] + 1, size=(kappa, 2))
        if not powers.any():
            powers[0, 1] = max(1, self.powers[0])
        delta = float(rng.uniform(*self.delta))
        return Schedule(tuple(map(tuple, powers.tolist())), delta)


def random_search(f, k_constraint, space=None, trials=20, seed=None, psi0="uniform"):
    """Best-of-``trials`` random schedules by constrained expectation.

    Schedules are drawn sequentially from one generator, so a longer search
    with the same seed extends a shorter one.
    """
    if trials < 1:
        raise InvalidParams("trials must be at least 1")
    space = space or ScheduleSpace()
    rng = np.random.default_rng(seed)
    basis = constraint_basis(f, k_constraint)
    if basis.d == 0:
        raise EmptySubspace(k_constraint)
    best = None
    for _ in range(trials):
        result = run_reduced(f, k_constraint, space.draw(rng), psi0, basis=basis)
        if best is None or result.expectation_constrained > best.expectation_constrained:
            best = result
    return best
