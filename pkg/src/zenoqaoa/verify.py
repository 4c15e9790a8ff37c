"""Randomized checks that reduced Zeno dynamics match the full projected dynamics."""

from dataclasses import dataclass

import numpy as np

from .cnf import prefix, random_3sat
from .hamiltonians import SelectionBasis, hb_matrix, hp_matrix
from .modelcount import enumerate_models_dpll
from .numerics import random_hermitian, random_state
from .qaoa import Schedule, run_full_zeno, run_reduced
from .zeno import verify_reduction

TOLERANCE = 1e-9
HAMILTONIANS = ("problem", "mixer", "random")


@dataclass(frozen=True)
class CaseReport:
    cases: int
    max_error: float
    worst_case: dict

    @property
    def passed(self):
        return self.max_error <= TOLERANCE


def random_constraint(rng, n_min=2, n_max=10):
    """Random 3-SAT formula with a random constraint prefix, and the prefix's models."""
    n = int(rng.integers(max(3, n_min), n_max + 1))
    f = random_3sat(n, int(rng.integers(1, 5 * n + 1)), int(rng.integers(2**63)))
    k = int(rng.integers(0, f.m + 1))
    basis = SelectionBasis.from_models(enumerate_models_dpll(prefix(f, k)))
    return f, k, basis


def reduction_suite(cases, seed, n_max=10):
    """Max-abs Zeno-identity residual over random (state, Hamiltonian, basis, time)."""
    rng = np.random.default_rng(seed)
    worst, info = 0.0, {}
    for i in range(cases):
        f, k, basis = random_constraint(rng, n_max=n_max)
        kind = HAMILTONIANS[i % len(HAMILTONIANS)]
        if kind == "problem":
            H = hp_matrix(f)
        elif kind == "mixer":
            H = hb_matrix(f.n)
        else:
            H = random_hermitian(2**f.n, rng)
        t = float(rng.uniform(0, 5))
        err = verify_reduction(random_state(2**f.n, rng), H, basis, t)
        if err >= worst:
            worst, info = err, {"case": i, "n": f.n, "k": k, "d": basis.d,
                                "hamiltonian": kind, "t": t}
    return CaseReport(cases, worst, info)


def random_schedule(rng, max_kappa=4, max_power=5):
    kappa = int(rng.integers(1, max_kappa + 1))
    powers = rng.integers(0, max_power + 1, size=(kappa, 2))
    if not powers.any():
        powers[0, 1] = 1
    return Schedule(tuple(map(tuple, powers.tolist())), float(rng.uniform(0.05, 1.0)))


def schedule_suite(cases, seed, n_max=10, max_kappa=4, max_power=5):
    """Max deviation between reduced and full-space constrained QAOA runs.

    Compares lifted final states (max-abs) and both expectation values.
    Unsatisfiable constraint prefixes are redrawn.
    """
    rng = np.random.default_rng(seed)
    worst, info = 0.0, {}
    done = 0
    while done < cases:
        f, k, basis = random_constraint(rng, n_max=n_max)
        if basis.d == 0:
            continue
        schedule = random_schedule(rng, max_kappa, max_power)
        psi0 = "uniform" if done % 2 == 0 else random_state(2**f.n, rng)
        red = run_reduced(f, k, schedule, psi0, basis=basis)
        ref = run_full_zeno(f, k, schedule, psi0, basis=basis)
        err = float(max(
            float(np.max(np.abs(red.lifted_state() - ref.lifted_state()))),
            abs(red.expectation_full - ref.expectation_full),
            abs(red.expectation_constrained - ref.expectation_constrained),
        ))
        if err >= worst:
            worst, info = err, {"case": done, "n": f.n, "k": k, "d": basis.d,
                                "schedule": str(schedule), "delta": schedule.delta}
        done += 1
    return CaseReport(cases, worst, info)
