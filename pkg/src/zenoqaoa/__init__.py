"""Exact Zeno-subspace reduction for simulating constrained QAOA on SAT problems."""

from .cnf import (
    Clause,
    CnfFormula,
    Graph,
    Literal,
    coordination_formula,
    count_satisfied,
    emit_dimacs,
    erdos_renyi,
    eval_clause,
    parse_dimacs,
    prefix,
    prefix_length,
    random_3sat,
)
from .errors import EmptySubspace, ZenoError
from .hamiltonians import (
    ReducedOperators,
    SelectionBasis,
    apply_ub_full,
    build_reduced,
    hb_entry,
    hp_diagonal,
    ub_entry,
)
from .modelcount import ModelSet, enumerate_models_bruteforce, enumerate_models_dpll
from .numerics import apply_single_qubit_gate, expm_hermitian, matvec
from .qaoa import (
    RunResult,
    Schedule,
    ScheduleSpace,
    initial_uniform,
    random_search,
    run_full,
    run_full_zeno,
    run_reduced,
    sample,
)
from .zeno import (
    ReducedState,
    ZenoSplit,
    compress,
    evolve_reduced,
    lift,
    verify_reduction,
    zeno_full_reference,
)

__version__ = "0.1.0"
