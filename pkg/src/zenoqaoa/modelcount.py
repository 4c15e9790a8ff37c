"""Enumeration of all satisfying assignments of a CNF formula.

The models of the constraint prefix are the computational basis states
spanning the Zeno subspace, so enumeration must be complete and its output
canonical (ascending bitmasks).
"""

import sys
from dataclasses import dataclass

import numpy as np

from .cnf import count_satisfied_many
from .errors import InvalidParams, TooManyVariables

DEFAULT_CAP = 2**20
BRUTEFORCE_MAX_N = 24


@dataclass(frozen=True)
class ModelSet:
    n: int
    models: np.ndarray
    truncated: bool = False

    def __post_init__(self):
        models = np.asarray(self.models, dtype=np.int64).reshape(-1)
        models.setflags(write=False)
        object.__setattr__(self, "models", models)

    def __len__(self):
        return len(self.models)

    def __eq__(self, other):
        if not isinstance(other, ModelSet):
            return NotImplemented
        return (
            self.n == other.n
            and self.truncated == other.truncated
            and np.array_equal(self.models, other.models)
        )

    def tolist(self):
        return [int(x) for x in self.models]


class _Stop(Exception):
    pass


class _Enumerator:
    """Recursive #DPLL-style splitting over clauses of signed 1-based literals."""

    def __init__(self, n, cap):
        self.n = n
        self.cap = cap
        self.found = []
        self.count = 0

    def emit(self, mask, free):
        """Record every completion of ``mask`` over the unassigned ``free`` variables."""
        total = 1 << len(free)
        room = self.cap - self.count
        take = min(total, room)
        if take > 0:
            sub = np.arange(take, dtype=np.int64)
            out = np.full(take, mask, dtype=np.int64)
            for b, v in enumerate(free):
                out |= ((sub >> b) & 1) << v
            self.found.append(out)
            self.count += take
        if total > room:
            raise _Stop

    def solve(self, clauses, mask, unassigned):
        # unit propagation
        while True:
            unit = next((c[0] for c in clauses if len(c) == 1), None)
            if unit is None:
                break
            v = abs(unit) - 1
            if unit > 0:
                mask |= 1 << v
            unassigned = unassigned - {v}
            clauses = _assign(clauses, unit)
            if clauses is None:
                return
        if not clauses:
            self.emit(mask, sorted(unassigned))
            return

        occurs = {}
        for c in clauses:
            for lit in c:
                occurs.setdefault(lit, 0)
                occurs[lit] += 1
        pure = [lit for lit in sorted(occurs, key=abs) if -lit not in occurs]
        if pure:
            self._pure_split(clauses, mask, unassigned, pure[0])
            return

        v = _branch_variable(clauses)
        for lit in (v + 1, -(v + 1)):
            reduced = _assign(clauses, lit)
            if reduced is not None:
                self.solve(reduced, mask | (1 << v) if lit > 0 else mask, unassigned - {v})

    def _pure_split(self, clauses, mask, unassigned, lit):
        """Split on a pure literal without searching the weaker branch twice.

        Setting ``lit`` false only shortens the clauses that contain it, so the
        models of that branch are exactly the models of the ``lit``-true branch
        that also satisfy those shortened clauses.
        """
        v = abs(lit) - 1
        bit = 1 << v
        containing = [tuple(l for l in c if l != lit) for c in clauses if lit in c]
        start = len(self.found)
        before = self.count
        rest = unassigned - {v}
        try:
            self.solve(_assign(clauses, lit), mask | bit if lit > 0 else mask, rest)
        finally:
            true_models = self.found[start:]
        flip = np.concatenate(true_models) if true_models else np.zeros(0, np.int64)
        flip = flip[: self.count - before]
        flip = flip ^ bit
        keep = _satisfies_all(flip, containing)
        flip = flip[keep]
        room = self.cap - self.count
        if len(flip):
            self.found.append(flip[:room])
            self.count += min(len(flip), room)
        if len(flip) > room:
            raise _Stop


def _assign(clauses, lit):
    """Simplify clauses under ``lit`` = true; ``None`` signals a conflict."""
    out = []
    for c in clauses:
        if lit in c:
            continue
        if -lit in c:
            c = tuple(l for l in c if l != -lit)
            if not c:
                return None
        out.append(c)
    return out


def _branch_variable(clauses):
    """Most occurrences within the shortest clauses, lowest index on ties."""
    shortest = min(len(c) for c in clauses)
    score = {}
    for c in clauses:
        if len(c) == shortest:
            for lit in c:
                v = abs(lit) - 1
                score[v] = score.get(v, 0) + 1
    return min(score, key=lambda v: (-score[v], v))


def _satisfies_all(xs, clauses):
    ok = np.ones(xs.shape, dtype=bool)
    for c in clauses:
        sat = np.zeros(xs.shape, dtype=bool)
        for lit in c:
            bit = ((xs >> (abs(lit) - 1)) & 1).astype(bool)
            sat |= bit if lit > 0 else ~bit
        ok &= sat
    return ok


def enumerate_models_dpll(f, cap=DEFAULT_CAP):
    """All models of ``f`` in ascending order, or the first ``cap`` found.

    Tautological clauses are dropped and repeated literals merged before the
    search starts.
    """
    if cap < 1:
        raise InvalidParams("cap must be at least 1")
    clauses = []
    for c in f.clauses:
        if c.is_tautology():
            continue
        clauses.append(tuple(dict.fromkeys(c.to_dimacs())))
    enum = _Enumerator(f.n, cap)
    truncated = False
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * f.n + 1000))
    try:
        enum.solve(clauses, 0, frozenset(range(f.n)))
    except _Stop:
        truncated = True
    finally:
        sys.setrecursionlimit(limit)
    models = np.concatenate(enum.found) if enum.found else np.zeros(0, np.int64)
    return ModelSet(f.n, np.sort(models[:cap]), truncated)


def enumerate_models_bruteforce(f):
    """Test oracle: scan all ``2**n`` assignments and keep those satisfying every clause."""
    if f.n > BRUTEFORCE_MAX_N:
        raise TooManyVariables(f"brute force limited to n <= {BRUTEFORCE_MAX_N}")
    xs = np.arange(2**f.n, dtype=np.int64)
    return ModelSet(f.n, xs[count_satisfied_many(f, xs) == f.m])
