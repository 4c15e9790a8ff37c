"""CNF formulas, DIMACS I/O and the two benchmark generators.

Variables are 0-based internally; assignment ``x`` is an integer bitmask with
variable ``i`` stored in bit ``i``.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import HeaderMismatch, InvalidParams, KOutOfRange, ParseError


@dataclass(frozen=True, order=True)
class Literal:
    variable: int
    negated: bool = False

    def satisfied_by(self, x):
        return bool((x >> self.variable) & 1) != self.negated

    def to_dimacs(self):
        return -(self.variable + 1) if self.negated else self.variable + 1

    @classmethod
    def from_dimacs(cls, value):
        if value == 0:
            raise ValueError("0 is not a DIMACS literal")
        return cls(abs(value) - 1, value < 0)


@dataclass(frozen=True)
class Clause:
    literals: tuple

    def __post_init__(self):
        object.__setattr__(self, "literals", tuple(self.literals))
        if not self.literals:
            raise InvalidParams("a clause needs at least one literal")

    @classmethod
    def of(cls, *dimacs_literals):
        """Build a clause from signed 1-based integers, e.g. ``Clause.of(-1, -2)``."""
        return cls(tuple(Literal.from_dimacs(v) for v in dimacs_literals))

    @property
    def variables(self):
        return tuple(lit.variable for lit in self.literals)

    def key(self):
        """Order-free identity used for deduplication."""
        return frozenset(self.literals)

    def is_tautology(self):
        lits = set(self.literals)
        return any(Literal(l.variable, not l.negated) in lits for l in lits)

    def to_dimacs(self):
        return tuple(lit.to_dimacs() for lit in self.literals)


@dataclass(frozen=True)
class CnfFormula:
    n: int
    clauses: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.n < 0:
            raise InvalidParams("variable count must be non-negative")
        for c in self.clauses:
            for lit in c.literals:
                if not 0 <= lit.variable < self.n:
                    raise InvalidParams(
                        f"literal on variable {lit.variable} outside [0, {self.n})"
                    )

    @property
    def m(self):
        return len(self.clauses)

    def __len__(self):
        return len(self.clauses)

    @classmethod
    def from_dimacs_lists(cls, n, clauses):
        return cls(n, tuple(Clause.of(*c) for c in clauses))

    def to_dimacs_lists(self):
        return [list(c.to_dimacs()) for c in self.clauses]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            i, j = tuple(e)
            if i == j:
                raise InvalidParams(f"self-loop on node {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise InvalidParams(f"edge {i}-{j} outside [0, {self.n})")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    def neighbors(self, j):
        return sorted({a if b == j else b for a, b in self.edges if j in (a, b)})

    def degree(self, j):
        return len(self.neighbors(j))

    def sorted_edges(self):
        return sorted(self.edges)


def eval_clause(c, x):
    return any(lit.satisfied_by(x) for lit in c.literals)


def count_satisfied(f, x):
    return sum(1 for c in f.clauses if eval_clause(c, x))


def count_satisfied_many(f, xs):
    """Vectorized ``count_satisfied`` over an integer array of assignments."""
    xs = np.asarray(xs, dtype=np.int64)
    counts = np.zeros(xs.shape, dtype=np.int64)
    for c in f.clauses:
        sat = np.zeros(xs.shape, dtype=bool)
        for lit in c.literals:
            bit = ((xs >> lit.variable) & 1).astype(bool)
            sat |= ~bit if lit.negated else bit
        counts += sat
    return counts


def prefix(f, k):
    if not 0 <= k <= f.m:
        raise KOutOfRange(f"prefix length {k} outside [0, {f.m}]")
    return CnfFormula(f.n, f.clauses[:k])


def prefix_length(ratio, m, rounding="floor"):
    """Number of leading clauses used as constraint for ``k = ratio * m``.

    ``rounding="floor"`` truncates (the default, see README); ``"nearest"``
    rounds half up.
    """
    if not 0 <= ratio <= 1:
        raise KOutOfRange(f"prefix ratio {ratio} outside [0, 1]")
    # the epsilon absorbs products such as 0.7 * 30 = 20.999999999999996
    if rounding == "floor":
        return min(m, math.floor(ratio * m + 1e-9))
    if rounding == "nearest":
        return min(m, math.floor(ratio * m + 0.5 + 1e-9))
    raise InvalidParams(f"unknown rounding rule {rounding!r}")


def _rng(seed):
    if seed is None or isinstance(seed, (int, np.integer)):
        return np.random.default_rng(seed)
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(np.random.SeedSequence(seed))


def random_3sat(n, m, seed):
    """Random 3-SAT: each clause has 3 distinct variables, each negated w.p. 1/2."""
    if n < 3 or m < 1:
        raise InvalidParams(f"random_3sat needs n >= 3 and m >= 1, got n={n}, m={m}")
    rng = _rng(seed)
    clauses = []
    for _ in range(m):
        variables = rng.choice(n, size=3, replace=False)
        signs = rng.integers(0, 2, size=3)
        clauses.append(
            Clause(tuple(Literal(int(v), bool(s)) for v, s in zip(variables, signs)))
        )
    return CnfFormula(n, tuple(clauses))


def erdos_renyi(n, p, seed):
    if n < 1 or not 0 <= p <= 1:
        raise InvalidParams(f"erdos_renyi needs n >= 1 and p in [0, 1], got n={n}, p={p}")
    rng = _rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph(n, frozenset(e for e, k in zip(pairs, keep) if k))


def coordination_formula(g):
    """Not-all-equal constraints on every 2-path ``i - j - k`` of ``g``.

    Clauses are generated by ascending center ``j`` and neighbor pair
    ``(i, k)``, the all-negated clause first. Repeated literal sets are
    dropped, keeping the first occurrence.
    """
    adj = {j: [] for j in range(g.n)}
    for a, b in g.sorted_edges():
        adj[a].append(b)
        adj[b].append(a)
    seen = set()
    clauses = []
    for j in range(g.n):
        for i, k in itertools.combinations(sorted(adj[j]), 2):
            triple = sorted((i, j, k))
            for negated in (True, False):
                c = Clause(tuple(Literal(v, negated) for v in triple))
                if c.key() not in seen:
                    seen.add(c.key())
                    clauses.append(c)
    return CnfFormula(g.n, tuple(clauses))


def coordination_raw_clause_count(g):
    """Clause count before deduplication: two per 2-path centered at each node."""
    return sum(2 * math.comb(g.degree(j), 2) for j in range(g.n))


def parse_dimacs(text):
    n = declared_m = None
    clauses = []
    current = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed problem line {line!r}", lineno) from None
            if n < 0 or declared_m < 0:
                raise ParseError("negative counts in problem line", lineno)
            continue
        if n is None:
            raise ParseError("clause before problem line", lineno)
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if v == 0:
                if not current:
                    raise ParseError("empty clause", lineno)
                clauses.append(Clause(tuple(current)))
                current = []
            else:
                if abs(v) > n:
                    raise ParseError(f"variable {abs(v)} exceeds declared {n}", lineno)
                current.append(Literal.from_dimacs(v))
    if n is None:
        raise ParseError("missing problem line")
    if current:
        clauses.append(Clause(tuple(current)))
    if len(clauses) != declared_m:
        raise HeaderMismatch(
            f"header declares {declared_m} clauses but {len(clauses)} were read"
        )
    return CnfFormula(n, tuple(clauses))


def emit_dimacs(f, comments=()):
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {f.n} {f.m}")
    for c in f.clauses:
        lines.append(" ".join(str(v) for v in c.to_dimacs()) + " 0")
    return "\n".join(lines) + "\n"


def parse_graph(text):
    """Read the edge-list format: node count on the first line, then ``i j`` pairs."""
    rows = [(i, l.strip()) for i, l in enumerate(text.splitlines(), start=1)]
    rows = [(i, l) for i, l in rows if l and not l.startswith("#")]
    if not rows:
        raise ParseError("empty graph file")
    try:
        n = int(rows[0][1])
    except ValueError:
        raise ParseError(f"bad node count {rows[0][1]!r}", rows[0][0]) from None
    edges = set()
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'i j', got {line!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"expected 'i j', got {line!r}", lineno) from None
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"invalid edge {i}-{j} for {n} nodes", lineno)
        edges.add((min(i, j), max(i, j)))
    return Graph(n, frozenset(edges))


def emit_graph(g):
    return "".join([f"{g.n}\n"] + [f"{i} {j}\n" for i, j in g.sorted_edges()])
