"""Reduced-dimension tables for the two benchmarks, and timing runs for the cost model.

Instances are seeded from ``(base seed, benchmark, n, column, instance)`` only,
so every k-ratio of a table cell sees the same formulas and worker count
never changes the output.
"""

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .cnf import coordination_formula, erdos_renyi, prefix, prefix_length, random_3sat
from .errors import EmptyInput, InvalidParams
from .hamiltonians import SelectionBasis, build_reduced
from .modelcount import enumerate_models_dpll
from .qaoa import evolve_schedule, run_full

SCHEMA_VERSION = 1
WORKERS_ENV = "ZENOQAOA_WORKERS"
BENCHMARKS = ("random3sat", "coordination")

# Mean reduced dimensions reported for 100 instances per cell,
# keyed by (n, column, k_ratio).
PAPER_TABLE1 = {
    (n, col, k): v
    for n, rows in {
        10: (29.03, 15.32, 8.36, 9.59, 4.50, 2.53),
        11: (39.82, 21.17, 11.23, 12.11, 6.27, 3.91),
        12: (46.50, 25.51, 13.94, 15.81, 6.90, 3.14),
        13: (65.66, 27.77, 13.21, 24.06, 8.32, 3.05),
        14: (101.01, 46.40, 19.42, 18.74, 8.46, 3.83),
        15: (112.89, 50.04, 22.38, 29.19, 10.74, 4.63),
    }.items()
    for (col, k), v in zip(
        [(c, k) for c in (4.0, 5.0) for k in (0.7, 0.8, 0.9)], rows
    )
}
PAPER_TABLE2 = {
    (n, col, k): v
    for n, rows in {
        10: (103.41, 86.09, 47.44, 57.05, 25.86, 4.77),
        11: (144.29, 72.85, 29.37, 41.84, 16.22, 3.97),
        12: (157.86, 67.54, 29.01, 36.06, 8.10, 2.47),
        13: (149.68, 46.80, 15.36, 36.62, 6.01, 1.15),
        14: (142.17, 36.14, 9.13, 32.79, 5.94, 0.14),
        15: (121.83, 27.78, 5.97, 33.69, 2.13, 0.00),
    }.items()
    for (col, k), v in zip(
        [(c, k) for c in (0.3, 0.4) for k in (0.7, 0.8, 0.9)], rows
    )
}


@dataclass(frozen=True)
class TableConfig:
    """``columns`` holds clauses-per-variable ratios (random3sat) or edge probabilities."""

    n_range: tuple = (10, 11, 12)
    columns: tuple = (4.0, 5.0)
    k_ratios: tuple = (0.7, 0.8, 0.9)
    instances: int = 100
    seed: int = 0
    rounding: str = "floor"

    def __post_init__(self):
        for name in ("n_range", "columns", "k_ratios"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.instances < 1:
            raise InvalidParams("instances must be at least 1")
        if not all(0 < k <= 1 for k in self.k_ratios):
            raise InvalidParams("k ratios must lie in (0, 1]")
        if not self.n_range or not self.columns or not self.k_ratios:
            raise InvalidParams("config needs at least one n, column and k ratio")


@dataclass(frozen=True)
class TableRow:
    benchmark: str
    n: int
    column: float
    k_ratio: float
    mean_reduced_dim: float
    full_dim: int
    stddev: float
    instances_unsat: int
    instances: int
    mean_clauses: float
    mean_k: float


@dataclass(frozen=True)
class TimingRow:
    n: int
    d: int
    nu: int
    build_time: float
    reduced_run_time: float
    full_run_time: float = None
    enumerate_time: float = None
    m: int = None
    k: int = None
    extra: dict = field(default_factory=dict, compare=False)


def default_workers():
    value = os.environ.get(WORKERS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            raise InvalidParams(f"{WORKERS_ENV} must be an integer, got {value!r}") from None
    return 1


def _column_key(column):
    return int(round(column * 1000))


def instance_seed(seed, benchmark, n, column, index):
    return [int(seed), BENCHMARKS.index(benchmark), int(n), _column_key(column), int(index)]


def make_instance(benchmark, n, column, seed):
    """Formula of one benchmark instance; ``column`` is m/n or the edge probability."""
    if benchmark == "random3sat":
        return random_3sat(n, int(round(column * n)), seed)
    if benchmark == "coordination":
        return coordination_formula(erdos_renyi(n, column, seed))
    raise InvalidParams(f"unknown benchmark {benchmark!r}")


def _instance_dims(task):
    benchmark, n, column, seed, k_ratios, rounding = task
    f = make_instance(benchmark, n, column, seed)
    dims, ks = [], []
    for r in k_ratios:
        k = prefix_length(r, f.m, rounding)
        dims.append(len(enumerate_models_dpll(prefix(f, k))))
        ks.append(k)
    return f.m, ks, dims


def _map(fn, tasks, workers):
    if workers <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def run_table(config, benchmark="random3sat", workers=None):
    """Mean/stddev of the constraint model count for every (n, column, k ratio).

    Unsatisfiable prefixes count as dimension 0.
    """
    if benchmark not in BENCHMARKS:
        raise InvalidParams(f"unknown benchmark {benchmark!r}")
    workers = default_workers() if workers is None else workers
    tasks = [
        (benchmark, n, col, instance_seed(config.seed, benchmark, n, col, i),
         config.k_ratios, config.rounding)
        for n in config.n_range
        for col in config.columns
        for i in range(config.instances)
    ]
    results = _map(_instance_dims, tasks, workers)
    rows = []
    pos = 0
    for n in config.n_range:
        for col in config.columns:
            chunk = results[pos : pos + config.instances]
            pos += config.instances
            ms = np.array([c[0] for c in chunk], dtype=float)
            ks = np.array([c[1] for c in chunk], dtype=float)
            dims = np.array([c[2] for c in chunk], dtype=float)
            for j, r in enumerate(config.k_ratios):
                col_dims = dims[:, j]
                rows.append(
                    TableRow(
                        benchmark=benchmark,
                        n=n,
                        column=col,
                        k_ratio=r,
                        mean_reduced_dim=float(col_dims.mean()),
                        full_dim=2**n,
                        stddev=float(col_dims.std(ddof=1)) if len(col_dims) > 1 else 0.0,
                        instances_unsat=int((col_dims == 0).sum()),
                        instances=config.instances,
                        mean_clauses=float(ms.mean()),
                        mean_k=float(ks[:, j].mean()),
                    )
                )
    return rows


def paper_value(row):
    table = PAPER_TABLE1 if row.benchmark == "random3sat" else PAPER_TABLE2
    return table.get((row.n, row.column, row.k_ratio))


def _column_label(benchmark, column):
    return f"m={column:g}n" if benchmark == "random3sat" else f"p={column:g}"


def _wide(rows):
    columns = []
    for r in rows:
        key = (r.column, r.k_ratio)
        if key not in columns:
            columns.append(key)
    ns = sorted({r.n for r in rows})
    cells = {(r.n, r.column, r.k_ratio): r for r in rows}
    return ns, columns, cells


def export_table(rows, format="markdown"):
    """Render rows as ``csv``, ``json`` or ``markdown``.

    CSV and markdown use the wide layout: ``n``, ``2^n``, then one mean column
    per (column, k ratio), grouped by column. JSON keeps every row field.
    """
    rows = list(rows)
    if not rows:
        raise EmptyInput("no rows to export")
    if format == "json":
        payload = {"schema_version": SCHEMA_VERSION, "rows": [asdict(r) for r in rows]}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    benchmark = rows[0].benchmark
    ns, columns, cells = _wide(rows)
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(
            ["n", "2^n"]
            + [f"{_column_label(benchmark, c)} k={k:g}m" for c, k in columns]
        )
        for n in ns:
            w.writerow(
                [n, 2**n]
                + [
                    f"{cells[(n, c, k)].mean_reduced_dim:.2f}" if (n, c, k) in cells else ""
                    for c, k in columns
                ]
            )
        return buf.getvalue()
    if format == "markdown":
        groups = []
        for c, _ in columns:
            if c not in groups:
                groups.append(c)
        group_cells = ["", ""]
        for g in groups:
            width = sum(1 for c, _ in columns if c == g)
            group_cells += [_column_label(benchmark, g)] + [""] * (width - 1)
        group_row = "|" + "|".join(f" {c} " if c else " " for c in group_cells) + "|"
        header = "| n | 2^n | " + " | ".join(f"k={k:g}m" for _, k in columns) + " |"
        sep = "|" + "---|" * (len(columns) + 2)
        lines = [group_row, header, sep]
        for n in ns:
            vals = [
                f"{cells[(n, c, k)].mean_reduced_dim:.2f}" if (n, c, k) in cells else ""
                for c, k in columns
            ]
            lines.append(f"| {n} | {2**n} | " + " | ".join(vals) + " |")
        return "\n".join(lines) + "\n"
    raise InvalidParams(f"unknown export format {format!r}")


def rows_from_json(text):
    payload = json.loads(text)
    return [TableRow(**r) for r in payload["rows"]]


def _min_time(fn, repeats):
    fn()  # warm-up
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def time_instance(f, k, schedule, repeats=3, full=True):
    """Time enumeration, reduced build, reduced evolution and (optionally) the full run."""
    t0 = time.perf_counter()
    models = enumerate_models_dpll(prefix(f, k))
    enumerate_time = time.perf_counter() - t0
    basis = SelectionBasis.from_models(models)
    if basis.d == 0:
        return None
    build_time = _min_time(lambda: build_reduced(f, basis, schedule.delta, cache=False), repeats)
    ops = build_reduced(f, basis, schedule.delta)
    amps = np.full(basis.d, 2 ** (-f.n / 2), dtype=complex)
    reduced_time = _min_time(lambda: evolve_schedule(ops, amps, schedule), repeats)
    full_time = _min_time(lambda: run_full(f, schedule), repeats) if full else None
    return TimingRow(
        n=f.n, d=basis.d, nu=schedule.nu, build_time=build_time,
        reduced_run_time=reduced_time, full_run_time=full_time,
        enumerate_time=enumerate_time, m=f.m, k=k,
    )


def run_timing(n_range, k_ratio, schedule, repeats=3, m_ratio=4.0, seed=0,
               full_max_n=14, instances=1, rounding="floor"):
    """Timing rows over random 3-SAT instances; the full run is skipped above ``full_max_n``.

    Reported times are the minimum over ``repeats`` after one warm-up call.
    """
    rows = []
    for n in n_range:
        for i in range(instances):
            f = random_3sat(n, int(round(m_ratio * n)),
                            instance_seed(seed, "random3sat", n, m_ratio, i))
            k = prefix_length(k_ratio, f.m, rounding)
            row = time_instance(f, k, schedule, repeats, full=n <= full_max_n)
            if row is not None:
                rows.append(row)
    return rows


def loglog_slope(x, y):
    """Least-squares slope of log(y) against log(x)."""
    x = np.log(np.asarray(x, dtype=float))
    y = np.log(np.asarray(y, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def export_timing(rows, format="csv"):
    rows = list(rows)
    if not rows:
        raise EmptyInput("no rows to export")
    keys = ["n", "m", "k", "d", "nu", "enumerate_time", "build_time",
            "reduced_run_time", "full_run_time"]
    if format == "json":
        payload = {"schema_version": SCHEMA_VERSION,
                   "rows": [{k: getattr(r, k) for k in keys} for r in rows]}
        return json.dumps(payload, indent=2) + "\n"
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow(["" if getattr(r, k) is None else getattr(r, k) for k in keys])
        return buf.getvalue()
    raise InvalidParams(f"unknown export format {format!r}")
