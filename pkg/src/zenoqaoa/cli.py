"""Command line entry point: ``zenoqaoa <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 verification failure,
3 empty constraint subspace in ``simulate``.
"""

import argparse
import configparser
import json
import logging
import sys

from . import bench, cnf, verify
from .errors import EmptySubspace, ZenoError
from .hamiltonians import SelectionBasis, build_reduced, reduced_to_dict
from .modelcount import DEFAULT_CAP, enumerate_models_dpll
from .qaoa import DEFAULT_DELTA, Schedule, ScheduleSpace, random_search, run_reduced, sample

log = logging.getLogger("zenoqaoa")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_EMPTY = 0, 1, 2, 3
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text):
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _float_list(text):
    return [float(v) for v in text.split(",")]


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _emit_json(payload):
    payload = {"schema_version": bench.SCHEMA_VERSION, **payload}
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _seed(args):
    if args.seed is None:
        log.warning("no --seed given, using %d", DEFAULT_SEED)
        args.seed = DEFAULT_SEED
    return args.seed


def _load_formula(args):
    if getattr(args, "cnf", None):
        return cnf.parse_dimacs(_read_text(args.cnf))
    if args.n is None or args.m is None:
        raise UsageError("give --cnf PATH or generator parameters --n and --m")
    return cnf.random_3sat(args.n, args.m, _seed(args))


def _constraint_k(args, f):
    if args.k is not None and args.ratio is not None:
        raise UsageError("--k and --ratio are mutually exclusive")
    if args.k is not None:
        return args.k
    if args.ratio is not None:
        return cnf.prefix_length(args.ratio, f.m, args.rounding)
    return f.m


def _add_constraint_flags(p):
    p.add_argument("--k", type=int, default=None,
                   help="constraint prefix length (default: all clauses)")
    p.add_argument("--ratio", type=float, default=None,
                   help="constraint prefix as a fraction of m (default: none)")
    p.add_argument("--rounding", choices=("floor", "nearest"), default="floor",
                   help="rounding of ratio*m (default: %(default)s)")


def cmd_gen_sat(args):
    f = cnf.random_3sat(args.n, args.m, args.seed)
    if args.json:
        _emit_json({"n": f.n, "m": f.m, "seed": args.seed, "clauses": f.to_dimacs_lists()})
        return EXIT_OK
    _write(cnf.emit_dimacs(f, [f"random 3-SAT n={args.n} m={args.m} seed={args.seed}"]),
           args.out)
    return EXIT_OK


def cmd_gen_coord(args):
    g = cnf.erdos_renyi(args.n, args.p, args.seed)
    f = cnf.coordination_formula(g)
    if args.graph_out:
        _write(cnf.emit_graph(g), args.graph_out)
    if args.json:
        _emit_json({"n": f.n, "m": f.m, "seed": args.seed, "p": args.p,
                    "edges": [list(e) for e in g.sorted_edges()],
                    "clauses": f.to_dimacs_lists()})
        return EXIT_OK
    _write(cnf.emit_dimacs(f, [f"coordination n={args.n} p={args.p} seed={args.seed}"]),
           args.out)
    return EXIT_OK


def cmd_models(args):
    f = cnf.parse_dimacs(_read_text(args.cnf))
    k = _constraint_k(args, f)
    models = enumerate_models_dpll(cnf.prefix(f, k), args.cap)
    if args.json:
        payload = {"n": f.n, "m": f.m, "k": k, "count": len(models),
                   "truncated": models.truncated}
        if args.list:
            payload["models"] = models.tolist()
        _emit_json(payload)
    else:
        print(f"models: {len(models)}{' (truncated)' if models.truncated else ''}")
        if args.list:
            print(json.dumps(models.tolist()))
    return EXIT_OK


def cmd_reduce(args):
    f = cnf.parse_dimacs(_read_text(args.cnf))
    k = _constraint_k(args, f)
    basis = SelectionBasis.from_models(enumerate_models_dpll(cnf.prefix(f, k), args.cap))
    ops = build_reduced(f, basis, args.delta)
    payload = {"k": k, "m": f.m, **reduced_to_dict(ops)}
    if args.json:
        _emit_json(payload)
    else:
        print(f"n={f.n} m={f.m} k={k} d={ops.d} mixer edges={len(payload['hb_pairs'])}")
    return EXIT_OK


def cmd_simulate(args):
    f = _load_formula(args)
    k = _constraint_k(args, f)
    seed = _seed(args)
    try:
        if args.schedule:
            result = run_reduced(f, k, Schedule.parse(args.schedule, args.delta))
        else:
            space = ScheduleSpace(
                tuple(args.search_kappa), tuple(args.search_powers), tuple(args.search_delta)
            )
            result = random_search(f, k, space, args.trials, seed)
    except EmptySubspace:
        print(f"constraint subspace is empty: the first {k} clauses are unsatisfiable",
              file=sys.stderr)
        return EXIT_EMPTY
    payload = result.to_dict(include_state=args.state)
    payload["m"] = f.m
    if args.shots:
        counts = sample(result, args.shots, seed)
        payload["samples"] = {str(x): c for x, c in counts.items()}
    if args.json:
        payload.pop("wall_time")
        _emit_json(payload)
    else:
        print(f"n={result.n} m={f.m} k={k} d={result.d} schedule={result.schedule} "
              f"delta={result.schedule.delta:g} nu={result.nu}")
        print(f"expectation (constrained) = {result.expectation_constrained:.12f}")
        print(f"expectation (full)        = {result.expectation_full:.12f}")
        print(f"residual weight           = {result.residual_norm_sq:.12f}")
        if args.shots:
            top = sorted(payload["samples"].items(), key=lambda kv: -kv[1])[:10]
            print("most frequent outcomes: " + ", ".join(f"{x}:{c}" for x, c in top))
    return EXIT_OK


def cmd_verify(args):
    seed = _seed(args)
    t1 = verify.reduction_suite(args.cases, seed, n_max=args.max_n)
    sched = verify.schedule_suite(args.schedule_cases, seed + 1, n_max=args.max_n)
    ok = t1.passed and sched.passed
    if args.json:
        _emit_json({
            "tolerance": verify.TOLERANCE,
            "evolution": {"cases": t1.cases, "max_error": t1.max_error, "worst": t1.worst_case},
            "schedules": {"cases": sched.cases, "max_error": sched.max_error,
                          "worst": sched.worst_case},
            "passed": ok,
        })
    else:
        print(f"evolution cases: {t1.cases}  max error: {t1.max_error:.3e}")
        print(f"schedule cases:  {sched.cases}  max error: {sched.max_error:.3e}")
        print("PASS" if ok else f"FAIL (tolerance {verify.TOLERANCE:g})")
    return EXIT_OK if ok else EXIT_VERIFY


def _apply_config(args):
    """Fill flags left at their defaults from a ``key = value`` file."""
    defaults = {k: args.subparser.get_default(k) for k in vars(args)}
    parser = configparser.ConfigParser()
    parser.read_string("[bench]\n" + _read_text(args.config))
    converters = {"n": _int_list, "columns": _float_list, "k_ratios": _float_list,
                  "instances": int, "seed": int, "workers": int}
    for key, raw in parser["bench"].items():
        key = key.lstrip("-").replace("-", "_")
        if key not in defaults or key in ("func", "subparser", "config"):
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, key) == defaults[key]:
            setattr(args, key, converters.get(key, str)(raw))


def cmd_bench_table(args):
    if args.config:
        _apply_config(args)
    columns = args.columns
    if columns is None:
        columns = [4.0, 5.0] if args.benchmark == "random3sat" else [0.3, 0.4]
    config = bench.TableConfig(
        n_range=tuple(args.n), columns=tuple(columns), k_ratios=tuple(args.k_ratios),
        instances=args.instances, seed=_seed(args), rounding=args.rounding,
    )
    rows = bench.run_table(config, args.benchmark, workers=args.workers)
    _write(bench.export_table(rows, "json" if args.json else args.format), args.out)
    return EXIT_OK


def cmd_bench_time(args):
    schedule = Schedule.parse(args.schedule, args.delta)
    rows = bench.run_timing(args.n, args.k_ratio, schedule, repeats=args.repeats,
                            m_ratio=args.m_ratio, seed=_seed(args),
                            full_max_n=args.full_max_n, rounding=args.rounding)
    if not rows:
        raise UsageError("every instance had an empty constraint subspace")
    _write(bench.export_timing(rows, "json" if args.json else args.format), args.out)
    if len(rows) > 1 and not args.json:
        slope = bench.loglog_slope([r.d for r in rows], [r.reduced_run_time for r in rows])
        print(f"log-log slope of reduced run time vs d: {slope:.2f}", file=sys.stderr)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="zenoqaoa", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    def add(name, help_):
        p = sub.add_parser(name, help=help_, description=help_, formatter_class=fmt)
        p.add_argument("--json", action="store_true", help="JSON output on stdout")
        return p

    p = add("gen-sat", "generate a random 3-SAT formula as DIMACS")
    p.add_argument("--n", type=int, required=True, help="variables")
    p.add_argument("--m", type=int, required=True, help="clauses")
    p.add_argument("--seed", type=int, required=True, help="RNG seed")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_gen_sat)

    p = add("gen-coord", "generate an agent-coordination (NAE) formula on a random graph")
    p.add_argument("--n", type=int, required=True, help="graph nodes")
    p.add_argument("--p", type=float, required=True, help="edge probability")
    p.add_argument("--seed", type=int, required=True, help="RNG seed")
    p.add_argument("--out", default=None, help="DIMACS output path (default: stdout)")
    p.add_argument("--graph-out", default=None, help="also write the graph edge list")
    p.set_defaults(func=cmd_gen_coord)

    p = add("models", "enumerate the models of a constraint prefix")
    p.add_argument("--cnf", required=True, help="DIMACS path, '-' for stdin")
    _add_constraint_flags(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum models")
    p.add_argument("--list", action="store_true", help="print the model bitmasks")
    p.set_defaults(func=cmd_models)

    p = add("reduce", "build the reduced Hamiltonians of a constraint prefix")
    p.add_argument("--cnf", required=True, help="DIMACS path, '-' for stdin")
    _add_constraint_flags(p)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA, help="time step")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum models")
    p.set_defaults(func=cmd_reduce)

    p = add("simulate", "run constrained QAOA in the reduced Zeno space")
    p.add_argument("--cnf", default=None, help="DIMACS path, '-' for stdin")
    p.add_argument("--n", type=int, default=None, help="generate: variables")
    p.add_argument("--m", type=int, default=None, help="generate: clauses")
    _add_constraint_flags(p)
    p.add_argument("--schedule", default=None,
                   help="stages 'k1:l1,k2:l2' (mixer:problem powers); random search if absent")
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA, help="time step")
    p.add_argument("--trials", type=int, default=20, help="random search trials")
    p.add_argument("--search-kappa", type=int, nargs=2, default=[1, 5], help="stage range")
    p.add_argument("--search-powers", type=int, nargs=2, default=[0, 10], help="power range")
    p.add_argument("--search-delta", type=float, nargs=2, default=[0.05, 1.0],
                   help="time step range")
    p.add_argument("--shots", type=int, default=0, help="measurement samples")
    p.add_argument("--state", action="store_true", help="include reduced amplitudes")
    p.add_argument("--seed", type=int, default=None, help="RNG seed")
    p.set_defaults(func=cmd_simulate)

    p = add("verify", "randomized reduced-vs-full Zeno equivalence checks")
    p.add_argument("--cases", type=int, default=200, help="single-evolution cases")
    p.add_argument("--schedule-cases", type=int, default=100, help="QAOA schedule cases")
    p.add_argument("--max-n", type=int, default=10, help="largest qubit count")
    p.add_argument("--seed", type=int, default=None, help="RNG seed")
    p.set_defaults(func=cmd_verify)

    p = add("bench-table", "mean reduced dimension tables")
    p.add_argument("--benchmark", choices=bench.BENCHMARKS, default="random3sat",
                   help="instance family")
    p.add_argument("--n", type=_int_list, default=[10, 11, 12],
                   help="variable counts, e.g. 10,11 or 10..15")
    p.add_argument("--columns", type=_float_list, default=None,
                   help="m/n ratios or edge probabilities (default: 4,5 or 0.3,0.4)")
    p.add_argument("--k-ratios", type=_float_list, default=[0.7, 0.8, 0.9],
                   help="constraint prefix fractions")
    p.add_argument("--instances", type=int, default=100, help="instances per cell")
    p.add_argument("--rounding", choices=("floor", "nearest"), default="floor",
                   help="rounding of k*m")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker processes (default: ${bench.WORKERS_ENV} or 1)")
    p.add_argument("--format", choices=("markdown", "csv", "json"), default="markdown",
                   help="output format")
    p.add_argument("--config", default=None, help="key = value file with the flags above")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--seed", type=int, default=None, help="base seed")
    p.set_defaults(func=cmd_bench_table, subparser=p)

    p = add("bench-time", "time reduced vs full-space simulation")
    p.add_argument("--n", type=_int_list, default=list(range(8, 15)), help="variable counts")
    p.add_argument("--m-ratio", type=float, default=4.0, help="clauses per variable")
    p.add_argument("--k-ratio", type=float, default=0.35, help="constraint prefix fraction")
    p.add_argument("--rounding", choices=("floor", "nearest"), default="floor",
                   help="rounding of k*m")
    p.add_argument("--schedule", default="10:10,10:10,10:10,10:10,10:10",
                   help="stages 'k1:l1,...'")
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA, help="time step")
    p.add_argument("--repeats", type=int, default=3, help="timed repeats (minimum reported)")
    p.add_argument("--full-max-n", type=int, default=14, help="largest n for the full run")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--seed", type=int, default=None, help="base seed")
    p.set_defaults(func=cmd_bench_time)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ZenoError, OSError) as e:
        print(f"zenoqaoa: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
