"""
How much smaller does the search space get?
===========================================

For random 3-SAT with m = 4n and m = 5n clauses, constraining on the
first 70%, 80% or 90% of clauses leaves only a handful of feasible
assignments. This script builds the mean-dimension tables for both
benchmarks with a reduced instance count so it finishes quickly.
"""

from zenoqaoa.bench import TableConfig, export_table, paper_value, run_table

config = TableConfig(n_range=(10, 11, 12), columns=(4.0, 5.0), instances=30, seed=0)
rows = run_table(config, "random3sat")
print(export_table(rows, "markdown"))

# Side by side with the published means.
for r in rows[:6]:
    print(f"n={r.n} m={r.column:g}n k={r.k_ratio:g}m: {r.mean_reduced_dim:6.2f} "
          f"(published {paper_value(r):6.2f})")

# The agent-coordination benchmark: NAE constraints on random graphs.
config = TableConfig(n_range=(10, 12), columns=(0.3, 0.4), instances=30, seed=0)
print(export_table(run_table(config, "coordination"), "markdown"))
