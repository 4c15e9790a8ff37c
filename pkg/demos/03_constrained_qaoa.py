"""
Constrained QAOA on a random 3-SAT instance
===========================================

Half of the clauses act as hard constraints, the full formula is the
objective. We evaluate a hand-written schedule, then let a small random
search look for a better one, and finally sample measurement outcomes.
"""

from zenoqaoa import Schedule, random_3sat, random_search, run_full, run_reduced, sample
from zenoqaoa.cnf import prefix_length

f = random_3sat(12, 48, seed=5)
k = prefix_length(0.5, f.m)

# Stages read "mixer power : problem power"; the problem unitary acts first.
schedule = Schedule.parse("2:3,4:2,3:3", delta=0.2)
res = run_reduced(f, k, schedule)
print(f"d = {res.d}, nu = {res.nu}")
print(f"mean satisfied clauses inside the constraint: {res.expectation_constrained:.4f}")
print(f"mean over the whole state (residual included): {res.expectation_full:.4f}")

# For comparison, the same schedule without any constraint.
free = run_full(f, schedule)
print(f"unconstrained run: {free.expectation_full:.4f}")

best = random_search(f, k, trials=50, seed=0)
print(f"best of 50 random schedules: {best.expectation_constrained:.4f} "
      f"with {best.schedule} at delta={best.schedule.delta:.3f}")

# Measurement samples include outcomes from the residual as well.
counts = sample(best, 1000, seed=1)
top = sorted(counts.items(), key=lambda kv: -kv[1])[:5]
print("most frequent outcomes:", [(format(x, "012b"), c) for x, c in top])
