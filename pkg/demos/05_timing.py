"""
Cost of the reduced simulation
==============================

At a fixed number of unitary applications the reduced run costs O(d^2)
per step, while the full run grows with 2^n. We time both and fit a
log-log slope of reduced run time against d.

At k = 0.35m the feasible set is still large, so the reduced run only pays
off once d^2 drops well below n 2^n. Tighter constraints shrink d fast.
"""

from zenoqaoa import Schedule
from zenoqaoa.bench import export_timing, loglog_slope, run_timing

schedule = Schedule(((10, 10),) * 5, delta=0.1)
rows = run_timing(range(8, 15), k_ratio=0.35, schedule=schedule, repeats=3)
print(export_timing(rows, "csv"))

slope = loglog_slope([r.d for r in rows], [r.reduced_run_time for r in rows])
print(f"reduced run time ~ d^{slope:.2f}")
full_slope = loglog_slope([2**r.n for r in rows], [r.full_run_time for r in rows])
print(f"full run time ~ (2^n)^{full_slope:.2f}")
for r in rows:
    print(f"n={r.n:2d} d={r.d:5d} speedup {r.full_run_time / (r.build_time + r.reduced_run_time):7.1f}x")

# A tighter constraint on a bigger instance shows the gap clearly.
tight = run_timing([15], k_ratio=0.75, schedule=schedule, repeats=1, full_max_n=15)[0]
print(f"n=15 d={tight.d}: full {tight.full_run_time:.3f}s, "
      f"reduced {tight.build_time + tight.reduced_run_time:.4f}s")
