"""A desk-scale benchmark matrix and its performance profile.

Pairs a handful of synthetic maps with several solver configurations, runs
every cell, and emits plot-ready CSVs plus the per-map terrain table.  The
profile reports, per solver, the fraction of maps solved within a factor tau
of the per-map fastest solver (by expansion count, which is deterministic).
"""

import os

from corridor.bench import (
    make_solver,
    profile,
    profile_to_csv,
    records_to_csv,
    run_matrix,
    synth_map_set,
    terrain_table,
)
from corridor.cost import CostModel
from corridor.multipath import MultipathConfig

# Long, narrow maps: side corridors 12% of the width apart stay inside the
# 10% cost headroom, so most cells are solvable and the profile is dense.
maps = synth_map_set(seed=100, specs=[(40, 14, 3.0), (40, 10, 4.0), (48, 12, 5.0)])
solver_specs = ["bds", "bds+astar", "bds+astar+hr", "hybrid+astar+hr", "ipa+astar+hr"]
solvers = [make_solver(s) for s in solver_specs]

print("terrain table:")
print(f"{'Dim x':>6s} {'Dim y':>6s} {'Dim z':>6s} {'A':>4s} {'B':>4s} {'C':>4s}")
for row in terrain_table(maps):
    print(f"{row['Dim x']:6d} {row['Dim y']:6d} {row['Dim z']:6d} "
          f"{row['A']:3d}% {row['B']:3d}% {row['C']:3d}%")

print("\nrunning matrix (this takes a few minutes)...")
records = run_matrix(maps, solvers, CostModel(), MultipathConfig(timeout=120))
for rec in records:
    state = "solved" if rec.solved else "------"
    print(f"  {rec.map_id:22s} {rec.solver:16s} {state}  "
          f"expansions={rec.expansions:8d} wall={rec.wall_time:6.1f}s")

out = "demo_out"
os.makedirs(out, exist_ok=True)
records_to_csv(records, os.path.join(out, "records.csv"))
prof = profile(records, solver_specs)
profile_to_csv(prof, os.path.join(out, "profile.csv"))
print(f"\nwrote {out}/records.csv and {out}/profile.csv")
for solver, points in sorted(prof.points.items()):
    trace = " ".join(f"({t:.2f}, {f:.2f})" for t, f in points[:4])
    print(f"  {solver:16s} {trace}")
