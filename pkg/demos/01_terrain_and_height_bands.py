"""Terrain grids and vertical search bands.

Builds a synthetic terrain, classifies its steepness mix, round-trips it
through the grid file format, and compares the two height restrictions that
prune the vertical search space.
"""

import os
import tempfile

import numpy as np

from corridor import (
    classify,
    expanding_height_mask,
    graph_stats,
    load_grid,
    max_grade,
    save_grid,
    simple_height_mask,
    synth_terrain,
)

# A 40 x 20 map with ~25 m of relief: enough to mix all three terrain classes.
grid = synth_terrain(seed=7, nx=40, ny=20, relief=25.0)
breakdown = classify(grid)
print(f"terrain 40x20, relief 25 m, {grid.n_levels} vertical levels")
print(f"class mix: A={100 * breakdown.fracA:.0f}% "
      f"B={100 * breakdown.fracB:.0f}% C={100 * breakdown.fracC:.0f}%")
print(f"steepest grade at map center: {max_grade(grid, 20, 10):.3f}")

# The file format round-trips bit-exactly.
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "demo.grid")
    save_grid(grid, path)
    again = load_grid(path)
    assert np.array_equal(again.z, grid.z)
    print(f"grid file round-trip: OK ({os.path.getsize(path)} bytes)")

# Height restrictions: a fixed band around the ground versus the
# rule-expanded variant that opens up near steep steps and blocked lines.
hr = simple_height_mask(grid, hm=1.0, r=3)
ehr = expanding_height_mask(grid, hi=0.5, max_grade=0.10, src=(0, 10), dst=(39, 10))

full = graph_stats(grid)
for name, mask in (("simple (hm=1, r=3)", hr), ("expanding (hi=0.5)", ehr)):
    stats = graph_stats(grid, mask)
    print(f"{name:22s} keeps {stats.vertexCount:7d} of {full.vertexCount} "
          f"augmented vertices ({100 * stats.vertexCount / full.vertexCount:.0f}%)")
