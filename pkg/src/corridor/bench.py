"""Batch experiment driver: algorithm-by-map matrices and performance profiles.

A matrix run pairs every map with every solver configuration, records per-run
outcomes, and never aborts on a single failure.  Profiles report, for each
solver, the fraction of problems solved within a factor tau of the fastest
solver on each problem; problems no solver could handle are dropped from the
denominator.  The default comparison metric is the expansion count, which is
deterministic across runs; wall time is recorded as well and can be selected
for profile computation.

Matrix cells are independent; runs execute sequentially and the record list
is keyed and sorted by (map, config), so merging results from elsewhere stays
deterministic.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cost import CostModel
from .graph import expanding_height_mask, simple_height_mask
from .multipath import MultipathConfig, MultipathResult, solve
from .terrain import TerrainGrid, classify, synth_terrain


@dataclass(frozen=True)
class BenchMap:
    map_id: str
    grid: TerrainGrid
    src: tuple[int, int]
    dst: tuple[int, int]


@dataclass(frozen=True)
class BenchSolver:
    """One matrix column: an algorithm plus optional A* and height-band flags."""

    name: str
    algorithm: str
    use_astar: bool = False
    mask: str = "none"          # none | hr | ehr
    r: int = 3
    hm: float = 1.0
    hi_band: float = 0.5

    def __post_init__(self):
        if self.mask not in ("none", "hr", "ehr"):
            raise ValueError(f"unknown mask kind {self.mask!r}")


@dataclass
class ExperimentRecord:
    map_id: str
    dim_x: int
    dim_y: int
    dim_z: int
    frac_a: float
    frac_b: float
    frac_c: float
    solver: str
    algorithm: str
    astar: bool
    hr: bool
    ehr: bool
    wall_time: float
    expansions: int
    peak_labels: int
    solved: bool
    path_costs: tuple[float, ...]
    pairwise_areas: tuple[float, ...]
    error: str = ""


@dataclass
class PerformanceProfile:
    """Per-solver cumulative step functions of solve-ratio versus tau."""

    points: dict[str, list[tuple[float, float]]]

    def value_at(self, solver: str, tau: float) -> float:
        frac = 0.0
        for t, f in self.points[solver]:
            if t <= tau:
                frac = f
            else:
                break
        return frac


def make_solver(spec: str, r: int = 3, hm: float = 1.0, hi_band: float = 0.5) -> BenchSolver:
    """Parse a solver spec like ``bds+astar+hr`` into a BenchSolver."""
    parts = spec.split("+")
    algorithm = parts[0]
    use_astar = "astar" in parts[1:]
    mask = "none"
    if "hr" in parts[1:]:
        mask = "hr"
    if "ehr" in parts[1:]:
        mask = "ehr"
    return BenchSolver(name=spec, algorithm=algorithm, use_astar=use_astar,
                       mask=mask, r=r, hm=hm, hi_band=hi_band)


def _upper_triangle(matrix: list[list[float]]) -> tuple[float, ...]:
    n = len(matrix)
    return tuple(matrix[i][j] for i in range(n) for j in range(i + 1, n))


def run_cell(
    bmap: BenchMap,
    solver: BenchSolver,
    model: CostModel,
    base_cfg: MultipathConfig,
) -> ExperimentRecord:
    """Run one (map, solver) cell; mask construction counts toward wall time."""
    grid = bmap.grid
    breakdown = classify(grid)
    cfg = MultipathConfig(
        k=base_cfg.k,
        min_diff=base_cfg.min_diff,
        max_diff=base_cfg.max_diff,
        algorithm=solver.algorithm,
        w=base_cfg.w,
        penalty_width=base_cfg.penalty_width,
        penalty_max=base_cfg.penalty_max,
        kappa=base_cfg.kappa,
        ka=base_cfg.ka,
        kb=base_cfg.kb,
        timeout=base_cfg.timeout,
        use_astar=solver.use_astar,
        label_cap=base_cfg.label_cap,
    )
    t0 = time.perf_counter()
    error = ""
    result: Optional[MultipathResult] = None
    try:
        if solver.mask == "hr":
            mask = simple_height_mask(grid, solver.hm, solver.r)
        elif solver.mask == "ehr":
            mask = expanding_height_mask(grid, solver.hi_band, model.max_grade,
                                         src=bmap.src, dst=bmap.dst)
        else:
            mask = None
        result = solve(grid, model, mask, bmap.src, bmap.dst, cfg)
    except Exception as exc:  # record, never abort the matrix
        error = f"{type(exc).__name__}: {exc}"
    wall = time.perf_counter() - t0
    if result is None:
        return ExperimentRecord(
            map_id=bmap.map_id, dim_x=grid.nx, dim_y=grid.ny, dim_z=grid.n_levels,
            frac_a=breakdown.fracA, frac_b=breakdown.fracB, frac_c=breakdown.fracC,
            solver=solver.name, algorithm=solver.algorithm,
            astar=solver.use_astar, hr=solver.mask == "hr", ehr=solver.mask == "ehr",
            wall_time=wall, expansions=0, peak_labels=0, solved=False,
            path_costs=(), pairwise_areas=(), error=error,
        )
    return ExperimentRecord(
        map_id=bmap.map_id, dim_x=grid.nx, dim_y=grid.ny, dim_z=grid.n_levels,
        frac_a=breakdown.fracA, frac_b=breakdown.fracB, frac_c=breakdown.fracC,
        solver=solver.name, algorithm=solver.algorithm,
        astar=solver.use_astar, hr=solver.mask == "hr", ehr=solver.mask == "ehr",
        wall_time=wall, expansions=result.expansions, peak_labels=result.peak_labels,
        solved=result.solved,
        path_costs=tuple(p.total_cost for p in result.paths),
        pairwise_areas=_upper_triangle(result.area_matrix),
        error=error,
    )


def run_matrix(
    maps: Sequence[BenchMap],
    solvers: Sequence[BenchSolver],
    model: Optional[CostModel] = None,
    base_cfg: Optional[MultipathConfig] = None,
) -> list[ExperimentRecord]:
    """One record per (map, solver) pair, sorted by that key."""
    model = model if model is not None else CostModel()
    base_cfg = base_cfg if base_cfg is not None else MultipathConfig()
    records = []
    for bmap in maps:
        for solver in solvers:
            records.append(run_cell(bmap, solver, model, base_cfg))
    records.sort(key=lambda r: (r.map_id, r.solver))
    return records


def profile(
    records: Sequence[ExperimentRecord],
    solvers: Sequence[str],
    metric: str = "expansions",
) -> PerformanceProfile:
    """Cumulative solve-fraction step functions over per-problem best ratios.

    Problems unsolved by every listed solver are excluded from the
    denominator; a solver's unsolved problems contribute an infinite ratio
    and therefore never appear among its breakpoints.
    """
    if not records:
        raise ValueError("empty record set")
    if metric not in ("expansions", "wall_time"):
        raise ValueError(f"unknown metric {metric!r}")
    by_problem: dict[str, dict[str, ExperimentRecord]] = {}
    for rec in records:
        if rec.solver in solvers:
            by_problem.setdefault(rec.map_id, {})[rec.solver] = rec
    included = []
    for map_id, cells in sorted(by_problem.items()):
        if any(rec.solved for rec in cells.values()):
            included.append(map_id)
    n = len(included)
    points: dict[str, list[tuple[float, float]]] = {}
    for solver in solvers:
        ratios = []
        for map_id in included:
            cells = by_problem[map_id]
            best = min(
                getattr(rec, metric)
                for rec in cells.values()
                if rec.solved
            )
            rec = cells.get(solver)
            if rec is not None and rec.solved:
                t = getattr(rec, metric)
                ratios.append(t / best if best > 0 else 1.0)
        ratios.sort()
        pts = []
        solved_count = 0
        for r in ratios:
            solved_count += 1
            if pts and pts[-1][0] == r:
                pts[-1] = (r, solved_count / n)
            else:
                pts.append((r, solved_count / n))
        points[solver] = pts
    return PerformanceProfile(points=points)


# ---------------------------------------------------------------------------
# CSV serialization (plot-ready; parsed back for round-trip checks)
# ---------------------------------------------------------------------------

_COLUMNS = [
    "map_id", "dim_x", "dim_y", "dim_z", "frac_a", "frac_b", "frac_c",
    "solver", "algorithm", "astar", "hr", "ehr", "wall_time",
    "expansions", "peak_labels", "solved", "path_costs", "pairwise_areas", "error",
]


def records_to_csv(records: Sequence[ExperimentRecord], path, include_wall_time: bool = True) -> None:
    cols = [c for c in _COLUMNS if include_wall_time or c != "wall_time"]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for rec in records:
            row = []
            for c in cols:
                v = getattr(rec, c)
                if isinstance(v, tuple):
                    row.append(";".join(repr(x) for x in v))
                elif isinstance(v, bool):
                    row.append("1" if v else "0")
                elif isinstance(v, float):
                    row.append(repr(v))
                else:
                    row.append(str(v))
            fh.write(",".join(row) + "\n")


def records_from_csv(path) -> list[ExperimentRecord]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    header = lines[0].split(",")
    records = []
    for ln in lines[1:]:
        raw = dict(zip(header, ln.split(",")))
        records.append(ExperimentRecord(
            map_id=raw["map_id"],
            dim_x=int(raw["dim_x"]), dim_y=int(raw["dim_y"]), dim_z=int(raw["dim_z"]),
            frac_a=float(raw["frac_a"]), frac_b=float(raw["frac_b"]), frac_c=float(raw["frac_c"]),
            solver=raw["solver"], algorithm=raw["algorithm"],
            astar=raw["astar"] == "1", hr=raw["hr"] == "1", ehr=raw["ehr"] == "1",
            wall_time=float(raw.get("wall_time", 0.0) or 0.0),
            expansions=int(raw["expansions"]), peak_labels=int(raw["peak_labels"]),
            solved=raw["solved"] == "1",
            path_costs=tuple(float(x) for x in raw["path_costs"].split(";") if x),
            pairwise_areas=tuple(float(x) for x in raw["pairwise_areas"].split(";") if x),
            error=raw.get("error", ""),
        ))
    return records


def profile_to_csv(prof: PerformanceProfile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("solver,tau,fraction\n")
        for solver in sorted(prof.points):
            for tau, frac in prof.points[solver]:
                fh.write(f"{solver},{tau!r},{frac!r}\n")


def terrain_table(maps: Sequence[BenchMap]) -> list[dict]:
    """Per-map dimension and terrain-class rows (Dim x, Dim y, Dim z, A, B, C)."""
    rows = []
    for bmap in maps:
        b = classify(bmap.grid)
        rows.append({
            "Dim x": bmap.grid.nx,
            "Dim y": bmap.grid.ny,
            "Dim z": bmap.grid.n_levels,
            "A": round(100.0 * b.fracA),
            "B": round(100.0 * b.fracB),
            "C": round(100.0 * b.fracC),
        })
    return rows


def synth_map_set(seed: int, specs: Sequence[tuple[int, int, float]]) -> list[BenchMap]:
    """Deterministic synthetic maps; endpoints at mid-height of the short edges."""
    maps = []
    for i, (nx, ny, relief) in enumerate(specs):
        grid = synth_terrain(seed + i, nx, ny, relief)
        maps.append(BenchMap(
            map_id=f"synth-{seed + i}-{nx}x{ny}",
            grid=grid,
            src=(0, ny // 2),
            dst=(nx - 1, ny // 2),
        ))
    return maps
