"""Edge pricing (paving plus earthwork) and admissible search heuristics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .graph import AugVertex
from .terrain import TerrainGrid, ground_profile

Point3 = tuple[float, float, float]


@dataclass(frozen=True)
class CostModel:
    """Unit rates for pricing a road edge.

    ``paving_rate`` is cost per meter of road, ``cut_rate`` and ``fill_rate``
    cost per cubic meter of excavation/embankment, ``road_width`` the width
    used to turn cross-section areas into volumes, and ``max_grade`` the
    steepest permissible grade (used by the expanding height restriction).
    """

    paving_rate: float = 1.0
    cut_rate: float = 1.0
    fill_rate: float = 1.0
    road_width: float = 10.0
    max_grade: float = 0.10

    def __post_init__(self):
        if min(self.paving_rate, self.cut_rate, self.fill_rate) < 0:
            raise ValueError("rates must be non-negative")
        if self.road_width <= 0:
            raise ValueError("road width must be positive")


def edge_cost(model: CostModel, edge: tuple[Point3, Point3], grid: TerrainGrid) -> float:
    """Price a straight 3D edge: paving on its 3D length plus cut/fill volumes.

    The earthwork term integrates the signed gap between the (linear) road and
    the piecewise-linear ground profile along the edge footprint, splitting
    pieces at grade crossings; areas above ground are filled, below ground cut,
    and both are multiplied by the road width to obtain volumes.
    """
    (x0, y0, z0), (x1, y1, z1) = edge
    profile = ground_profile(grid, (x0, y0), (x1, y1))
    length_2d = profile[-1][0]
    length_3d = math.hypot(length_2d, z1 - z0)
    cut_area = 0.0
    fill_area = 0.0
    if length_2d > 0.0:
        for (sa, ga), (sb, gb) in zip(profile, profile[1:]):
            ra = z0 + (z1 - z0) * (sa / length_2d)
            rb = z0 + (z1 - z0) * (sb / length_2d)
            da = ra - ga
            db = rb - gb
            width = sb - sa
            if da * db >= 0.0:
                area = 0.5 * (da + db) * width
                if area >= 0.0:
                    fill_area += area
                else:
                    cut_area -= area
            else:
                s_cross = width * da / (da - db)
                a0 = 0.5 * da * s_cross
                a1 = 0.5 * db * (width - s_cross)
                for a in (a0, a1):
                    if a >= 0.0:
                        fill_area += a
                    else:
                        cut_area -= a
    return (
        model.paving_rate * length_3d
        + model.cut_rate * cut_area * model.road_width
        + model.fill_rate * fill_area * model.road_width
    )


class EdgeCoster:
    """Memoized edge pricing between augmented states of one grid/model pair.

    Unit grid moves dominate the hot search loops, so the midpoint ground
    elevation is computed in closed form (orthogonal: mean of the endpoints,
    diagonal: mean of the 4 cell corners — both exactly the bilinear value).
    """

    def __init__(self, grid: TerrainGrid, model: CostModel):
        self.grid = grid
        self.model = model
        self._z = [[float(v) for v in row] for row in grid.z]
        self._cache: dict[tuple[int, int, int, int, int, int], float] = {}

    def __call__(self, u: AugVertex, w: AugVertex) -> float:
        a = (u.x, u.y, u.z)
        b = (w.x, w.y, w.z)
        key = a + b if a <= b else b + a  # pricing is reversal-symmetric
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        c = self._compute(u.x, u.y, u.z, w.x, w.y, w.z)
        self._cache[key] = c
        return c

    def _compute(self, x0, y0, zi0, x1, y1, zi1) -> float:
        grid = self.grid
        model = self.model
        dxy = grid.dxy
        z = self._z
        g0 = z[y0][x0]
        g1 = z[y1][x1]
        dx = x1 - x0
        dy = y1 - y0
        if abs(dx) <= 1 and abs(dy) <= 1 and (dx or dy):
            if dx and dy:
                gm = 0.25 * (g0 + g1 + z[y0][x1] + z[y1][x0])
                length_2d = dxy * 1.4142135623730951
            else:
                gm = 0.5 * (g0 + g1)
                length_2d = dxy
        else:
            return edge_cost(
                model,
                ((x0 * dxy, y0 * dxy, zi0 * grid.dz), (x1 * dxy, y1 * dxy, zi1 * grid.dz)),
                grid,
            )
        r0 = zi0 * grid.dz
        r1 = zi1 * grid.dz
        rm = 0.5 * (r0 + r1)
        cut = 0.0
        fill = 0.0
        half = 0.5 * length_2d
        for da, db in ((r0 - g0, rm - gm), (rm - gm, r1 - g1)):
            if da * db >= 0.0:
                area = 0.5 * (da + db) * half
                if area >= 0.0:
                    fill += area
                else:
                    cut -= area
            else:
                s_cross = half * da / (da - db)
                a0 = 0.5 * da * s_cross
                a1 = 0.5 * db * (half - s_cross)
                if a0 >= 0.0:
                    fill += a0
                else:
                    cut -= a0
                if a1 >= 0.0:
                    fill += a1
                else:
                    cut -= a1
        length_3d = math.hypot(length_2d, r1 - r0)
        return (
            model.paving_rate * length_3d
            + model.cut_rate * cut * model.road_width
            + model.fill_rate * fill * model.road_width
        )


def astar_heuristic(model: CostModel, p: tuple[float, float], dest: tuple[float, float]) -> float:
    """Admissible remaining-cost bound: paving a straight road to ``dest``.

    Every path pays at least the paving of its planar length, which is at
    least the straight-line distance, and earthwork is non-negative.
    """
    return model.paving_rate * math.hypot(dest[0] - p[0], dest[1] - p[1])


def ikeda_potentials(
    hf: Callable[..., float],
    hb: Callable[..., float],
) -> tuple[Callable[..., float], Callable[..., float]]:
    """Average-difference potential pair for bidirectional A*.

    ``pf(u) = (hf(u) - hb(u)) / 2`` and ``pb = -pf``, so pf(u) + pb(u) is
    constant (zero) everywhere and the two reduced searches terminate on the
    plain bidirectional condition without losing optimality.
    """

    def pf(*args):
        return 0.5 * (hf(*args) - hb(*args))

    def pb(*args):
        return -pf(*args)

    return pf, pb
