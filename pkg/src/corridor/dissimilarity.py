"""Projected area difference between paths and the path-set acceptance rules.

Two corridors are compared by projecting both onto the x-y plane, reducing
each to one representative lateral offset per x grid column (the mean of its
y values there, so backtracking paths are still handled in linear time), and
integrating the absolute offset gap column by column.  The result is reported
as a percentage of a normalizing rectangle: map width times the straight-line
distance between the endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .search import Path


@dataclass(frozen=True)
class AreaConfig:
    """Normalization constants for the area metric (all lengths in meters)."""

    min_diff: float
    map_width: float
    endpoint_distance: float
    dxy: float = 10.0

    def __post_init__(self):
        if self.min_diff < 0:
            raise ValueError("min_diff must be non-negative")
        if self.map_width <= 0 or self.endpoint_distance <= 0 or self.dxy <= 0:
            raise ValueError("map_width, endpoint_distance and dxy must be positive")


def _profile(path: Path) -> tuple[int, int, dict[int, float]]:
    # One pass: mean y (grid units) of the path's vertices in each x column.
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    for vtx in path.vertices:
        sums[vtx.x] = sums.get(vtx.x, 0.0) + vtx.y
        counts[vtx.x] = counts.get(vtx.x, 0) + 1
    means = {x: sums[x] / counts[x] for x in sums}
    return min(means), max(means), means


def area_diff_with_ops(p: Path, q: Path, cfg: AreaConfig) -> tuple[float, int]:
    """Area difference percent plus the number of elementary steps performed
    (used to verify the linear-time behavior of the metric)."""
    if not p.vertices or not q.vertices:
        raise ValueError("paths must be non-empty")
    ps, pe = p.vertices[0], p.vertices[-1]
    qs, qe = q.vertices[0], q.vertices[-1]
    if (ps.x, ps.y) != (qs.x, qs.y) or (pe.x, pe.y) != (qe.x, qe.y):
        raise ValueError("endpoint mismatch: paths must share source and destination")
    ops = 0
    lo_p, hi_p, mp = _profile(p)
    ops += len(p.vertices)
    lo_q, hi_q, mq = _profile(q)
    ops += len(q.vertices)
    lo = min(lo_p, lo_q)
    hi = max(hi_p, hi_q)
    area_cells = 0.0
    for x in range(lo, hi + 1):
        yp = mp.get(x)
        if yp is None:
            yp = mp[lo_p] if x < lo_p else mp[hi_p]
        yq = mq.get(x)
        if yq is None:
            yq = mq[lo_q] if x < lo_q else mq[hi_q]
        area_cells += abs(yp - yq)
        ops += 1
    area_m2 = area_cells * cfg.dxy * cfg.dxy
    percent = 100.0 * area_m2 / (cfg.map_width * cfg.endpoint_distance)
    return percent, ops


def area_diff(p: Path, q: Path, cfg: AreaConfig) -> float:
    """Symmetric percentage area difference between two paths (O(L))."""
    return area_diff_with_ops(p, q, cfg)[0]


class Outcome(Enum):
    ADD = "add"
    REPLACE = "replace"
    REJECT = "reject"


@dataclass(frozen=True)
class Decision:
    outcome: Outcome
    index: Optional[int] = None


def accept(
    candidate: Path,
    accepted: Sequence[Path],
    cfg: AreaConfig,
    k: int,
    max_diff: float,
    opt_cost: float,
) -> Decision:
    """Decide a candidate's fate against a pairwise-dissimilar accepted set.

    Too expensive (beyond ``max_diff`` percent of ``opt_cost``) is rejected
    outright.  Dissimilar to everything: added while there is room, otherwise
    it replaces the most expensive member if cheaper.  Similar to exactly one
    member: replaces it if cheaper.  Similar to two or more: rejected, since
    no single replacement could restore pairwise dissimilarity.
    """
    if candidate.total_cost > (1.0 + max_diff / 100.0) * opt_cost * (1.0 + 1e-12):
        return Decision(Outcome.REJECT)
    similar: list[int] = []
    for i, other in enumerate(accepted):
        if area_diff(candidate, other, cfg) < cfg.min_diff:
            similar.append(i)
    if not similar:
        if len(accepted) < k:
            return Decision(Outcome.ADD)
        worst = max(range(len(accepted)), key=lambda i: (accepted[i].total_cost, i))
        if candidate.total_cost < accepted[worst].total_cost:
            return Decision(Outcome.REPLACE, worst)
        return Decision(Outcome.REJECT)
    if len(similar) == 1:
        i = similar[0]
        if candidate.total_cost < accepted[i].total_cost:
            return Decision(Outcome.REPLACE, i)
    return Decision(Outcome.REJECT)


def apply_decision(candidate: Path, accepted: list[Path], decision: Decision) -> bool:
    """Mutate ``accepted`` per the decision; True when the set changed."""
    if decision.outcome is Outcome.ADD:
        accepted.append(candidate)
        return True
    if decision.outcome is Outcome.REPLACE:
        accepted[decision.index] = candidate
        return True
    return False


def pairwise_areas(paths: Sequence[Path], cfg: AreaConfig) -> list[list[float]]:
    """Full symmetric matrix of area differences (diagonal zero)."""
    n = len(paths)
    matrix = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a = area_diff(paths[i], paths[j], cfg)
            matrix[i][j] = a
            matrix[j][i] = a
    return matrix


def assert_pairwise_dissimilar(paths: Sequence[Path], cfg: AreaConfig) -> None:
    """Invariant check used after every accepted-set mutation."""
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            a = area_diff(paths[i], paths[j], cfg)
            assert a >= cfg.min_diff - 1e-9, (
                f"accepted paths {i} and {j} are only {a:.3f}% apart (min {cfg.min_diff}%)"
            )
