"""Canonical forms cell by cell.

Intersecting every ball with a fixed cell gives another laminar family, the
trace family, whose universe is the cell.  Different balls may leave the same
trace; the trace is what gets canonicalised and the balls it came from are
kept only as provenance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from swisscheese.canonical import forest_code, minimal_representative
from swisscheese.family import Ball, BallFamily, points_to_mask
from swisscheese.forest import Forest


@dataclass(frozen=True)
class CellPartition:
    cells: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(frozenset(c) for c in self.cells))

    def problems(self, universe_size: int) -> list[str]:
        out = []
        seen: set[int] = set()
        for i, c in enumerate(self.cells):
            if not c:
                out.append(f"cell {i} is empty")
            if seen & c:
                out.append(f"cell {i} overlaps an earlier cell")
            if any(p < 0 or p >= universe_size for p in c):
                out.append(f"cell {i} has points outside the universe")
            seen |= c
        if seen != set(range(universe_size)):
            out.append("cells do not cover the universe")
        return out


@dataclass(frozen=True)
class TraceFamily:
    """A family over a cell, reindexed to local points ``0 .. len(points) - 1``.

    ``points[i]`` is the original point behind local point ``i``; ``origins``
    maps each trace ball to the sorted ids of the balls that leave that trace.
    """

    family: BallFamily
    points: tuple[int, ...]
    origins: dict[str, tuple[str, ...]]

    def localize(self, points: Iterable[int]) -> frozenset[int]:
        where = {p: i for i, p in enumerate(self.points)}
        return frozenset(where[p] for p in points if p in where)

    def globalize(self, local: Iterable[int]) -> frozenset[int]:
        return frozenset(self.points[i] for i in local)


def restrict_family(family: BallFamily, cell: Iterable[int]) -> TraceFamily:
    cell = frozenset(cell)
    if not cell:
        raise ValueError("cell must be nonempty")
    if any(p < 0 or p >= family.universe_size for p in cell):
        raise ValueError("cell must lie inside the universe")
    pts = tuple(sorted(cell))
    local = {p: i for i, p in enumerate(pts)}
    cell_mask = points_to_mask(cell)
    by_trace: dict[int, list[str]] = {}
    for b in family.ids:
        t = family.masks[b] & cell_mask
        if t:
            by_trace.setdefault(t, []).append(b)
    balls = []
    origins = {}
    for t, ids in by_trace.items():
        ids = sorted(ids)
        name = "|".join(ids)
        origins[name] = tuple(ids)
        balls.append(Ball(name, frozenset(local[p] for p in pts if t >> p & 1)))
    return TraceFamily(BallFamily(len(pts), tuple(balls)), pts, origins)


class CellForest(NamedTuple):
    cell: int
    forest: Forest
    trace: TraceFamily


def quasi_canonical(points: Iterable[int], family: BallFamily, partition: CellPartition) -> list[CellForest]:
    """Minimal trace forest representing the part of the set in each cell."""
    problems = partition.problems(family.universe_size)
    if problems:
        raise ValueError("; ".join(problems))
    x = frozenset(points)
    out = []
    for i, cell in enumerate(partition.cells):
        trace = restrict_family(family, cell)
        out.append(CellForest(i, minimal_representative(trace.localize(x & cell), trace.family), trace))
    return out


def quasi_to_json(result: list[CellForest]) -> list[dict]:
    out = []
    for cf in result:
        tf = cf.trace
        entries = [
            {
                "trace_points": sorted(tf.globalize(tf.family.points(b))),
                "origins": list(tf.origins[b]),
                "level": n,
            }
            for b, n in forest_code(cf.forest).entries
        ]
        out.append({"cell": cf.cell, "forest": entries})
    return out


def cells_from_json(data: dict) -> CellPartition:
    cells = data["cells"]
    if not isinstance(cells, list) or not all(isinstance(c, list) for c in cells):
        raise ValueError("cells must be a list of point lists")
    return CellPartition(tuple(frozenset(c) for c in cells))
