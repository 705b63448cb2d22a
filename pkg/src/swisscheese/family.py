"""Finite directed (laminar) ball families.

A family lives over the universe ``{0, ..., universe_size - 1}``.  Every pair
of balls is nested or disjoint, the whole universe is itself a ball, and no
two balls share an extension.  Extensions are kept both as frozensets (the
public view) and as integer bitmasks (what the searches actually use).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Sequence

from swisscheese.errors import FamilyError

if TYPE_CHECKING:
    from swisscheese.forest import Forest

MAX_DYADIC_DEPTH = 6


def points_to_mask(points: Iterable[int]) -> int:
    mask = 0
    for p in points:
        mask |= 1 << p
    return mask


def mask_to_points(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def lowest_point(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Ball:
    id: str
    points: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset(self.points))

    @cached_property
    def mask(self) -> int:
        return points_to_mask(self.points)


@dataclass
class ValidationReport:
    crossing: list[tuple[str, str]] = field(default_factory=list)
    duplicate_extensions: list[tuple[str, str]] = field(default_factory=list)
    duplicate_ids: list[str] = field(default_factory=list)
    empty_balls: list[str] = field(default_factory=list)
    out_of_range: list[str] = field(default_factory=list)
    missing_universe: bool = False

    @property
    def ok(self) -> bool:
        return not (
            self.crossing
            or self.duplicate_extensions
            or self.duplicate_ids
            or self.empty_balls
            or self.out_of_range
            or self.missing_universe
        )

    def violations(self) -> list[dict]:
        out: list[dict] = []
        for a, b in self.crossing:
            out.append({"kind": "crossing", "balls": [a, b]})
        for a, b in self.duplicate_extensions:
            out.append({"kind": "duplicate_extension", "balls": [a, b]})
        for a in self.duplicate_ids:
            out.append({"kind": "duplicate_id", "balls": [a]})
        for a in self.empty_balls:
            out.append({"kind": "empty_ball", "balls": [a]})
        for a in self.out_of_range:
            out.append({"kind": "point_out_of_range", "balls": [a]})
        if self.missing_universe:
            out.append({"kind": "missing_universe", "balls": []})
        return out

    def messages(self) -> list[str]:
        return [f"{v['kind']}: {', '.join(v['balls'])}".rstrip(": ") for v in self.violations()]

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": self.violations()}


def validate_directed(candidate_balls: Sequence[Ball], universe_size: int) -> ValidationReport:
    """Check every family invariant; violations are reported, never raised."""
    report = ValidationReport()
    seen_ids: set[str] = set()
    for b in candidate_balls:
        if b.id in seen_ids and b.id not in report.duplicate_ids:
            report.duplicate_ids.append(b.id)
        seen_ids.add(b.id)
        if not b.points:
            report.empty_balls.append(b.id)
        if any(p < 0 or p >= universe_size for p in b.points):
            report.out_of_range.append(b.id)

    masks = [points_to_mask(p for p in b.points if 0 <= p < universe_size) for b in candidate_balls]
    for (a, ma), (b, mb) in itertools.combinations(zip(candidate_balls, masks), 2):
        inter = ma & mb
        if ma == mb:
            report.duplicate_extensions.append((a.id, b.id))
        elif inter and inter != ma and inter != mb:
            report.crossing.append((a.id, b.id))

    full = (1 << universe_size) - 1 if universe_size > 0 else 0
    if universe_size <= 0 or full not in masks:
        report.missing_universe = True
    return report


@dataclass(frozen=True)
class BallFamily:
    universe_size: int
    balls: tuple[Ball, ...]

    def __post_init__(self):
        object.__setattr__(self, "balls", tuple(self.balls))
        report = validate_directed(self.balls, self.universe_size)
        if not report.ok:
            raise FamilyError(report)

    @classmethod
    def from_points(cls, universe_size: int, balls: dict[str, Iterable[int]]) -> BallFamily:
        return cls(universe_size, tuple(Ball(k, frozenset(v)) for k, v in balls.items()))

    @cached_property
    def masks(self) -> dict[str, int]:
        return {b.id: b.mask for b in self.balls}

    @cached_property
    def universe_mask(self) -> int:
        return (1 << self.universe_size) - 1

    @cached_property
    def universe_id(self) -> str:
        full = self.universe_mask
        return next(b.id for b in self.balls if b.mask == full)

    @cached_property
    def ids(self) -> tuple[str, ...]:
        """Ball ids in canonical order: (lowest point, size, id)."""
        return tuple(sorted(self.masks, key=self.sort_key))

    def sort_key(self, ball_id: str) -> tuple[int, int, str]:
        m = self.masks[ball_id]
        return (lowest_point(m), m.bit_count(), ball_id)

    def points(self, ball_id: str) -> frozenset[int]:
        return mask_to_points(self.masks[ball_id])

    def __contains__(self, ball_id: str) -> bool:
        return ball_id in self.masks

    def __len__(self) -> int:
        return len(self.balls)

    @cached_property
    def top_down(self) -> tuple[str, ...]:
        """Ball ids with every ball before its sub-balls: (-size, lowest point, id)."""
        return tuple(sorted(self.masks, key=lambda b: (-self.masks[b].bit_count(),) + self.sort_key(b)))

    @cached_property
    def parents(self) -> dict[str, str | None]:
        masks = self.masks
        out: dict[str, str | None] = {}
        for b, mb in masks.items():
            best = None
            for c, mc in masks.items():
                if mc != mb and mb & mc == mb:
                    if best is None or mc.bit_count() < masks[best].bit_count():
                        best = c
            out[b] = best
        return out

    @cached_property
    def children(self) -> dict[str, tuple[str, ...]]:
        kids: dict[str, list[str]] = {b: [] for b in self.masks}
        for b, p in self.parents.items():
            if p is not None:
                kids[p].append(b)
        return {b: tuple(sorted(v, key=self.sort_key)) for b, v in kids.items()}

    @cached_property
    def atoms(self) -> dict[str, int]:
        """Points whose smallest enclosing ball is the key; may be empty when packed."""
        out = {}
        for b, m in self.masks.items():
            for c in self.children[b]:
                m &= ~self.masks[c]
            out[b] = m
        return out


def parent_forest(family: BallFamily) -> Forest:
    from swisscheese.forest import Forest

    return Forest(family, frozenset(family.masks))


def is_unpackable(family: BallFamily) -> tuple[bool, str | None]:
    """(False, witness) iff some ball is exactly the union of its maximal proper sub-balls."""
    for b in family.top_down:
        kids = family.children[b]
        if not kids:
            continue
        union = 0
        for c in kids:
            union |= family.masks[c]
        if union == family.masks[b]:
            return False, b
    return True, None


def covering_property(family: BallFamily) -> tuple[bool, str | None]:
    """Check that no ball is covered by balls meeting it without containing it.

    Written directly against extensions so it stays independent of
    ``is_unpackable``'s use of the parent tree.
    """
    masks = family.masks
    for a in family.top_down:
        ma = masks[a]
        cover = 0
        for b, mb in masks.items():
            if mb & ma and mb & ma != ma:
                cover |= mb
        if cover & ma == ma:
            return False, a
    return True, None


class SplitMix64:
    """Portable 64-bit SplitMix generator; identical streams on every platform."""

    GAMMA = 0x9E3779B97F4A7C15
    MIX1 = 0xBF58476D1CE4E5B9
    MIX2 = 0x94D049BB133111EB
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * self.MIX1) & self.MASK
        z = ((z ^ (z >> 27)) * self.MIX2) & self.MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % n


def gen_dyadic(depth: int) -> BallFamily:
    """All dyadic intervals of length >= 2 over 2**depth points.

    The universe is ``U``; other balls are named by their left/right path
    from the root, so depth 3 gives U, L, R, LL, LR, RL, RR.
    """
    if not 1 <= depth <= MAX_DYADIC_DEPTH:
        raise ValueError(f"depth must be in 1..{MAX_DYADIC_DEPTH}, got {depth}")
    balls = []
    for level in range(depth):
        length = 2 ** (depth - level)
        for k, path in enumerate(itertools.product("LR", repeat=level)):
            name = "".join(path) or "U"
            balls.append(Ball(name, frozenset(range(k * length, (k + 1) * length))))
    return BallFamily(2**depth, tuple(balls))


def _random_tree(rng: SplitMix64, n: int) -> list[int | None]:
    parent: list[int | None] = [None]
    for i in range(1, n):
        parent.append(rng.below(i))
    return parent


def _materialize(parent: list[int | None], own: list[int]) -> BallFamily:
    # post-order numbering: every ball becomes a contiguous run of points
    n = len(parent)
    kids: list[list[int]] = [[] for _ in range(n)]
    for i in range(1, n):
        kids[parent[i]].append(i)
    ext: list[range] = [range(0)] * n
    counter = 0

    def visit(v: int) -> None:
        nonlocal counter
        start = counter
        for c in kids[v]:
            visit(c)
        counter += own[v]
        ext[v] = range(start, counter)

    visit(0)
    names = ["U"] + [f"b{i}" for i in range(1, n)]
    return BallFamily(counter, tuple(Ball(names[i], frozenset(ext[i])) for i in range(n)))


def gen_crumb_laminar(seed: int, n_points: int, n_balls: int) -> BallFamily:
    """Random laminar family in which every ball keeps a point outside its children."""
    if not n_points >= n_balls >= 1:
        raise ValueError("need n_points >= n_balls >= 1")
    rng = SplitMix64(seed)
    parent = _random_tree(rng, n_balls)
    own = [1] * n_balls
    for _ in range(n_points - n_balls):
        own[rng.below(n_balls)] += 1
    return _materialize(parent, own)


def gen_laminar(seed: int, n_points: int, n_balls: int) -> BallFamily:
    """Random laminar family that may or may not be packable.

    Leaves and single-child balls need a point of their own; a ball with two
    or more children keeps one only on a coin flip, which is what makes
    packing possible.
    """
    if not n_points >= n_balls >= 1:
        raise ValueError("need n_points >= n_balls >= 1")
    rng = SplitMix64(seed)
    parent = _random_tree(rng, n_balls)
    n_kids = [0] * n_balls
    for p in parent[1:]:
        n_kids[p] += 1
    own = [1 if n_kids[v] < 2 or rng.below(2) else 0 for v in range(n_balls)]
    holders = [v for v in range(n_balls) if own[v]]
    for _ in range(n_points - sum(own)):
        own[holders[rng.below(len(holders))]] += 1
    return _materialize(parent, own)


def family_to_json(family: BallFamily) -> dict:
    return {
        "universe_size": family.universe_size,
        "balls": [{"id": b, "points": sorted(family.points(b))} for b in family.ids],
    }


def balls_from_json(data: dict) -> tuple[int, list[Ball]]:
    """Parse without validating; raises ValueError/KeyError/TypeError on malformed input."""
    size = data["universe_size"]
    if not isinstance(size, int) or isinstance(size, bool):
        raise ValueError("universe_size must be an integer")
    balls = []
    for entry in data["balls"]:
        ident = entry["id"]
        pts = entry["points"]
        if not isinstance(ident, str) or not all(isinstance(p, int) for p in pts):
            raise ValueError(f"malformed ball entry {entry!r}")
        balls.append(Ball(ident, frozenset(pts)))
    return size, balls


def family_from_json(data: dict) -> BallFamily:
    size, balls = balls_from_json(data)
    return BallFamily(size, tuple(balls))
