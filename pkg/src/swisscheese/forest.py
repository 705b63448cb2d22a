"""Finite forests of balls: levels, the swiss cheese operator, and the forest order.

Inside a laminar family the members strictly containing a ball form a
chain, so a member's level is simply how many other members contain it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from swisscheese.family import BallFamily, mask_to_points

LevelProfile = tuple[int, ...]


@dataclass(frozen=True)
class Forest:
    """A finite set of balls from ``family``.

    Equality and hashing look only at the member ids.
    """

    family: BallFamily = field(compare=False, repr=False)
    members: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        unknown = self.members - self.family.masks.keys()
        if unknown:
            raise KeyError(f"not balls of the family: {sorted(unknown)}")

    @classmethod
    def of(cls, family: BallFamily, members: Iterable[str]) -> Forest:
        return cls(family, frozenset(members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted_members())

    def sorted_members(self) -> list[str]:
        return sorted(self.members, key=self.family.sort_key)

    @cached_property
    def depth(self) -> dict[str, int]:
        masks = self.family.masks
        out = {}
        for b in self.members:
            mb = masks[b]
            out[b] = sum(1 for c in self.members if c != b and masks[c] & mb == mb)
        return out

    def parent(self, ball_id: str) -> str | None:
        """Smallest member strictly containing ``ball_id``, or None for a root."""
        if ball_id not in self.members:
            raise KeyError(ball_id)
        d = self.depth[ball_id]
        if d == 0:
            return None
        masks = self.family.masks
        mb = masks[ball_id]
        return next(
            c for c in self.members if self.depth[c] == d - 1 and masks[c] & mb == mb
        )

    def children(self, ball_id: str) -> list[str]:
        return sub(ball_id, self)


def levels(forest: Forest) -> list[frozenset[str]]:
    if not forest.members:
        return []
    depth = forest.depth
    n = max(depth.values()) + 1
    buckets: list[set[str]] = [set() for _ in range(n)]
    for b, d in depth.items():
        buckets[d].add(b)
    return [frozenset(s) for s in buckets]


def level_of(ball_id: str, forest: Forest) -> int:
    """Number of other members containing ``ball_id``."""
    try:
        return forest.depth[ball_id]
    except KeyError:
        raise KeyError(f"{ball_id!r} is not a member of the forest") from None


def sub(ball_id: str, forest: Forest) -> list[str]:
    """Members on the next level down that sit inside ``ball_id``."""
    d = level_of(ball_id, forest)
    masks = forest.family.masks
    mb = masks[ball_id]
    kids = [c for c in forest.members if forest.depth[c] == d + 1 and masks[c] & mb == masks[c]]
    return sorted(kids, key=forest.family.sort_key)


def ch_mask(forest: Forest) -> int:
    masks = forest.family.masks
    out = 0
    for b, d in forest.depth.items():
        if d % 2 == 0:
            residue = masks[b]
            for c in sub(b, forest):
                residue &= ~masks[c]
            out |= residue
    return out


def ch(forest: Forest) -> frozenset[int]:
    """Even-level balls minus their next-level sub-balls, unioned."""
    return mask_to_points(ch_mask(forest))


def level_profile(forest: Forest) -> LevelProfile:
    return tuple(len(lev) for lev in levels(forest))


def profile_of_masks(masks: Sequence[int]) -> LevelProfile:
    """Level sizes of a forest given directly as distinct ball bitmasks."""
    if not masks:
        return ()
    depths = [sum(1 for n in masks if n != m and n & m == m) for m in masks]
    sizes = [0] * (max(depths) + 1)
    for d in depths:
        sizes[d] += 1
    return tuple(sizes)


class Order(enum.Enum):
    LESS = -1
    EQUIVALENT = 0
    GREATER = 1


def profile_key(profile: LevelProfile) -> tuple:
    """Sort key realising the forest order: fewer balls first, then top-heavier."""
    return (sum(profile), tuple(-n for n in profile))


def compare_profiles(p: LevelProfile, q: LevelProfile) -> Order:
    if sum(p) != sum(q):
        return Order.LESS if sum(p) < sum(q) else Order.GREATER
    width = max(len(p), len(q))
    p = tuple(p) + (0,) * (width - len(p))
    q = tuple(q) + (0,) * (width - len(q))
    for a, b in zip(p, q):
        if a != b:
            return Order.LESS if a > b else Order.GREATER
    return Order.EQUIVALENT


def compare(s: Forest, t: Forest) -> Order:
    return compare_profiles(level_profile(s), level_profile(t))


def to_dot(forest: Forest, name: str = "forest") -> str:
    """Graphviz source: parent -> child arrows, wheels (even levels) double-ringed."""
    lines = [f"digraph {name} {{"]
    for b in forest:
        periph = 2 if forest.depth[b] % 2 == 0 else 1
        lines.append(f'  "{b}" [label="{b}", peripheries={periph}];')
    for b in forest:
        for c in sub(b, forest):
            lines.append(f'  "{b}" -> "{c}";')
    lines.append("}")
    return "\n".join(lines) + "\n"

