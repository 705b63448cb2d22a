"""Canonical representatives of constructible sets.

Many forests can share the same swiss cheese set once balls can be packed.
Ordering forests by size and then by top-heaviness singles out exactly one
of them; that forest, serialised, is the set's code.

The search here is plain enumeration by cardinality.  It is exponential in
the worst case, which is fine for the family sizes this library targets.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass
from functools import reduce
from typing import Iterable

from swisscheese.cheese import guard_exhaustive, decompose, representative_forest
from swisscheese.errors import NotRepresentableError
from swisscheese.expr import BallRef, Diff, SetExpr, Union
from swisscheese.family import BallFamily, mask_to_points, points_to_mask
from swisscheese.forest import Forest, Order, ch_mask, compare, levels, profile_key, profile_of_masks, sub


def ch_of_masks(masks: list[int]) -> int:
    """Swiss cheese set of a forest given as distinct bitmasks, straight from the level definition."""
    depth = [sum(1 for n in masks if n != m and n & m == m) for m in masks]
    out = 0
    for m, d in zip(masks, depth):
        if d % 2 == 0:
            residue = m
            for n, e in zip(masks, depth):
                if e == d + 1 and n & m == n:
                    residue &= ~n
            out |= residue
    return out


def all_representatives(points: Iterable[int], family: BallFamily, size_bound: int) -> list[Forest]:
    """Every forest of at most ``size_bound`` balls whose swiss cheese set is ``points``."""
    guard_exhaustive(family)
    target = points_to_mask(points)
    ids = family.ids
    masks = [family.masks[b] for b in ids]
    out = []
    for k in range(min(size_bound, len(ids)) + 1):
        for combo in itertools.combinations(range(len(ids)), k):
            if ch_of_masks([masks[i] for i in combo]) == target:
                out.append(Forest(family, frozenset(ids[i] for i in combo)))
    return out


def is_constructible(target: int, family: BallFamily) -> bool:
    if target & ~family.universe_mask:
        return False
    return all(not a & target or a & target == a for a in family.atoms.values())


def atoms_expr(target: int, family: BallFamily) -> SetExpr:
    """An expression for a constructible set: the union of the atoms it contains."""
    parts = []
    for b in family.ids:
        a = family.atoms[b]
        if a and a & target == a:
            kids = family.children[b]
            parts.append(Diff(BallRef(b), Union(tuple(BallRef(c) for c in kids))) if kids else BallRef(b))
    return Union(tuple(parts))


def decomposition_bound(target: int, family: BallFamily) -> int:
    return len(representative_forest(decompose(atoms_expr(target, family), family), family))


def minimal_representative(points: Iterable[int], family: BallFamily, bound: int | None = None) -> Forest:
    """The unique forest-order-least forest whose swiss cheese set is ``points``.

    Candidates are scanned by increasing size; the first size with any hit
    is the minimal size, and the top-heaviest profile among those hits wins.
    ``bound`` defaults to the size of the forest read off ``decompose``.
    """
    target = points_to_mask(points)
    if not is_constructible(target, family):
        raise NotRepresentableError("set is not a boolean combination of the family's balls")
    if bound is None:
        bound = decomposition_bound(target, family)
    ids = family.ids
    masks = [family.masks[b] for b in ids]
    xor = operator.xor
    for k in range(min(bound, len(ids)) + 1):
        # within a laminar family the swiss cheese set is the symmetric difference of the members
        hits = [
            combo
            for combo in itertools.combinations(range(len(ids)), k)
            if reduce(xor, (masks[i] for i in combo), 0) == target
        ]
        if not hits:
            continue
        keyed = [(profile_key(profile_of_masks([masks[i] for i in c])), c) for c in hits]
        best = min(k for k, _ in keyed)
        winners = [c for k, c in keyed if k == best]
        if len(winners) > 1:
            raise RuntimeError(f"{len(winners)} distinct minimal representatives; uniqueness violated")
        return Forest(family, frozenset(ids[i] for i in winners[0]))
    raise NotRepresentableError(f"no representative with at most {bound} balls")


@dataclass(frozen=True)
class Improvement:
    """Result of the exchange move between two representatives.

    ``outer`` is the root of T strictly containing a root of S.
    """

    outer: str
    s_prime: frozenset[str]
    t_prime: frozenset[str]
    s_star: Forest
    t_star: Forest


def improve(s: Forest, t: Forest) -> Improvement | None:
    """Exchange move between two forests representing the same set.

    Picks a root C of ``t`` strictly containing some root of ``s``, takes
    S' = roots of ``s`` inside C but inside no sub-ball of C in ``t``, and
    T' = sub-balls of C in ``t`` missing every member of S'.  Then
    S* = (s - S') + {C} + T' and T* = (t - {C} - T') + S'.

    Returns None when the roots agree or no such C exists.  Raises
    ValueError if the forests represent different sets.
    """
    family = s.family
    if ch_mask(s) != ch_mask(t):
        raise ValueError("forests represent different sets")
    s_levels, t_levels = levels(s), levels(t)
    s_roots = s_levels[0] if s_levels else frozenset()
    t_roots = t_levels[0] if t_levels else frozenset()
    if s_roots == t_roots:
        return None
    masks = family.masks

    def strictly_inside(b, c):
        return masks[b] != masks[c] and masks[b] & masks[c] == masks[b]

    outer = next(
        (c for c in sorted(t_roots, key=family.sort_key) if any(strictly_inside(b, c) for b in s_roots)),
        None,
    )
    if outer is None:
        return None
    subs = sub(outer, t)
    s_prime = frozenset(
        b
        for b in s_roots
        if masks[b] & masks[outer] == masks[b] and not any(masks[b] & masks[c] == masks[b] for c in subs)
    )
    t_prime = frozenset(c for c in subs if not any(masks[c] & masks[b] for b in s_prime))
    s_star = Forest(family, (s.members - s_prime) | {outer} | t_prime)
    t_star = Forest(family, (t.members - ({outer} | t_prime)) | s_prime)
    return Improvement(outer, s_prime, t_prime, s_star, t_star)


def improvement_outcome(imp: Improvement) -> str:
    """Which branch of the size comparison between S' and T' + 1 applies.

    Returns ``"t_smaller"``, ``"s_smaller"``, ``"impossible"`` (a single S'
    ball equal to C, which the choice of C rules out) or
    ``"top_heavier"`` (equal sizes, more roots on one side).
    """
    ns, nt = len(imp.s_prime), len(imp.t_prime) + 1
    if ns < nt:
        return "t_smaller"
    if ns > nt:
        return "s_smaller"
    return "impossible" if ns == 1 else "top_heavier"


def improves(s: Forest, t: Forest, imp: Improvement) -> bool:
    """True if S* strictly precedes S or T* strictly precedes T in the forest order."""
    return compare(imp.s_star, s) is Order.LESS or compare(imp.t_star, t) is Order.LESS


def level_sets(points: Iterable[int], family: BallFamily) -> list[frozenset[int]]:
    """Union of the level-n balls of the minimal representative, for each n."""
    forest = minimal_representative(points, family)
    masks = family.masks
    return [mask_to_points(reduce(operator.or_, (masks[b] for b in lev), 0)) for lev in levels(forest)]


@dataclass(frozen=True)
class CanonicalCode:
    entries: tuple[tuple[str, int], ...]

    def to_json(self) -> dict:
        return {"code": [{"ball": b, "level": n} for b, n in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> CanonicalCode:
        return cls(tuple((e["ball"], e["level"]) for e in data["code"]))

    def to_forest(self, family: BallFamily) -> Forest:
        return Forest(family, frozenset(b for b, _ in self.entries))


def forest_code(forest: Forest) -> CanonicalCode:
    family = forest.family
    entries = sorted(((b, forest.depth[b]) for b in forest.members), key=lambda e: (e[1],) + family.sort_key(e[0]))
    return CanonicalCode(tuple(entries))


def code_of(points: Iterable[int], family: BallFamily) -> CanonicalCode:
    return forest_code(minimal_representative(points, family))


def forest_to_json(forest: Forest) -> dict:
    family = forest.family
    return {
        "forest": [
            {"ball": b, "level": n, "points": sorted(family.points(b))}
            for b, n in forest_code(forest).entries
        ]
    }

