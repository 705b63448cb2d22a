"""Swiss cheeses, decompositions into disjoint cheeses, and how to build them.

A swiss cheese is a wheel (a ball) with finitely many proper sub-balls
removed as holes.  Holes are kept nonredundant, which in a laminar family
means pairwise disjoint.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable

from swisscheese.errors import LayeringError, TooLargeError
from swisscheese.expr import SetExpr, to_dnf
from swisscheese.family import BallFamily, lowest_point, mask_to_points, points_to_mask
from swisscheese.forest import Forest, ch_mask

MAX_EXHAUSTIVE_BALLS = 14


@dataclass(frozen=True)
class SwissCheese:
    wheel: str
    holes: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "holes", frozenset(self.holes))

    def mask(self, family: BallFamily) -> int:
        m = family.masks[self.wheel]
        for h in self.holes:
            m &= ~family.masks[h]
        return m

    def points(self, family: BallFamily) -> frozenset[int]:
        return mask_to_points(self.mask(family))


@dataclass(frozen=True)
class Decomposition:
    cheeses: tuple[SwissCheese, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cheeses", tuple(self.cheeses))

    def __len__(self) -> int:
        return len(self.cheeses)

    def __iter__(self):
        return iter(self.cheeses)

    def mask(self, family: BallFamily) -> int:
        out = 0
        for c in self.cheeses:
            out |= c.mask(family)
        return out

    def points(self, family: BallFamily) -> frozenset[int]:
        return mask_to_points(self.mask(family))

    def sorted(self, family: BallFamily) -> Decomposition:
        return Decomposition(tuple(sorted(self.cheeses, key=lambda c: cheese_key(c, family))))


def cheese_key(c: SwissCheese, family: BallFamily) -> tuple:
    return family.sort_key(c.wheel) + (tuple(sorted(c.holes, key=family.sort_key)),)


def cheese_problems(c: SwissCheese, family: BallFamily) -> list[str]:
    masks = family.masks
    out = []
    mw = masks[c.wheel]
    for h in c.holes:
        mh = masks[h]
        if mh == mw or mh & mw != mh:
            out.append(f"hole {h} is not a proper sub-ball of {c.wheel}")
    for h, k in itertools.combinations(sorted(c.holes), 2):
        if masks[h] & masks[k]:
            out.append(f"holes {h} and {k} of {c.wheel} are redundant")
    if not c.mask(family):
        out.append(f"cheese on {c.wheel} is empty")
    return out


def decomposition_problems(d: Decomposition, family: BallFamily, target: int | None = None) -> list[str]:
    """Every violated cheese or decomposition condition; empty list means valid.

    ``target`` is a bitmask the decomposition should cover exactly.
    """
    out = []
    for c in d.cheeses:
        out.extend(cheese_problems(c, family))
    for (i, a), (j, b) in itertools.combinations(enumerate(d.cheeses), 2):
        if a.mask(family) & b.mask(family):
            out.append(f"cheeses {i} and {j} overlap")
    wheels = {c.wheel for c in d.cheeses}
    for c in d.cheeses:
        for h in c.holes & wheels:
            out.append(f"{h} is both a wheel and a hole")
    if target is not None and d.mask(family) != target:
        out.append("decomposition does not cover the target set exactly")
    return out


def normalize_cheese(wheel: str, holes: Iterable[str], family: BallFamily) -> SwissCheese | None:
    """Drop holes nested in other holes; None if nothing is left of the wheel."""
    masks = family.masks
    mw = masks[wheel]
    hs = set(holes)
    for h in hs:
        mh = masks[h]
        if mh == mw or mh & mw != mh:
            raise ValueError(f"hole {h!r} is not a proper sub-ball of wheel {wheel!r}")
    kept = frozenset(
        h for h in hs if not any(k != h and masks[h] & masks[k] == masks[h] for k in hs)
    )
    c = SwissCheese(wheel, kept)
    return c if c.mask(family) else None


def _clause_cheese(positives, negatives, family: BallFamily) -> SwissCheese | None:
    masks = family.masks
    core = family.universe_mask
    for p in positives:
        core &= masks[p]
    if not core:
        return None
    wheel = next(p for p in positives if masks[p] == core)
    holes = []
    for n in negatives:
        mn = masks[n]
        if not mn & core:
            continue
        if mn & core == core:
            return None
        holes.append(n)
    return normalize_cheese(wheel, holes, family)


def _merge_overlapping(a: SwissCheese, b: SwissCheese, family: BallFamily) -> SwissCheese:
    masks = family.masks
    if masks[a.wheel] & masks[b.wheel] != masks[a.wheel]:
        a, b = b, a
    # now a.wheel is inside b.wheel; b is the outer cheese
    outer_wheel = masks[a.wheel]
    keep = {h for h in b.holes if not masks[h] & outer_wheel}
    for h in a.holes:
        if any(masks[h] & masks[k] == masks[h] for k in b.holes):
            keep.add(h)
    for h in b.holes:
        if any(masks[h] & masks[k] == masks[h] for k in a.holes):
            keep.add(h)
    merged = normalize_cheese(b.wheel, keep, family)
    assert merged is not None
    return merged


def _first_pair(cheeses: list[SwissCheese], family: BallFamily, pred):
    order = sorted(range(len(cheeses)), key=lambda i: (cheeses[i].wheel, cheese_key(cheeses[i], family)))
    for x, y in itertools.permutations(order, 2):
        if pred(cheeses[x], cheeses[y]):
            return x, y
    return None


def decompose(expr: SetExpr, family: BallFamily) -> Decomposition:
    """Build a swiss cheese decomposition of the set ``expr`` denotes.

    Each DNF clause becomes one cheese (or vanishes if empty), overlapping
    cheeses are merged pairwise, and then any cheese whose wheel is a hole of
    another is folded into it.
    """
    cheeses: list[SwissCheese] = []
    for clause in to_dnf(expr, family):
        c = _clause_cheese(clause.positives, clause.negatives, family)
        if c is not None:
            cheeses.append(c)

    def overlapping(a, b):
        return bool(a.mask(family) & b.mask(family))

    while (pair := _first_pair(cheeses, family, overlapping)) is not None:
        i, j = pair
        merged = _merge_overlapping(cheeses[i], cheeses[j], family)
        cheeses = [c for k, c in enumerate(cheeses) if k not in pair] + [merged]

    def wheel_is_hole(a, b):
        return a.wheel in b.holes

    while (pair := _first_pair(cheeses, family, wheel_is_hole)) is not None:
        i, j = pair
        inner, outer = cheeses[i], cheeses[j]
        merged = normalize_cheese(outer.wheel, (outer.holes - {inner.wheel}) | inner.holes, family)
        assert merged is not None
        cheeses = [c for k, c in enumerate(cheeses) if k not in pair] + [merged]

    return Decomposition(tuple(cheeses)).sorted(family)


def decomposition_to_forest(d: Decomposition, family: BallFamily) -> Forest:
    """Forest of all wheels and holes, checked to reproduce the decomposition.

    Raises LayeringError when a wheel lands on an odd level, a hole on an even
    one, or the swiss cheese operator of the forest gives back a different set.
    """
    wheels = {c.wheel for c in d.cheeses}
    holes = set().union(*(c.holes for c in d.cheeses)) if d.cheeses else set()
    forest = Forest(family, frozenset(wheels | holes))
    bad = sorted(b for b in wheels if forest.depth[b] % 2) + sorted(
        b for b in holes if forest.depth[b] % 2 == 0
    )
    if bad:
        raise LayeringError(f"wheels/holes on the wrong parity of level: {bad}")
    if ch_mask(forest) != d.mask(family):
        raise LayeringError("forest of wheels and holes represents a different set")
    return forest


def representative_forest(d: Decomposition, family: BallFamily) -> Forest:
    """A forest whose swiss cheese set equals the decomposition's set.

    Each cheese is the symmetric difference of its wheel and its disjoint
    holes, and the cheeses are disjoint, so the decomposition's set is the
    symmetric difference of all wheels and holes counted with multiplicity.
    In a laminar family the swiss cheese operator of a forest is the
    symmetric difference of its members, so keeping the balls that occur an
    odd number of times gives a representative.  When
    ``decomposition_to_forest`` succeeds the two forests coincide.
    """
    counts = Counter()
    for c in d.cheeses:
        counts[c.wheel] += 1
        counts.update(c.holes)
    return Forest(family, frozenset(b for b, n in counts.items() if n % 2))


def _presentations(family: BallFamily, within: int) -> list[tuple[int, SwissCheese]]:
    """All nonempty (wheel, disjoint proper sub-ball holes) whose set lies inside ``within``."""
    masks = family.masks
    out = []
    for w in family.ids:
        mw = masks[w]
        if not mw & within:
            continue
        inner = [h for h in family.ids if masks[h] != mw and masks[h] & mw == masks[h]]
        # holes must cover wheel minus target: only worth trying when it fits
        out.extend(_hole_antichains(w, mw, inner, masks, within))
    return out


def _hole_antichains(w, mw, inner, masks, within):
    found = []

    def rec(i, chosen, used):
        if i == len(inner):
            rest = mw & ~used
            if rest and rest & within == rest:
                found.append((rest, SwissCheese(w, frozenset(chosen))))
            return
        rec(i + 1, chosen, used)
        mh = masks[inner[i]]
        if not mh & used:
            chosen.append(inner[i])
            rec(i + 1, chosen, used | mh)
            chosen.pop()

    rec(0, [], 0)
    return found


def all_presentations(family: BallFamily) -> list[tuple[int, SwissCheese]]:
    """Every nonempty swiss cheese presentation in the family, with its set."""
    guard_exhaustive(family)
    return _presentations(family, family.universe_mask)


def guard_exhaustive(family: BallFamily) -> None:
    if len(family) > MAX_EXHAUSTIVE_BALLS:
        raise TooLargeError(f"exhaustive search is limited to {MAX_EXHAUSTIVE_BALLS} balls, family has {len(family)}")


def enumerate_decompositions(
    points: Iterable[int],
    family: BallFamily,
    max_cheeses: int | None = None,
    limit: int | None = None,
) -> list[Decomposition]:
    """Every swiss cheese decomposition of a point set, by exhaustive search.

    ``limit`` stops the search early once that many have been found.
    """
    guard_exhaustive(family)
    target = points_to_mask(points)
    by_low: dict[int, list[tuple[int, SwissCheese]]] = defaultdict(list)
    for m, c in _presentations(family, target):
        by_low[lowest_point(m)].append((m, c))
    found: list[Decomposition] = []
    cap = max_cheeses if max_cheeses is not None else family.universe_size

    def rec(rest: int, chosen: list[SwissCheese], wheels: set[str], holes: set[str]) -> bool:
        if not rest:
            found.append(Decomposition(tuple(chosen)).sorted(family))
            return limit is not None and len(found) >= limit
        if len(chosen) >= cap:
            return False
        for m, c in by_low[lowest_point(rest)]:
            if m & rest != m or c.wheel in holes or c.holes & wheels:
                continue
            chosen.append(c)
            wheels.add(c.wheel)
            holes.update(c.holes)
            stop = rec(rest & ~m, chosen, wheels, holes)
            chosen.pop()
            # wheels may repeat across cheeses, so rebuild rather than discard
            wheels.clear()
            wheels.update(x.wheel for x in chosen)
            holes.clear()
            for x in chosen:
                holes.update(x.holes)
            if stop:
                return True
        return False

    rec(target, [], set(), set())
    return found


def decomposition_to_json(d: Decomposition, family: BallFamily) -> list[dict]:
    return [
        {"wheel": c.wheel, "holes": sorted(c.holes)}
        for c in d.sorted(family).cheeses
    ]


def decomposition_from_json(data: list) -> Decomposition:
    return Decomposition(tuple(SwissCheese(e["wheel"], frozenset(e["holes"])) for e in data))
