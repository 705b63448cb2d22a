"""Shared fixtures and independent, pointwise oracles.

The oracles here work on plain Python sets of points and follow the
definitions literally; they never call into the bitmask code paths they
are used to check.
"""

from __future__ import annotations

import itertools

import pytest

from swisscheese import BallFamily, gen_dyadic


def make_d3() -> BallFamily:
    return gen_dyadic(3)


def make_c9() -> BallFamily:
    return BallFamily.from_points(
        9,
        {
            "U": range(9),
            "A": {0, 1, 2},
            "B": {3, 4, 5},
            "a1": {0},
            "a2": {1},
            "b1": {3},
        },
    )


def make_two_tree() -> BallFamily:
    """A family holding the two-tree forest A1 > {B1, B2 > {C1, C2}}, A2 > {B3}."""
    return BallFamily.from_points(
        10,
        {
            "U": range(10),
            "A1": range(6),
            "B1": {0, 1},
            "B2": {2, 3, 4},
            "C1": {2},
            "C2": {3},
            "A2": {6, 7, 8},
            "B3": {6, 7},
        },
    )


TWO_TREE_MEMBERS = frozenset({"A1", "B1", "B2", "C1", "C2", "A2", "B3"})


@pytest.fixture
def d3():
    return make_d3()


@pytest.fixture
def c9():
    return make_c9()


@pytest.fixture
def two_tree():
    return make_two_tree()


def ext(family: BallFamily, b: str) -> set[int]:
    return set(family.points(b))


def levels_by_definition(family: BallFamily, members) -> list[set[str]]:
    """Repeatedly peel off the inclusion-maximal members."""
    rest = set(members)
    out = []
    while rest:
        top = {b for b in rest if not any(c != b and ext(family, b) <= ext(family, c) for c in rest)}
        out.append(top)
        rest -= top
    return out


def ch_by_parity(family: BallFamily, members) -> set[int]:
    """A point is in the swiss cheese set iff an odd number of members contain it."""
    return {
        x for x in range(family.universe_size) if sum(x in ext(family, b) for b in members) % 2 == 1
    }


def ch_by_chains(family: BallFamily, members) -> set[int]:
    """x is kept iff its deepest enclosing member sits on an even level."""
    lev = {b: i for i, layer in enumerate(levels_by_definition(family, members)) for b in layer}
    out = set()
    for x in range(family.universe_size):
        holding = [b for b in members if x in ext(family, b)]
        if holding and max(lev[b] for b in holding) % 2 == 0:
            out.add(x)
    return out


def presentations_pointwise(family: BallFamily):
    """All (wheel, holes) with holes pairwise disjoint proper sub-balls, set nonempty."""
    out = []
    ids = sorted(family.masks)
    for w in ids:
        inner = [h for h in ids if ext(family, h) < ext(family, w)]
        for r in range(len(inner) + 1):
            for hs in itertools.combinations(inner, r):
                if any(ext(family, a) & ext(family, b) for a, b in itertools.combinations(hs, 2)):
                    continue
                pts = ext(family, w) - set().union(*(ext(family, h) for h in hs))
                if pts:
                    out.append((w, frozenset(hs), frozenset(pts)))
    return out


def decomposition_ok_pointwise(family: BallFamily, cheeses, target: set[int]) -> bool:
    """Literal check of the three decomposition conditions plus the cheese conventions."""
    sets = []
    for c in cheeses:
        w = ext(family, c.wheel)
        for h in c.holes:
            if not ext(family, h) < w:
                return False
        for a, b in itertools.combinations(c.holes, 2):
            if ext(family, a) <= ext(family, b) or ext(family, b) <= ext(family, a):
                return False
        pts = w - set().union(*(ext(family, h) for h in c.holes))
        if not pts:
            return False
        sets.append(pts)
    if any(a & b for a, b in itertools.combinations(sets, 2)):
        return False
    wheels = {c.wheel for c in cheeses}
    if any(c.holes & wheels for c in cheeses):
        return False
    return set().union(*sets) == set(target) if sets else not target


def eval_pointwise(expr, family: BallFamily) -> set[int]:
    """Evaluate an expression on Python sets, one node at a time."""
    from swisscheese import BallRef, Compl, Diff, Inter, Union

    universe = set(range(family.universe_size))
    if isinstance(expr, BallRef):
        return ext(family, expr.id)
    if isinstance(expr, Union):
        return set().union(*(eval_pointwise(a, family) for a in expr.args))
    if isinstance(expr, Inter):
        out = universe
        for a in expr.args:
            out = out & eval_pointwise(a, family)
        return out
    if isinstance(expr, Diff):
        return eval_pointwise(expr.left, family) - eval_pointwise(expr.right, family)
    if isinstance(expr, Compl):
        return universe - eval_pointwise(expr.child, family)
    raise TypeError(expr)


def clause_pointwise(family: BallFamily, clauses) -> set[int]:
    out = set()
    for pos, neg in clauses:
        pts = set(range(family.universe_size))
        for p in pos:
            pts &= ext(family, p)
        for n in neg:
            pts -= ext(family, n)
        out |= pts
    return out


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
