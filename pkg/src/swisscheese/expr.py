"""Boolean combinations of balls: the input language.

Complement is taken relative to the universe.  An empty ``Union`` is the
empty set and an empty ``Inter`` is the universe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import NamedTuple

from swisscheese.family import BallFamily, mask_to_points


@dataclass(frozen=True)
class BallRef:
    id: str


@dataclass(frozen=True)
class Union:
    args: tuple[SetExpr, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Inter:
    args: tuple[SetExpr, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Diff:
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Compl:
    child: SetExpr


SetExpr = BallRef | Union | Inter | Diff | Compl


class Clause(NamedTuple):
    positives: frozenset[str]
    negatives: frozenset[str]


def eval_mask(expr: SetExpr, family: BallFamily) -> int:
    if isinstance(expr, BallRef):
        try:
            return family.masks[expr.id]
        except KeyError:
            raise KeyError(f"unknown ball id {expr.id!r}") from None
    if isinstance(expr, Union):
        out = 0
        for a in expr.args:
            out |= eval_mask(a, family)
        return out
    if isinstance(expr, Inter):
        out = family.universe_mask
        for a in expr.args:
            out &= eval_mask(a, family)
        return out
    if isinstance(expr, Diff):
        return eval_mask(expr.left, family) & ~eval_mask(expr.right, family)
    if isinstance(expr, Compl):
        return family.universe_mask & ~eval_mask(expr.child, family)
    raise TypeError(f"not a set expression: {expr!r}")


def evaluate(expr: SetExpr, family: BallFamily) -> frozenset[int]:
    return mask_to_points(eval_mask(expr, family))


def _product(xs: list[Clause], ys: list[Clause]) -> list[Clause]:
    return [Clause(a.positives | b.positives, a.negatives | b.negatives) for a in xs for b in ys]


def _dnf(expr: SetExpr, negated: bool) -> list[Clause]:
    if isinstance(expr, BallRef):
        lit = frozenset([expr.id])
        return [Clause(frozenset(), lit)] if negated else [Clause(lit, frozenset())]
    if isinstance(expr, Compl):
        return _dnf(expr.child, not negated)
    if isinstance(expr, Diff):
        return _dnf(Inter((expr.left, Compl(expr.right))), negated)
    if isinstance(expr, (Union, Inter)):
        # a negated union distributes like an intersection, and vice versa
        conjunctive = isinstance(expr, Inter) != negated
        if not conjunctive:
            return [c for a in expr.args for c in _dnf(a, negated)]
        out = [Clause(frozenset(), frozenset())]
        for a in expr.args:
            out = _product(out, _dnf(a, negated))
        return out
    raise TypeError(f"not a set expression: {expr!r}")


def to_dnf(expr: SetExpr, family: BallFamily) -> list[Clause]:
    """Union of intersections of literals, each clause with at least one positive ball.

    Purely syntactic: clauses are not simplified beyond dropping exact repeats.
    """
    univ = frozenset([family.universe_id])
    out: list[Clause] = []
    seen = set()
    for c in _dnf(expr, False):
        if not c.positives:
            c = Clause(univ, c.negatives)
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def dnf_to_expr(clauses: list[Clause]) -> SetExpr:
    return Union(
        tuple(
            Inter(tuple(BallRef(p) for p in sorted(c.positives)) + tuple(Compl(BallRef(n)) for n in sorted(c.negatives)))
            for c in clauses
        )
    )


def eval_dnf(clauses: list[Clause], family: BallFamily) -> frozenset[int]:
    return evaluate(dnf_to_expr(clauses), family)


def n_leaves(expr: SetExpr) -> int:
    if isinstance(expr, BallRef):
        return 1
    if isinstance(expr, (Union, Inter)):
        return sum(n_leaves(a) for a in expr.args)
    if isinstance(expr, Diff):
        return n_leaves(expr.left) + n_leaves(expr.right)
    return n_leaves(expr.child)


def random_expr(rng: random.Random, ball_ids: list[str], max_leaves: int = 12) -> SetExpr:
    """Random expression with between 1 and ``max_leaves`` ball references."""
    return _grow(rng, list(ball_ids), rng.randint(1, max_leaves))


def _grow(rng: random.Random, ids: list[str], leaves: int) -> SetExpr:
    if leaves == 1:
        leaf: SetExpr = BallRef(rng.choice(ids))
        return Compl(leaf) if rng.random() < 0.15 else leaf
    kind = rng.choice(("union", "inter", "diff", "compl"))
    if kind == "compl":
        return Compl(_grow(rng, ids, leaves))
    if kind == "diff":
        k = rng.randint(1, leaves - 1)
        return Diff(_grow(rng, ids, k), _grow(rng, ids, leaves - k))
    n_args = rng.randint(2, min(leaves, 4))
    cuts = sorted(rng.sample(range(1, leaves), n_args - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [leaves])]
    args = tuple(_grow(rng, ids, k) for k in sizes)
    return Union(args) if kind == "union" else Inter(args)


def expr_to_json(expr: SetExpr) -> dict:
    if isinstance(expr, BallRef):
        return {"op": "ball", "id": expr.id}
    if isinstance(expr, Union):
        return {"op": "union", "args": [expr_to_json(a) for a in expr.args]}
    if isinstance(expr, Inter):
        return {"op": "inter", "args": [expr_to_json(a) for a in expr.args]}
    if isinstance(expr, Diff):
        return {"op": "diff", "args": [expr_to_json(expr.left), expr_to_json(expr.right)]}
    return {"op": "compl", "args": [expr_to_json(expr.child)]}


def expr_from_json(data: dict) -> SetExpr:
    op = data.get("op") if isinstance(data, dict) else None
    if op == "ball":
        if not isinstance(data.get("id"), str):
            raise ValueError("ball node needs a string id")
        return BallRef(data["id"])
    args = data.get("args") if isinstance(data, dict) else None
    if not isinstance(args, list):
        raise ValueError(f"malformed expression node {data!r}")
    sub = [expr_from_json(a) for a in args]
    if op == "union":
        return Union(tuple(sub))
    if op == "inter":
        return Inter(tuple(sub))
    if op == "diff":
        if len(sub) != 2:
            raise ValueError("diff takes exactly two args")
        return Diff(sub[0], sub[1])
    if op == "compl":
        if len(sub) != 1:
            raise ValueError("compl takes exactly one arg")
        return Compl(sub[0])
    raise ValueError(f"unknown op {op!r}")
