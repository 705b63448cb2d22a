"""Canonical forms for boolean combinations of balls in finite directed set families."""

from swisscheese.canonical import (
    CanonicalCode,
    Improvement,
    all_representatives,
    code_of,
    improve,
    level_sets,
    minimal_representative,
)
from swisscheese.cheese import (
    Decomposition,
    SwissCheese,
    decompose,
    decomposition_to_forest,
    enumerate_decompositions,
    normalize_cheese,
)
from swisscheese.errors import (
    FamilyError,
    LayeringError,
    NotRepresentableError,
    TooLargeError,
)
from swisscheese.expr import (
    BallRef,
    Clause,
    Compl,
    Diff,
    Inter,
    SetExpr,
    Union,
    evaluate,
    to_dnf,
)
from swisscheese.family import (
    Ball,
    BallFamily,
    SplitMix64,
    ValidationReport,
    covering_property,
    gen_crumb_laminar,
    gen_dyadic,
    gen_laminar,
    is_unpackable,
    parent_forest,
    validate_directed,
)
from swisscheese.forest import (
    Forest,
    Order,
    ch,
    compare,
    compare_profiles,
    level_of,
    level_profile,
    levels,
    sub,
    to_dot,
)
from swisscheese.quasi import CellPartition, TraceFamily, quasi_canonical, restrict_family

__version__ = "0.1.0"
