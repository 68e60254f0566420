"""
Scan path for degenerate patterns.

Non-nested patterns compile to a single atom, so no join (and no index) is
needed: scan R_f and keep tuples whose repeated-variable columns agree.
Bare-variable patterns match every canonical e-class.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from egraph.core.errors import ArityError
from query.compiler import root_name
from query.pattern import Pattern, PatternKind, Var, is_degenerate, pattern_vars
from relational.database import Database

from .results import JoinStats, MatchSet


def eval_nonnested(pattern: Pattern, db: Database) -> MatchSet:
    """
    Match a BARE_VARIABLE or NON_NESTED pattern by scanning.

    Raises:
        ValueError: the pattern is nested
        ArityError: pattern arity disagrees with the relation
    """
    kind = is_degenerate(pattern)
    root = root_name(0)
    stats = JoinStats()

    if kind is PatternKind.BARE_VARIABLE:
        head = (root, pattern.cq_name)
        stats.values_enumerated = len(db.class_ids)
        return MatchSet(head, {(c, c) for c in db.class_ids}, stats)
    if kind is not PatternKind.NON_NESTED:
        raise ValueError(f"{pattern} is nested; compile it and use generic join")

    variables = pattern_vars(pattern)
    head = (root,) + tuple(v.cq_name for v in variables)
    relation = db.relations.get(pattern.symbol)
    if relation is None:
        return MatchSet(head, set(), stats)
    if relation.arity != len(pattern.args) + 1:
        raise ArityError(pattern.symbol, relation.arity - 1, len(pattern.args))

    # First column of each variable, plus (column, first column) equality checks.
    first: Dict[str, int] = {}
    repeats: List[Tuple[int, int]] = []
    for column, arg in enumerate(pattern.args, start=1):
        assert isinstance(arg, Var)
        if arg.name in first:
            repeats.append((column, first[arg.name]))
        else:
            first[arg.name] = column
    picks = [0] + [first[v.name] for v in variables]

    rows = set()
    for t in relation.tuples:
        if all(t[a] == t[b] for a, b in repeats):
            rows.add(tuple(t[c] for c in picks))
    stats.values_enumerated = len(relation)
    stats.leaves_emitted = len(rows)
    return MatchSet(head, rows, stats)
