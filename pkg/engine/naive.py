"""
Nested-loop evaluation of a conjunctive query, straight from its semantics.

Every variable ranges over its active domain (the ids found in all columns
it occupies); an assignment is kept when each atom's tuple, read off the
assignment, is in its relation. Partial assignments are checked against the
projection of each atom onto the variables bound so far, which prunes dead
branches without changing the result.

Exponential in the number of variables: meant for tiny instances and as an
oracle for the other engines.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Set, Tuple

from egraph.core.errors import AssignmentSpaceError
from egraph.egraph import EGraph
from infra.logger import get_logger
from infra.settings import get_settings
from query.compiler import ConjunctiveQuery
from query.pattern import Pattern, PatternKind, is_degenerate
from relational.database import Database

from .base_engine import BaseEngine
from .fast_path import eval_nonnested
from .matcher import RelationalMatcher, empty_head
from .registry import register_engine
from .results import JoinStats, MatchSet

logger = get_logger(__name__)

# (column indices of the atom, variable positions feeding them, allowed projections)
Check = Tuple[Tuple[int, ...], Tuple[int, ...], Set[Tuple[int, ...]]]


def _checks(q: ConjunctiveQuery, db: Database, order: List[str]) -> List[List[Check]]:
    """Per depth, the projections to test once order[depth] is bound."""
    position = {v: i for i, v in enumerate(order)}
    checks: List[List[Check]] = [[] for _ in order]
    for atom in q.body:
        tuples = db.relation(atom.symbol).tuples
        for depth in sorted({position[v] for v in atom.vars}):
            columns = tuple(c for c, v in enumerate(atom.vars) if position[v] <= depth)
            sources = tuple(position[atom.vars[c]] for c in columns)
            allowed = {tuple(t[c] for c in columns) for t in tuples}
            checks[depth].append((columns, sources, allowed))
    return checks


def naive_cq_eval(q: ConjunctiveQuery, db: Database, cap: Optional[int] = None) -> MatchSet:
    """
    Evaluate `q` by enumerating variable assignments.

    Args:
        q: Conjunctive query
        db: Database holding every relation the query mentions
        cap: Most assignments (partial ones included) to visit; `REM_NAIVE_CAP` when omitted

    Raises:
        UnknownSymbolError: a relation is missing
        AssignmentSpaceError: more than `cap` assignments would be visited
    """
    cap = get_settings().naive_cap if cap is None else cap
    order = q.variables()
    stats = JoinStats()

    domains: Dict[str, Set[int]] = {}
    for atom in q.body:
        relation = db.relation(atom.symbol)
        for column, v in enumerate(atom.vars):
            values = relation.column(column)
            domains[v] = set(values) if v not in domains else domains[v] & values
    ordered_domains = [sorted(domains[v]) for v in order]
    checks = _checks(q, db, order)
    head_positions = [order.index(v) for v in q.head]

    rows = set()
    assignment: List[int] = [0] * len(order)
    # Stack of (depth, index into that depth's domain).
    stack: List[Tuple[int, int]] = [(0, 0)] if order else []
    while stack:
        depth, index = stack.pop()
        domain = ordered_domains[depth]
        if index >= len(domain):
            continue
        stack.append((depth, index + 1))

        stats.candidates += 1
        if stats.candidates > cap:
            logger.warning("naive evaluation of %s exceeded %d assignments", q, cap)
            raise AssignmentSpaceError(f"assignment space of {q} exceeds the cap of {cap}")

        assignment[depth] = domain[index]
        if not all(
            tuple(assignment[s] for s in sources) in allowed for _, sources, allowed in checks[depth]
        ):
            continue
        if depth + 1 == len(order):
            stats.leaves_emitted += 1
            rows.add(tuple(assignment[p] for p in head_positions))
        else:
            stack.append((depth + 1, 0))

    return MatchSet(q.head, rows, stats)


@register_engine("naive")
class NaiveEngine(BaseEngine):
    """Compile like the relational engine, then enumerate assignments."""

    def __init__(self, cap: Optional[int] = None, name: str | None = None):
        super().__init__(name or "naive")
        self.cap = cap
        self.matcher = RelationalMatcher(use_fast_path=False)

    def match(self, patterns: Sequence[Pattern], egraph: EGraph) -> MatchSet:
        db, _, q = self.matcher.prepare(patterns, egraph)
        if len(patterns) == 1 and is_degenerate(patterns[0]) is PatternKind.BARE_VARIABLE:
            return eval_nonnested(patterns[0], db)
        if q is None:
            return MatchSet(empty_head(patterns))
        return naive_cq_eval(q, db, self.cap)

    def reset(self) -> None:
        self.matcher.reset()
