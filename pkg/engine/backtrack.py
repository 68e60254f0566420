"""
Backtracking e-matching: the declarative top-down matcher.

    match(x, c, S)              = {σ ∪ {x ↦ c} | σ ∈ S, x ∉ dom(σ)} ∪ {σ ∈ S | σ(x) = c}
    match(f(p_1..p_k), c, S)    = ∪ over f(c_1..c_k) ∈ c of match(p_k, c_k, ... match(p_1, c_1, S))

No instruction compilation or other machine-level tricks; it serves as the
reference engine and as the complexity baseline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence

from egraph.core.types import EClassId
from egraph.egraph import ClassIndex, EGraph
from query.compiler import root_name
from query.pattern import Pattern, Var, check_arities, pattern_vars

from .base_engine import BaseEngine
from .registry import register_engine
from .results import JoinStats, MatchSet, Substitution


@dataclass
class BacktrackState:
    index: ClassIndex
    # E-nodes tried against an App sub-pattern.
    candidates: int = 0


def bt_match(
    pattern: Pattern,
    eclass: EClassId,
    substs: List[Substitution],
    state: BacktrackState,
) -> List[Substitution]:
    """Extend every substitution in `substs` so `pattern` matches `eclass`."""
    if isinstance(pattern, Var):
        name = pattern.cq_name
        out: List[Substitution] = []
        for subst in substs:
            bound = subst.get(name)
            if bound is None:
                out.append({**subst, name: eclass})
            elif bound == eclass:
                out.append(subst)
        return out

    results: List[Substitution] = []
    for node in state.index.get(eclass, {}).get(pattern.symbol, ()):
        state.candidates += 1
        if node.arity != len(pattern.args):
            continue
        current = substs
        for arg, child in zip(pattern.args, node.children):
            current = bt_match(arg, child, current, state)
            if not current:
                break
        results.extend(current)
    return results


def bt_ematch_all(pattern: Pattern, egraph: EGraph) -> MatchSet:
    """Union of match(p, c, {∅}) over all canonical classes, tagged with root = c."""
    egraph.require_clean("bt_ematch_all")
    state = BacktrackState(egraph.class_index())
    variables = [v.cq_name for v in pattern_vars(pattern)]
    head = (root_name(0),) + tuple(variables)

    rows = set()
    for eclass in egraph.class_ids():
        for subst in bt_match(pattern, eclass, [{}], state):
            rows.add((eclass,) + tuple(subst[v] for v in variables))

    stats = JoinStats(candidates=state.candidates, leaves_emitted=len(rows))
    return MatchSet(head, rows, stats)


def bt_ematch_multi(patterns: Sequence[Pattern], egraph: EGraph) -> MatchSet:
    """
    Match each pattern on its own, then join the results on shared variables.

    The head follows compile_multi: roots first, then pattern variables in
    first-occurrence order.
    """
    if not patterns:
        raise ValueError("multi-pattern must contain at least one pattern")
    stats = JoinStats()
    partial: List[Dict[str, EClassId]] = [{}]
    for index, pattern in enumerate(patterns):
        single = bt_ematch_all(pattern, egraph)
        stats.absorb(single.stats)
        renamed = (root_name(index),) + single.head[1:]
        joined: List[Dict[str, EClassId]] = []
        for left in partial:
            for row in single.rows:
                right = dict(zip(renamed, row))
                if all(left.get(k, v) == v for k, v in right.items()):
                    joined.append({**left, **right})
        partial = joined

    head = tuple(root_name(i) for i in range(len(patterns))) + tuple(v.cq_name for v in pattern_vars(patterns))
    result = MatchSet.from_substitutions(head, partial)
    result.stats = stats
    return result


@register_engine("em")
class BacktrackEngine(BaseEngine):
    """Top-down backtracking over the e-graph; no database, no indices."""

    def __init__(self, name: str | None = None):
        super().__init__(name or "em")

    def match(self, patterns: Sequence[Pattern], egraph: EGraph) -> MatchSet:
        check_arities(patterns, egraph.symbols.copy())
        if len(patterns) == 1:
            return bt_ematch_all(patterns[0], egraph)
        return bt_ematch_multi(patterns, egraph)
