"""
Matching engines over a rebuilt e-graph.

- gj: relational e-matching (compile to a conjunctive query, generic join)
- em: backtracking e-matching, the classic top-down baseline
- naive: nested-loop conjunctive-query evaluation, the oracle for tiny inputs

Quick Start:
    from engine import ematch, EngineOptions
    from runtime.sexpr import parse_sexpr

    matches = ematch(parse_sexpr("(f ?a (g ?a))"), egraph)
    baseline = ematch(parse_sexpr("(f ?a (g ?a))"), egraph, EngineOptions(engine="em"))
    assert matches == baseline
"""

from .results import JoinStats, MatchRow, MatchSet, Substitution
from .base_engine import BaseEngine
from .registry import register_engine, registered_engines, resolve_engine
from .options import EngineOptions
from .factory import create_engine
from .generic_join import eval_cq, intersect
from .fast_path import eval_nonnested
from .matcher import GenericJoinEngine, RelationalMatcher, ematch
from .backtrack import BacktrackEngine, BacktrackState, bt_ematch_all, bt_ematch_multi, bt_match
from .naive import NaiveEngine, naive_cq_eval

__all__ = [
    "JoinStats",
    "MatchRow",
    "MatchSet",
    "Substitution",
    "BaseEngine",
    "register_engine",
    "registered_engines",
    "resolve_engine",
    "EngineOptions",
    "create_engine",
    "eval_cq",
    "intersect",
    "eval_nonnested",
    "GenericJoinEngine",
    "RelationalMatcher",
    "ematch",
    "BacktrackEngine",
    "BacktrackState",
    "bt_ematch_all",
    "bt_ematch_multi",
    "bt_match",
    "NaiveEngine",
    "naive_cq_eval",
]
