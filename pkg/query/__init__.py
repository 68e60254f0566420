"""
Patterns, their compilation to conjunctive queries, and variable-ordering plans.
"""

from .pattern import (
    App,
    Pattern,
    PatternKind,
    Var,
    app_count,
    check_arities,
    is_degenerate,
    is_ground,
    pattern_depth,
    pattern_vars,
)
from .compiler import Atom, ConjunctiveQuery, VarRole, compile, compile_multi, root_name
from .planner import (
    PlanStats,
    VariableOrdering,
    agm_bound,
    functional_dependency_levels,
    output_sensitive_bound,
    plan,
    plan_stats,
    required_permutations,
)

__all__ = [
    "App",
    "Pattern",
    "PatternKind",
    "Var",
    "app_count",
    "check_arities",
    "is_degenerate",
    "is_ground",
    "pattern_depth",
    "pattern_vars",
    "Atom",
    "ConjunctiveQuery",
    "VarRole",
    "compile",
    "compile_multi",
    "root_name",
    "PlanStats",
    "VariableOrdering",
    "agm_bound",
    "functional_dependency_levels",
    "output_sensitive_bound",
    "plan",
    "plan_stats",
    "required_permutations",
]
