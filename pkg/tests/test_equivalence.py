"""Cross-engine agreement on random e-graphs and patterns."""

from hypothesis import HealthCheck, given, settings, strategies as st

from engine import EngineOptions, ematch, eval_cq, eval_nonnested
from query.compiler import compile
from query.pattern import PatternKind, Var, is_degenerate
from query.planner import VariableOrdering
from relational.database import egraph_to_database

from strategies import egraphs, patterns

GJ = EngineOptions(engine="gj")
GJ_NO_FAST_PATH = EngineOptions(engine="gj", use_fast_path=False)
EM = EngineOptions(engine="em")
NAIVE = EngineOptions(engine="naive")


@settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(egraphs(), patterns(max_depth=3, max_vars=3))
def test_three_engines_agree(g, pattern):
    relational = ematch(pattern, g, GJ)
    backtracking = ematch(pattern, g, EM)
    naive = ematch(pattern, g, NAIVE)
    assert relational.head == backtracking.head == naive.head
    assert relational.rows == backtracking.rows
    assert relational.rows == naive.rows


@settings(max_examples=500, deadline=None)
@given(egraphs(), patterns(max_depth=1, max_vars=3, allow_bare=False))
def test_fast_path_agrees_with_generic_join(g, pattern):
    if is_degenerate(pattern) is not PatternKind.NON_NESTED:
        return
    db = egraph_to_database(g)
    if pattern.symbol not in db:
        return
    assert eval_nonnested(pattern, db) == eval_cq(compile(pattern, g.symbols.copy()), db)
    assert ematch(pattern, g, GJ) == ematch(pattern, g, GJ_NO_FAST_PATH)


@settings(max_examples=100, deadline=None)
@given(egraphs(), patterns(max_depth=3, max_vars=3, allow_bare=False), st.randoms(use_true_random=False))
def test_ordering_invariance(g, pattern, rng):
    q = compile(pattern, g.symbols.copy())
    db = egraph_to_database(g)
    if any(symbol not in db for symbol in q.symbols()):
        return
    variables = q.variables()
    shuffled = list(variables)
    rng.shuffle(shuffled)
    orderings = [
        None,
        VariableOrdering.of(*reversed(variables)),
        VariableOrdering.of(*shuffled),
    ]
    results = [eval_cq(q, db, ordering) for ordering in orderings]
    assert results[0] == results[1] == results[2]
    # A user-supplied ordering through the engine options.
    forced = ematch(pattern, g, EngineOptions(ordering=",".join(shuffled)))
    assert forced == results[0]


def test_bare_variable_agrees_everywhere(fgn4):
    g, _, _ = fgn4
    results = [ematch(Var("x"), g, options) for options in (GJ, EM, NAIVE)]
    assert results[0] == results[1] == results[2]
