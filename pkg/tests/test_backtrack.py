import pytest

from egraph import ArityError, EGraph, ENode
from engine import BacktrackState, EngineOptions, bt_ematch_all, bt_match, ematch
from query.pattern import Var
from runtime.generators import gen_fgn_classes
from runtime.sexpr import parse_sexpr


def _state(g):
    return BacktrackState(g.class_index())


def test_variable_binds_or_filters(fgn4):
    g, g_class, f_class = fgn4
    a = Var("a")
    assert bt_match(a, g_class, [{}], _state(g)) == [{"?a": g_class}]
    assert bt_match(a, g_class, [{"?a": f_class}], _state(g)) == []
    assert bt_match(a, g_class, [{"?a": g_class}], _state(g)) == [{"?a": g_class}]


def test_fgn4_candidates_are_quadratic(fgn4):
    g, _, f_class = fgn4
    result = bt_ematch_all(parse_sexpr("(f ?a (g ?a))"), g)
    assert len(result) == 4
    assert {row[0] for row in result.rows} == {f_class}
    # 4 f-nodes, then 4 g-nodes under each.
    assert result.stats.candidates == 4 + 16


def test_candidate_growth_ratio():
    counts = []
    for n in (64, 128, 256, 512):
        g, _, _ = gen_fgn_classes(n)
        counts.append(bt_ematch_all(parse_sexpr("(f ?a (g ?a))"), g).stats.candidates)
    for small, large in zip(counts, counts[1:]):
        assert 3.4 <= large / small <= 4.6


@pytest.mark.parametrize("n", [64, 128, 256])
def test_candidates_fit_a_quadratic(n):
    g, _, _ = gen_fgn_classes(n)
    candidates = bt_ematch_all(parse_sexpr("(f ?a (g ?a))"), g).stats.candidates
    assert 0.7 * n * n <= candidates <= 1.3 * n * n


def test_non_nested_gives_one_match_per_node(fgn4):
    g, _, _ = fgn4
    assert len(bt_ematch_all(parse_sexpr("(f ?a ?b)"), g)) == 4
    assert len(bt_ematch_all(parse_sexpr("(zz ?a)"), g)) == 0


def test_duplicate_paths_collapse():
    g = EGraph()
    g.declare("a", 0)
    g.declare("b", 0)
    g.declare("f", 1)
    a, b = g.add(ENode("a")), g.add(ENode("b"))
    fa, fb = g.add(ENode("f", (a,))), g.add(ENode("f", (b,)))
    g.union(fa, fb)
    g.rebuild()
    # f(a) and f(b) both match f(?x) at the same root with different ?x.
    result = bt_ematch_all(parse_sexpr("(f ?x)"), g)
    assert len(result) == 2
    assert len(bt_ematch_all(parse_sexpr("?x"), g)) == g.num_classes


def test_em_engine_checks_arity(fgn4):
    g, _, _ = fgn4
    with pytest.raises(ArityError):
        ematch(parse_sexpr("(f ?a)"), g, EngineOptions(engine="em"))
