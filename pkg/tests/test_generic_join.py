import itertools

import pytest
from hypothesis import given, settings, strategies as st

from egraph import ENode
from egraph.core.errors import InvalidOrderingError
from engine import EngineOptions, ematch, eval_cq, eval_nonnested, intersect
from engine.results import JoinStats
from query.compiler import Atom, ConjunctiveQuery, compile
from query.planner import VariableOrdering, plan
from relational.database import Database, egraph_to_database
from relational.trie import TrieCache
from runtime.generators import gen_fgn_classes
from runtime.sexpr import parse_sexpr

from strategies import triangle_databases

TRIANGLE = ConjunctiveQuery(
    ("x", "y", "z"),
    (Atom("R", ("x", "y")), Atom("S", ("y", "z")), Atom("T", ("z", "x"))),
    {},
)


def test_intersect():
    assert sorted(intersect([{1: {}, 2: {}, 3: {}}])) == [1, 2, 3]
    assert intersect([{1: {}}, {2: {}}]) == []
    stats = JoinStats()
    assert intersect([{1: {}, 2: {}, 3: {}}, {2: {}, 3: {}, 4: {}}, {3: {}, 5: {}}], stats) == [3]
    # Iterates the 2-key node and looks up the other two.
    assert stats.intersection_steps == 4
    with pytest.raises(ValueError):
        intersect([])


def test_fgn4_exact_matches(fgn4):
    g, _, f_class = fgn4
    result = ematch(parse_sexpr("(f ?a (g ?a))"), g)
    assert len(result) == 4
    assert {s["root"] for s in result} == {f_class}


def test_fgn4_every_constant_pairs_with_itself(fgn4):
    g, _, f_class = fgn4
    constants = {g.lookup(ENode(str(i))) for i in range(1, 5)}
    result = ematch(parse_sexpr("(f ?a (g ?a))"), g)
    assert {s["?a"] for s in result} == constants
    cross = ematch(parse_sexpr("(f ?a (g ?b))"), g)
    assert len(cross) == 16
    assert {(s["?a"], s["?b"]) for s in cross} == set(itertools.product(constants, constants))


@pytest.mark.parametrize("n", [4, 64, 1024])
def test_fgn4_family_yields_n_matches_with_one_root(n):
    g, _, f_class = gen_fgn_classes(n)
    result = ematch(parse_sexpr("(f ?a (g ?a))"), g)
    assert len(result) == n
    assert all(row[0] == f_class for row in result.rows)


def test_values_enumerated_grows_linearly():
    counts = []
    for n in (64, 128, 256, 512):
        g, _, _ = gen_fgn_classes(n)
        counts.append(ematch(parse_sexpr("(f ?a (g ?a))"), g).stats.values_enumerated)
    for small, large in zip(counts, counts[1:]):
        assert 1.5 <= large / small <= 2.5


def test_empty_database_gives_empty_result():
    db = Database.from_tuples({name: [] for name in ("R", "S", "T")}, arities={"R": 2, "S": 2, "T": 2})
    assert len(eval_cq(TRIANGLE, db)) == 0


def test_missing_relation_is_an_error():
    db = Database.from_tuples({"R": [(1, 2)]})
    with pytest.raises(KeyError):
        eval_cq(TRIANGLE, db, VariableOrdering.parse("x,y,z"))


def test_invalid_ordering_is_rejected():
    db = Database.from_tuples({"R": [(1, 2)], "S": [(2, 3)], "T": [(3, 1)]})
    with pytest.raises(InvalidOrderingError):
        eval_cq(TRIANGLE, db, VariableOrdering.parse("x,y"))


def test_fast_path_filters_repeated_columns():
    db = Database.from_tuples({"f": [(1, 7, 7), (2, 7, 8)]})
    result = eval_nonnested(parse_sexpr("(f ?a ?a)"), db)
    assert result.head == ("root", "?a")
    assert result.rows == {(1, 7)}
    assert len(eval_nonnested(parse_sexpr("(f ?a ?b)"), db)) == 2
    with pytest.raises(ValueError):
        eval_nonnested(parse_sexpr("(f ?a (g ?a))"), db)


def test_fast_path_matches_generic_join():
    db = Database.from_tuples({"f": [(1, 7, 7), (2, 7, 8), (3, 8, 8), (4, 9, 7)]})
    q = compile(parse_sexpr("(f ?a ?a)"))
    assert eval_cq(q, db) == eval_nonnested(parse_sexpr("(f ?a ?a)"), db)


def test_bare_variable_matches_every_class(fgn4):
    g, _, _ = fgn4
    result = ematch(parse_sexpr("?x"), g)
    assert result.head == ("root", "?x")
    assert result.rows == {(c, c) for c in g.class_ids()}


def test_absent_symbol_matches_nothing(fgn4):
    g, _, _ = fgn4
    result = ematch(parse_sexpr("(zz ?a (g ?a))"), g)
    assert len(result) == 0
    assert result.head == ("root", "?a")


FD_SIZES = [512, 1024, 2048, 4096]


def _fd_instance(n):
    """f(g(a), h(a)) with every relation of size n and args -> id intact."""
    rows = {
        "g": [(10_000 + i, i) for i in range(n)],
        "h": [(20_000 + i, i) for i in range(n)],
        "f": [(30_000 + i, 10_000 + i, 20_000 + i) for i in range(n)],
    }
    return Database.from_tuples(rows)


def _fd_work(n):
    db = _fd_instance(n)
    q = compile(parse_sexpr("(f (g ?a) (h ?a))"))
    ordering = plan(q, db)
    assert ordering.groups[0] == ("?a",)
    result = eval_cq(q, db, ordering)
    assert len(result) == n
    return result.stats


@pytest.mark.parametrize("n", FD_SIZES)
def test_fd_ordering_gives_singleton_domains(n):
    stats = _fd_work(n)
    assert stats.level_max_domain["?a"] == n
    for label in ("$1", "$2", "root"):
        assert stats.level_max_domain[label] <= 1


def test_fd_ordering_work_grows_linearly():
    work = []
    for n in FD_SIZES:
        stats = _fd_work(n)
        work.append(stats.values_enumerated + stats.intersection_steps)
    for small, large in zip(work, work[1:]):
        assert 1.5 <= large / small <= 2.5


def test_broken_functional_dependency_trips_the_level_check():
    # Two g-nodes share a child yet live in different classes.
    db = Database.from_tuples({"g": [(10, 1), (11, 1)], "f": [(20, 10), (21, 11)]})
    q = compile(parse_sexpr("(f (g ?a))"))
    with pytest.raises(AssertionError, match="functional dependency"):
        eval_cq(q, db, VariableOrdering.parse("?a,$1,root"))


def test_explicit_ordering_overrides_the_plan(fgn4):
    g, _, _ = fgn4
    pattern = parse_sexpr("(f ?a (g ?a))")
    planned = ematch(pattern, g)
    forced = ematch(pattern, g, EngineOptions(ordering="root,$1,?a"))
    assert planned == forced


def test_trie_cache_is_reused_across_queries(fgn4):
    g, _, _ = fgn4
    db = egraph_to_database(g)
    cache = TrieCache()
    q = compile(parse_sexpr("(f ?a (g ?a))"))
    first = eval_cq(q, db, cache=cache)
    second = eval_cq(q, db, cache=cache)
    assert first == second
    assert second.stats.index_build_ns == 0
    assert cache.hits == 2


def _brute_force_triangles(db):
    r, s, t = (db.relation(name).tuples for name in ("R", "S", "T"))
    successors = {}
    for y, z in s:
        successors.setdefault(y, []).append(z)
    return {(x, y, z) for (x, y) in r for z in successors.get(y, ()) if (z, x) in t}


@settings(max_examples=200, deadline=None)
@given(triangle_databases(max_n=256))
def test_triangle_output_within_agm_bound(case):
    db, n = case
    result = eval_cq(TRIANGLE, db)
    assert result.rows == _brute_force_triangles(db)
    assert len(result) <= n ** 1.5
    assert result.stats.intersection_steps <= 8 * n ** 1.5


@settings(max_examples=100, deadline=None)
@given(triangle_databases(max_n=40), st.permutations(["x", "y", "z"]))
def test_triangle_ordering_invariance(case, order):
    db, _ = case
    assert eval_cq(TRIANGLE, db, VariableOrdering.of(*order)) == eval_cq(TRIANGLE, db)
