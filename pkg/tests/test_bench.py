import pytest

from egraph.core.errors import EngineDisagreement
from engine.base_engine import BaseEngine
from engine.registry import register_engine
from engine.results import MatchSet
from runtime.bench import CSV_FIELDS, BenchRecord, bench, read_csv, summarize, write_csv
from runtime.generators import gen_fgn
from runtime.sexpr import parse_multi


@register_engine("broken")
class _DropsOneRow(BaseEngine):
    """Test double that loses a match, to exercise the agreement gate."""

    def match(self, patterns, egraph):
        from engine.backtrack import bt_ematch_all

        result = bt_ematch_all(patterns[0], egraph)
        rows = set(sorted(result.rows)[1:])
        return MatchSet(result.head, rows)


def test_csv_header():
    assert ",".join(CSV_FIELDS) == "pattern,engine,egraph_nodes,result_count,time_ns,index_time_ns,intersection_steps,candidates"


def test_bench_rows_and_gate():
    g = gen_fgn(16)
    records = bench(g, [parse_multi("(f ?a (g ?a))"), parse_multi("(f ?a ?b)")], repeat=2)
    assert [r.engine for r in records] == ["gj", "gj-noindex", "em"] * 2
    by_engine = {(r.pattern, r.engine): r for r in records}
    gj = by_engine[("(f ?a (g ?a))", "gj")]
    noindex = by_engine[("(f ?a (g ?a))", "gj-noindex")]
    em = by_engine[("(f ?a (g ?a))", "em")]
    assert gj.result_count == em.result_count == noindex.result_count == 16
    assert noindex.time_ns == gj.time_ns - gj.index_time_ns
    assert noindex.time_ns <= gj.time_ns
    assert em.candidates == 16 + 16 * 16
    assert gj.egraph_nodes == 48


def test_disagreement_aborts():
    g = gen_fgn(4)
    with pytest.raises(EngineDisagreement) as info:
        bench(g, [parse_multi("(f ?a (g ?a))")], engines=["gj", "broken"], repeat=1)
    assert len(info.value.only_left) == 1
    assert info.value.only_right == []
    assert "broken" in info.value.diff_lines()[0]


def test_bad_arguments():
    g = gen_fgn(2)
    with pytest.raises(ValueError):
        bench(g, [parse_multi("(f ?a ?b)")], repeat=0)
    with pytest.raises(ValueError):
        bench(g, [parse_multi("(f ?a ?b)")], engines=[])


def test_csv_round_trip(tmp_path):
    records = [
        BenchRecord("(f ?a (g ?a))", "gj", 48, 16, 1200, 300, 40, 0),
        BenchRecord("(f ?a (g ?a))", "gj-noindex", 48, 16, 900, 0, 40, 0),
        BenchRecord("(f ?a, (g ?a))", "em", 48, 16, 5000, 0, 0, 272),
    ]
    path = tmp_path / "out" / "bench.csv"
    write_csv(records, path)
    assert path.read_text().splitlines()[0] == ",".join(CSV_FIELDS)
    assert read_csv(path) == records


def test_summary():
    records = [
        BenchRecord("p1", "gj", 1, 1, 100, 50, 0, 0),
        BenchRecord("p1", "gj-noindex", 1, 1, 50, 0, 0, 0),
        BenchRecord("p1", "em", 1, 1, 200, 0, 0, 0),
        BenchRecord("p2", "gj", 1, 1, 400, 100, 0, 0),
        BenchRecord("p2", "gj-noindex", 1, 1, 300, 0, 0, 0),
        BenchRecord("p2", "em", 1, 1, 200, 0, 0, 0),
    ]
    with_index, without_index = summarize(records)
    assert with_index.mode == "+index"
    assert (with_index.gj_wins, with_index.em_wins) == (1, 1)
    assert with_index.total == pytest.approx(400 / 500)
    assert with_index.best == pytest.approx(2.0)
    assert with_index.worst == pytest.approx(0.5)
    assert with_index.gmean == pytest.approx(1.0)
    assert without_index.total == pytest.approx(400 / 350)
    assert (without_index.gj_wins, without_index.em_wins) == (1, 1)
    assert without_index.best == pytest.approx(4.0)
