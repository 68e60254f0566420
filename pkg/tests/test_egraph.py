import json

import pytest
from hypothesis import given, settings, strategies as st

from egraph import ArityError, DirtyEGraphError, EGraph, ENode, InvalidIdError, UnknownSymbolError
from egraph.unionfind import UnionFind
from query.pattern import App
from relational.database import egraph_to_database
from runtime.generators import gen_fgn, gen_fgn_classes

from strategies import egraphs


def _leaf_graph():
    g = EGraph()
    for symbol, arity in (("a", 0), ("b", 0), ("f", 1), ("p", 2)):
        g.declare(symbol, arity)
    return g


def test_union_find_path_compression_and_union_by_size():
    uf = UnionFind()
    ids = [uf.make_set() for _ in range(4)]
    uf.union(ids[0], ids[1])
    root = uf.union(ids[2], ids[0])
    assert uf.find(ids[1]) == uf.find(ids[2]) == root
    assert root in (ids[0], ids[1])
    assert uf.is_canonical(root)
    assert sorted(uf.roots()) == sorted([root, ids[3]])


def test_find_unknown_id_raises():
    g = EGraph()
    with pytest.raises(InvalidIdError):
        g.find(7)


def test_add_is_hashconsed():
    g = _leaf_graph()
    a = g.add(ENode("a"))
    assert g.add(ENode("a")) == a
    fa = g.add(ENode("f", (a,)))
    assert g.add(ENode("f", (a,))) == fa
    assert g.num_nodes == 2


def test_add_checks_symbols():
    g = _leaf_graph()
    a = g.add(ENode("a"))
    with pytest.raises(UnknownSymbolError):
        g.add(ENode("q", (a,)))
    with pytest.raises(ArityError):
        g.add(ENode("f", (a, a)))
    with pytest.raises(ArityError):
        g.declare("f", 2)


def test_union_then_rebuild_restores_congruence():
    g = _leaf_graph()
    a, b = g.add(ENode("a")), g.add(ENode("b"))
    fa, fb = g.add(ENode("f", (a,))), g.add(ENode("f", (b,)))
    assert g.find(fa) != g.find(fb)

    g.union(a, b)
    assert not g.is_clean
    g.rebuild()
    assert g.is_clean
    assert g.find(fa) == g.find(fb)
    # f(a) and f(b) collapse to one canonical e-node.
    assert g.num_nodes == 3
    assert g.num_classes == 2


def test_congruence_propagates_upwards():
    g = _leaf_graph()
    a, b = g.add(ENode("a")), g.add(ENode("b"))
    ffa = g.add(ENode("f", (g.add(ENode("f", (a,))),)))
    ffb = g.add(ENode("f", (g.add(ENode("f", (b,))),)))
    g.union(a, b)
    g.rebuild()
    assert g.find(ffa) == g.find(ffb)


def test_union_of_equal_classes_is_a_noop():
    g = _leaf_graph()
    a = g.add(ENode("a"))
    version = g.version
    assert g.union(a, a) == a
    assert g.version == version
    assert g.rebuild() == 0


def test_canonicalize_and_lookup():
    g = _leaf_graph()
    a, b = g.add(ENode("a")), g.add(ENode("b"))
    pab = g.add(ENode("p", (a, b)))
    g.union(a, b)
    g.rebuild()
    canon = g.canonicalize(ENode("p", (a, b)))
    assert canon.children == (g.find(a), g.find(a))
    assert g.lookup(ENode("p", (b, a))) == g.find(pab)
    assert g.lookup(ENode("f", (a,))) is None
    assert g.lookup(ENode("zzz")) is None


def test_dirty_egraph_is_rejected_downstream():
    g = _leaf_graph()
    a, b = g.add(ENode("a")), g.add(ENode("b"))
    g.union(a, b)
    with pytest.raises(DirtyEGraphError):
        egraph_to_database(g)


def test_add_term_declares_symbols():
    g = EGraph()
    root = g.add_term(App("+", (App("1"), App("2"))))
    assert g.symbols.arity("+") == 2
    assert g.lookup(ENode("+", (g.add(ENode("1")), g.add(ENode("2"))))) == root


def test_class_index_groups_by_symbol(fgn4):
    g, g_class, f_class = fgn4
    index = g.class_index()
    assert len(index[f_class]["f"]) == 4
    assert len(index[g_class]["g"]) == 4
    assert "g" not in index[f_class]


def test_gen_fgn_sizes():
    g = gen_fgn(1)
    assert (g.num_nodes, g.num_classes) == (3, 3)
    g, g_class, f_class = gen_fgn_classes(8)
    assert g.num_nodes == 24
    assert g.num_classes == 8 + 2
    assert g_class != f_class
    with pytest.raises(ValueError):
        gen_fgn(0)


def test_json_round_trip(tmp_path, fgn4):
    g, _, _ = fgn4
    path = tmp_path / "fgn4.json"
    g.save_json(path)
    data = json.loads(path.read_text())
    assert set(data) == {"nodes", "unions", "symbols"}

    loaded = EGraph.load_json(path)
    assert (loaded.num_nodes, loaded.num_classes) == (g.num_nodes, g.num_classes)
    assert dict(loaded.symbols.items()) == dict(g.symbols.items())


def test_from_dict_rejects_forward_references():
    with pytest.raises(ValueError):
        EGraph.from_dict({"nodes": [["f", [1]], ["a", []]], "unions": []})
    with pytest.raises(ValueError):
        EGraph.from_dict({"nodes": [["a", []]], "unions": [[0, 3]]})


@settings(max_examples=60, deadline=None)
@given(egraphs())
def test_rebuilt_egraph_is_canonical(g):
    seen = set()
    for eclass, node in g.iter_nodes():
        assert g.find(eclass) == eclass
        assert g.canonicalize(node) == node
        assert node not in seen
        seen.add(node)
        assert g.lookup(node) == eclass
    assert len(seen) == g.num_nodes


@settings(max_examples=40, deadline=None)
@given(egraphs())
def test_dump_replays_to_same_shape(g):
    loaded = EGraph.from_dict(g.to_dict())
    assert (loaded.num_nodes, loaded.num_classes) == (g.num_nodes, g.num_classes)


def _congruence_closure(added, unions):
    """Merge-until-fixpoint closure over the added (node, id) pairs."""
    parent = {i: i for _, i in added}

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for a, b in unions:
        parent[find(a)] = find(b)
    changed = True
    while changed:
        changed = False
        representative = {}
        for node, i in added:
            key = (node.symbol, tuple(find(c) for c in node.children))
            j = representative.setdefault(key, i)
            if find(i) != find(j):
                parent[find(i)] = find(j)
                changed = True
    return find


def _partition(ids, find):
    blocks = {}
    for i in ids:
        blocks.setdefault(find(i), set()).add(i)
    return {frozenset(block) for block in blocks.values()}


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_rebuild_agrees_with_brute_force_closure(rng):
    g = _leaf_graph()
    g.declare("c", 0)
    added = []
    for symbol in ("a", "b", "c"):
        node = ENode(symbol)
        added.append((node, g.add(node)))
    while len(added) < 100:
        symbol = rng.choice(["f", "p", "p"])
        children = tuple(rng.choice(added)[1] for _ in range(1 if symbol == "f" else 2))
        node = ENode(symbol, children)
        added.append((node, g.add(node)))
    ids = sorted({i for _, i in added})
    unions = [(rng.choice(ids), rng.choice(ids)) for _ in range(20)]
    for a, b in unions:
        g.union(a, b)
    g.rebuild()

    oracle = _congruence_closure(added, unions)
    assert _partition(ids, g.find) == _partition(ids, oracle)
