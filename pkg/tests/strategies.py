"""
Hypothesis strategies: small e-graphs, patterns over their signature, and
random binary relations for join tests.
"""

from __future__ import annotations

import math
from typing import Dict, List, Tuple

from hypothesis import strategies as st

from egraph import EGraph, ENode
from query.pattern import App, Pattern, Var
from relational.database import Database

SIGNATURE: Dict[str, int] = {"a": 0, "b": 0, "c": 0, "g": 1, "h": 1, "f": 2}
CONSTANTS = [s for s, arity in SIGNATURE.items() if arity == 0]
VAR_NAMES = ["x", "y", "z"]


@st.composite
def egraphs(draw, max_apps: int = 40, max_unions: int = 8) -> EGraph:
    """Rebuilt e-graphs over SIGNATURE with at most 3 + max_apps e-nodes before unions."""
    egraph = EGraph()
    for symbol, arity in SIGNATURE.items():
        egraph.declare(symbol, arity)

    ids = [egraph.add(ENode(c)) for c in draw(st.lists(st.sampled_from(CONSTANTS), min_size=1, max_size=3, unique=True))]
    for _ in range(draw(st.integers(0, max_apps))):
        symbol = draw(st.sampled_from(["g", "h", "f", "f"]))
        children = tuple(draw(st.sampled_from(ids)) for _ in range(SIGNATURE[symbol]))
        ids.append(egraph.add(ENode(symbol, children)))

    for _ in range(draw(st.integers(0, max_unions))):
        egraph.union(draw(st.sampled_from(ids)), draw(st.sampled_from(ids)))
    egraph.rebuild()
    return egraph


@st.composite
def patterns(draw, max_depth: int = 3, max_vars: int = 3, allow_bare: bool = True) -> Pattern:
    """Patterns over SIGNATURE with depth <= max_depth and at most max_vars distinct variables."""
    names = VAR_NAMES[:max_vars]

    def build(depth: int, top: bool) -> Pattern:
        choices = ["var", "const"] if depth == 0 else ["var", "const", "g", "h", "f", "f"]
        if top:
            choices = [c for c in choices if c in ("g", "h", "f")] + (["var"] if allow_bare else [])
            if not choices:
                choices = ["var"] if allow_bare else ["const"]
        kind = draw(st.sampled_from(choices))
        if kind == "var":
            return Var(draw(st.sampled_from(names)))
        if kind == "const":
            return App(draw(st.sampled_from(CONSTANTS)))
        return App(kind, tuple(build(depth - 1, False) for _ in range(SIGNATURE[kind])))

    return build(max_depth, True)


@st.composite
def binary_relation(draw, n: int, domain: int) -> List[Tuple[int, int]]:
    """Exactly `n` distinct pairs over range(domain)."""
    rng = draw(st.randoms(use_true_random=False))
    pairs = [(i, j) for i in range(domain) for j in range(domain)]
    return rng.sample(pairs, n)


@st.composite
def triangle_databases(draw, max_n: int = 256) -> Tuple[Database, int]:
    """(database with R, S, T of exactly N tuples each, N)"""
    n = draw(st.integers(1, max_n))
    domain = draw(st.integers(math.isqrt(n - 1) + 1, max(math.isqrt(n - 1) + 1, 2 * math.isqrt(n) + 2)))
    rows = {name: draw(binary_relation(n, domain)) for name in ("R", "S", "T")}
    return Database.from_tuples(rows), n


@st.composite
def relations_with_layouts(draw, max_tuples: int = 1000, max_arity: int = 4):
    """(arity, distinct rows, layout) where the layout is any grouping of any column permutation."""
    arity = draw(st.integers(1, max_arity))
    rng = draw(st.randoms(use_true_random=False))
    domain = draw(st.integers(1, 12))
    target = min(draw(st.integers(0, max_tuples)), domain ** arity)
    rows = set()
    while len(rows) < target:
        rows.add(tuple(rng.randrange(domain) for _ in range(arity)))

    order = draw(st.permutations(list(range(arity))))
    cuts = draw(st.lists(st.booleans(), min_size=arity - 1, max_size=arity - 1))
    levels, current = [], [order[0]]
    for column, cut in zip(order[1:], cuts):
        if cut:
            levels.append(tuple(current))
            current = []
        current.append(column)
    levels.append(tuple(current))
    return arity, rows, tuple(levels)
