"""
Synthetic e-graphs.

gen_fgn(N) builds the family where every term f(i, g(j)) with i, j in 1..N is
represented with only 3N e-nodes:

    constants 1..N      N singleton classes
    g(1) .. g(N)        all in one class (call it G)
    f(1, G) .. f(N, G)  all in one class

Matching f(?a, (g ?a)) here yields N substitutions while a top-down matcher
visits N^2 e-nodes.
"""

from __future__ import annotations

from typing import Tuple

from egraph.core.types import EClassId, ENode
from egraph.egraph import EGraph
from infra.logger import get_logger

logger = get_logger(__name__)


def gen_fgn_classes(n: int) -> Tuple[EGraph, EClassId, EClassId]:
    """(e-graph, class of the g-nodes, class of the f-nodes)"""
    if n < 1:
        raise ValueError(f"gen_fgn needs N >= 1, got {n}")
    egraph = EGraph()
    egraph.declare("g", 1)
    egraph.declare("f", 2)

    constants = []
    for i in range(1, n + 1):
        egraph.declare(str(i), 0)
        constants.append(egraph.add(ENode(str(i))))

    g_class = egraph.add(ENode("g", (constants[0],)))
    for c in constants[1:]:
        g_class = egraph.union(g_class, egraph.add(ENode("g", (c,))))
    egraph.rebuild()

    f_class = egraph.add(ENode("f", (constants[0], g_class)))
    for c in constants[1:]:
        f_class = egraph.union(f_class, egraph.add(ENode("f", (c, g_class))))
    egraph.rebuild()

    logger.debug("gen_fgn(%d): %d e-node(s), %d class(es)", n, egraph.num_nodes, egraph.num_classes)
    return egraph, egraph.find(g_class), egraph.find(f_class)


def gen_fgn(n: int) -> EGraph:
    return gen_fgn_classes(n)[0]
