"""
E-graph core: hash-consed e-nodes, union-find over e-class ids, rebuilding.

Quick Start:
    from egraph import EGraph, ENode

    g = EGraph()
    g.declare("f", 2); g.declare("a", 0)
    a = g.add(ENode("a"))
    fa = g.add(ENode("f", (a, a)))
    g.rebuild()
"""

from .core import (
    ArityError,
    DirtyEGraphError,
    EClassId,
    ENode,
    InvalidIdError,
    SymbolTable,
    UnknownSymbolError,
)
from .unionfind import UnionFind
from .egraph import EGraph

__all__ = [
    "EGraph",
    "UnionFind",
    "EClassId",
    "ENode",
    "SymbolTable",
    "ArityError",
    "DirtyEGraphError",
    "InvalidIdError",
    "UnknownSymbolError",
]
