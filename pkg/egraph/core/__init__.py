"""
Core types and errors for the e-graph.
"""

from .types import EClassId, ENode, SymbolTable
from .errors import (
    ArityError,
    AssignmentSpaceError,
    DirtyEGraphError,
    EngineDisagreement,
    InvalidIdError,
    InvalidOrderingError,
    SexprError,
    UnknownSymbolError,
)

__all__ = [
    "EClassId",
    "ENode",
    "SymbolTable",
    "ArityError",
    "AssignmentSpaceError",
    "DirtyEGraphError",
    "EngineDisagreement",
    "InvalidIdError",
    "InvalidOrderingError",
    "SexprError",
    "UnknownSymbolError",
]
