"""
Core type definitions for the e-graph.

Pure data structures: e-class ids, e-nodes and the symbol registry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, Tuple

from .errors import ArityError, UnknownSymbolError

# ============================================================================
# IDS
# ============================================================================

# Dense non-negative integer; an index into the union-find arrays.
EClassId = int


# ============================================================================
# E-NODES
# ============================================================================

@dataclass(frozen=True, order=True, slots=True)
class ENode:
    """
    A function symbol applied to e-class ids.

    Constants are symbols of arity 0 with an empty `children` tuple.
    """
    symbol: str
    children: Tuple[EClassId, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.children)

    def map_children(self, fn) -> ENode:
        """Return a copy with `fn` applied to every child id."""
        return ENode(self.symbol, tuple(fn(c) for c in self.children))

    def __str__(self) -> str:
        if not self.children:
            return self.symbol
        return f"({self.symbol} {' '.join(str(c) for c in self.children)})"


# ============================================================================
# SYMBOLS
# ============================================================================

class SymbolTable:
    """
    Registry of function symbols and their arities.

    A symbol keeps the arity it was first declared with; any later use with a
    different number of arguments is an error.
    """

    def __init__(self, arities: Dict[str, int] | None = None):
        self._arities: Dict[str, int] = {}
        for symbol, arity in (arities or {}).items():
            self.declare(symbol, arity)

    def declare(self, symbol: str, arity: int) -> None:
        if arity < 0:
            raise ValueError(f"arity must be non-negative, got {arity} for '{symbol}'")
        known = self._arities.get(symbol)
        if known is None:
            self._arities[symbol] = arity
        elif known != arity:
            raise ArityError(symbol, known, arity)

    def arity(self, symbol: str) -> int:
        try:
            return self._arities[symbol]
        except KeyError:
            raise UnknownSymbolError(symbol) from None

    def check(self, symbol: str, arity: int) -> None:
        """Raise unless `symbol` is declared with exactly `arity`."""
        expected = self.arity(symbol)
        if expected != arity:
            raise ArityError(symbol, expected, arity)

    def copy(self) -> SymbolTable:
        return SymbolTable(dict(self._arities))

    def items(self):
        return self._arities.items()

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._arities

    def __iter__(self) -> Iterator[str]:
        return iter(self._arities)

    def __len__(self) -> int:
        return len(self._arities)

    def __repr__(self) -> str:
        return f"SymbolTable({self._arities!r})"
