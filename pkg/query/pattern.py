"""
Pattern terms: variables and function applications.

A ground term is simply an App with no variables anywhere below it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Tuple, Union

from egraph.core.errors import ArityError
from egraph.core.types import SymbolTable


@dataclass(frozen=True)
class Var:
    """Pattern variable; `name` excludes the `?` sigil."""
    name: str

    @property
    def cq_name(self) -> str:
        """Name used for this variable inside conjunctive queries and substitutions."""
        return f"?{self.name}"

    def __str__(self) -> str:
        return self.cq_name


@dataclass(frozen=True)
class App:
    symbol: str
    args: Tuple["Pattern", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return f"({self.symbol} {' '.join(str(a) for a in self.args)})"


Pattern = Union[Var, App]


class PatternKind(Enum):
    """Shape classes that decide whether a pattern needs a join at all."""
    BARE_VARIABLE = "bare_variable"
    NON_NESTED = "non_nested"
    NESTED = "nested"

    def __str__(self) -> str:
        return self.value


def is_degenerate(pattern: Pattern) -> PatternKind:
    """
    Classify a pattern.

    NON_NESTED is a single App whose arguments are all variables (repeats
    allowed, e.g. f(?a, ?a)); its query has a single atom and is answered
    by a scan.
    """
    if isinstance(pattern, Var):
        return PatternKind.BARE_VARIABLE
    if all(isinstance(arg, Var) for arg in pattern.args):
        return PatternKind.NON_NESTED
    return PatternKind.NESTED


def iter_subpatterns(pattern: Pattern) -> Iterator[Pattern]:
    """Pre-order traversal."""
    stack: List[Pattern] = [pattern]
    while stack:
        p = stack.pop()
        yield p
        if isinstance(p, App):
            stack.extend(reversed(p.args))


def pattern_vars(patterns: Pattern | Iterable[Pattern]) -> List[Var]:
    """Distinct variables in first-occurrence (pre-order, left-to-right) order."""
    if isinstance(patterns, (Var, App)):
        patterns = [patterns]
    seen: Dict[str, Var] = {}
    for pattern in patterns:
        for p in iter_subpatterns(pattern):
            if isinstance(p, Var) and p.name not in seen:
                seen[p.name] = p
    return list(seen.values())


def app_count(pattern: Pattern) -> int:
    return sum(1 for p in iter_subpatterns(pattern) if isinstance(p, App))


def pattern_depth(pattern: Pattern) -> int:
    """Variables and constants have depth 0; f(?a) has depth 1."""
    if isinstance(pattern, Var) or not pattern.args:
        return 0
    return 1 + max(pattern_depth(arg) for arg in pattern.args)


def is_ground(pattern: Pattern) -> bool:
    return not pattern_vars(pattern)


def check_arities(patterns: Pattern | Iterable[Pattern], symbols: SymbolTable | None = None) -> SymbolTable:
    """
    Check that every symbol is applied consistently.

    With `symbols`, arities must also agree with that registry (unknown
    symbols are declared into it). Returns the table that was used.

    Raises:
        ArityError: Same symbol with two different arities
    """
    if isinstance(patterns, (Var, App)):
        patterns = [patterns]
    table = symbols if symbols is not None else SymbolTable()
    for pattern in patterns:
        for p in iter_subpatterns(pattern):
            if isinstance(p, App):
                if p.symbol in table and table.arity(p.symbol) != len(p.args):
                    raise ArityError(p.symbol, table.arity(p.symbol), len(p.args))
                table.declare(p.symbol, len(p.args))
    return table
