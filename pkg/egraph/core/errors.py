"""
Exception types shared across the e-graph, query and engine packages.

Every error subclasses a builtin so callers can catch broadly
(`except ValueError`) or precisely (`except ArityError`).
"""

from __future__ import annotations

from typing import Any, Iterable


class UnknownSymbolError(KeyError):
    """A function symbol was used before being declared (or is absent from a database)."""

    def __init__(self, symbol: str):
        super().__init__(symbol)
        self.symbol = symbol

    def __str__(self) -> str:
        return f"unknown symbol '{self.symbol}'"


class ArityError(ValueError):
    """A symbol was applied to the wrong number of arguments."""

    def __init__(self, symbol: str, expected: int, got: int):
        super().__init__(f"symbol '{symbol}' has arity {expected}, got {got} argument(s)")
        self.symbol = symbol
        self.expected = expected
        self.got = got


class InvalidIdError(IndexError):
    """An e-class id that was never allocated."""

    def __init__(self, eclass: Any, size: int):
        super().__init__(f"invalid e-class id {eclass!r} (allocated ids: 0..{size - 1})")
        self.eclass = eclass


class DirtyEGraphError(RuntimeError):
    """An operation that needs a rebuilt e-graph saw pending unions."""


class InvalidOrderingError(ValueError):
    """A variable ordering is not valid for a conjunctive query."""


class SexprError(ValueError):
    """Malformed s-expression text; `position` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class AssignmentSpaceError(RuntimeError):
    """The naive evaluator refused an instance larger than its cap."""


class EngineDisagreement(RuntimeError):
    """Two matching engines returned different results for the same pattern."""

    def __init__(self, pattern: str, engines: tuple[str, str], only_left: Iterable, only_right: Iterable):
        self.pattern = pattern
        self.engines = engines
        self.only_left = sorted(only_left)
        self.only_right = sorted(only_right)
        super().__init__(
            f"engines {engines[0]} and {engines[1]} disagree on {pattern}: "
            f"{len(self.only_left)} row(s) only in {engines[0]}, "
            f"{len(self.only_right)} row(s) only in {engines[1]}"
        )

    def diff_lines(self, limit: int = 20) -> list[str]:
        """Human-readable symmetric difference, truncated to `limit` rows per side."""
        lines = [str(self)]
        for tag, rows in ((f"-{self.engines[0]}", self.only_left), (f"+{self.engines[1]}", self.only_right)):
            for row in rows[:limit]:
                lines.append(f"  {tag} {row}")
            if len(rows) > limit:
                lines.append(f"  {tag} ... {len(rows) - limit} more")
        return lines
