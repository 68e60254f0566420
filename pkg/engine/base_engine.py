"""
Base engine interface for e-matching.

Every engine answers the same question: given a rebuilt e-graph and one or
more patterns matched under a shared substitution, return the MatchSet with
head (root, root_2, ..., pattern variables in first-occurrence order).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Sequence

from egraph.egraph import EGraph
from query.pattern import Pattern

from .results import MatchSet


class BaseEngine(ABC):
    """
    Abstract base class for matching engines.

    Subclasses must implement:
    - match(): answer a (multi-)pattern over an e-graph

    Attributes:
        name: Registry key or display name used in logs and benchmark rows
    """

    def __init__(self, name: str | None = None):
        self.name = name or self.__class__.__name__

    @abstractmethod
    def match(self, patterns: Sequence[Pattern], egraph: EGraph) -> MatchSet:
        """
        Match `patterns` jointly against `egraph`.

        Args:
            patterns: One pattern, or several sharing variables
            egraph: Rebuilt e-graph

        Raises:
            DirtyEGraphError: `egraph` has pending unions
            ArityError: a pattern disagrees with the e-graph's symbol arities
        """

    def reset(self) -> None:
        """Drop any caches so the next match() starts cold."""

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name='{self.name}')"
