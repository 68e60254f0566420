"""
Fresh-name generation for auxiliary query variables.

Deterministic and resettable so compiled queries are reproducible.
"""

import itertools
from typing import Iterator


class FreshNameSupply:
    """
    Generates unique, sequential names like `$1`, `$2`, ...

    A thin wrapper around itertools.count with a fixed prefix. Sharing one
    supply across several patterns keeps their auxiliaries disjoint.
    """

    def __init__(self, prefix: str = "$", start: int = 1):
        """
        Args:
            prefix: Prepended to every generated name
            start: The first index to generate (default: 1)
        """
        self.prefix = prefix
        self._counter: Iterator[int] = itertools.count(start)

    def fresh(self) -> str:
        """Generate the next unique name."""
        return f"{self.prefix}{next(self._counter)}"

    def reset(self, start: int = 1) -> None:
        self._counter = itertools.count(start)
