"""
UnionFind - disjoint sets over dense integer ids.

Path compression plus union-by-size; ids are allocated sequentially by
make_set() and never freed.
"""

from __future__ import annotations

from typing import List

from .core.errors import InvalidIdError
from .core.types import EClassId


class UnionFind:
    def __init__(self) -> None:
        self._parent: List[EClassId] = []
        self._size: List[int] = []

    def __len__(self) -> int:
        """Number of ids ever created."""
        return len(self._parent)

    def make_set(self) -> EClassId:
        new_id = len(self._parent)
        self._parent.append(new_id)
        self._size.append(1)
        return new_id

    def is_valid(self, i: object) -> bool:
        return isinstance(i, int) and not isinstance(i, bool) and 0 <= i < len(self._parent)

    def find(self, i: EClassId) -> EClassId:
        if not self.is_valid(i):
            raise InvalidIdError(i, len(self._parent))
        parent = self._parent
        root = i
        while parent[root] != root:
            root = parent[root]
        # Path compression.
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    def union(self, a: EClassId, b: EClassId) -> EClassId:
        """Merge the sets of `a` and `b`; returns the surviving root."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        return ra

    def is_canonical(self, i: EClassId) -> bool:
        return self.find(i) == i

    def roots(self) -> List[EClassId]:
        return [i for i, p in enumerate(self._parent) if i == p]
