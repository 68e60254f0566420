"""
Trie indices over relations.

A trie is built for one (relation, column layout) pair. A layout is a
sequence of levels; each level is a tuple of column indices:

    ((1,), (2,), (0,))   one column per level, columns visited 1, 2, 0
    ((1,), (0, 2))       second level keyed by the pair (t[0], t[2])

Every column appears in exactly one level. Nodes are plain dicts mapping a
key (an id, or a tuple of ids for multi-column levels) to the child node;
leaves are empty dicts at depth len(layout).
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from typing import Any, Dict, Iterator, Tuple

from infra.logger import get_logger

from .database import Database, Relation, Row

logger = get_logger(__name__)

Level = Tuple[int, ...]
Layout = Tuple[Level, ...]
TrieNode = Dict[Any, "TrieNode"]


def identity_layout(arity: int) -> Layout:
    return tuple((c,) for c in range(arity))


def validate_layout(layout: Layout, arity: int) -> Layout:
    """
    Normalize `layout` to a tuple of tuples and check it covers each column once.

    Raises:
        ValueError: layout is not a (grouped) permutation of the columns
    """
    normalized = tuple(tuple(level) for level in layout)
    flat = [c for level in normalized for c in level]
    if any(not level for level in normalized) or sorted(flat) != list(range(arity)):
        raise ValueError(f"layout {layout} is not a permutation of {arity} column(s)")
    return normalized


@dataclass(frozen=True, eq=False)
class Trie:
    symbol: str
    layout: Layout
    root: TrieNode
    size: int

    @property
    def depth(self) -> int:
        return len(self.layout)

    def paths(self) -> Iterator[Tuple[Any, ...]]:
        """Root-to-leaf key sequences."""
        if self.size == 0:
            return
        stack = [(self.root, ())]
        while stack:
            node, prefix = stack.pop()
            if len(prefix) == self.depth:
                yield prefix
                continue
            for key, child in node.items():
                stack.append((child, prefix + (key,)))

    def tuples(self) -> Iterator[Row]:
        """Rows in original column order, recovered from the paths."""
        arity = sum(len(level) for level in self.layout)
        for path in self.paths():
            row = [0] * arity
            for level, key in zip(self.layout, path):
                if len(level) == 1:
                    row[level[0]] = key
                else:
                    for column, value in zip(level, key):
                        row[column] = value
            yield tuple(row)


def build_trie(relation: Relation, layout: Layout) -> Trie:
    """Index `relation` under `layout`."""
    layout = validate_layout(layout, relation.arity)
    root: TrieNode = {}
    for row in relation.tuples:
        node = root
        for level in layout:
            key = row[level[0]] if len(level) == 1 else tuple(row[c] for c in level)
            child = node.get(key)
            if child is None:
                child = node[key] = {}
            node = child
    return Trie(relation.symbol, layout, root, len(relation))


@dataclass(frozen=True)
class TrieLookup:
    trie: Trie
    # 0 when served from cache.
    build_ns: int
    cached: bool


class TrieCache:
    """
    Memoizes tries by (symbol, layout) for one database at a time.

    Handing in a different database, or one whose version changed, drops every
    cached trie. Insertion is guarded by a lock; lookups of built tries are
    safe to share across threads.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._tries: Dict[Tuple[str, Layout], Trie] = {}
        self._owner: Database | None = None
        self._version: int | None = None
        self.hits = 0
        self.misses = 0
        self.total_build_ns = 0

    def get(self, db: Database, symbol: str, layout: Layout) -> TrieLookup:
        relation = db.relation(symbol)
        layout = validate_layout(layout, relation.arity)
        with self._lock:
            if db is not self._owner or db.version != self._version:
                if self._tries:
                    logger.debug("trie cache invalidated (%d trie(s) dropped)", len(self._tries))
                self._tries.clear()
                self._owner, self._version = db, db.version

            key = (symbol, layout)
            trie = self._tries.get(key)
            if trie is not None:
                self.hits += 1
                return TrieLookup(trie, 0, True)

            start = time.perf_counter_ns()
            trie = build_trie(relation, layout)
            elapsed = time.perf_counter_ns() - start
            self._tries[key] = trie
            self.misses += 1
            self.total_build_ns += elapsed
            logger.debug("built trie R_%s %s over %d tuple(s) in %d ns", symbol, layout, trie.size, elapsed)
            return TrieLookup(trie, elapsed, False)

    def clear(self) -> None:
        with self._lock:
            self._tries.clear()
            self._owner = self._version = None

    def __len__(self) -> int:
        return len(self._tries)


def trie_cache_get(cache: TrieCache, db: Database, symbol: str, layout: Layout) -> TrieLookup:
    """Functional spelling of TrieCache.get()."""
    return cache.get(db, symbol, layout)
