"""
Relational view of an e-graph: per-symbol relations and trie indices.
"""

from .database import Database, Relation, Row, egraph_to_database
from .trie import (
    Layout,
    Level,
    Trie,
    TrieCache,
    TrieLookup,
    build_trie,
    identity_layout,
    trie_cache_get,
    validate_layout,
)

__all__ = [
    "Database",
    "Relation",
    "Row",
    "egraph_to_database",
    "Layout",
    "Level",
    "Trie",
    "TrieCache",
    "TrieLookup",
    "build_trie",
    "identity_layout",
    "trie_cache_get",
    "validate_layout",
]
