"""
EGraph - hash-consed e-nodes over a union-find of e-class ids.

The EGraph:
- Interns e-nodes through a hashcons (canonical e-node -> e-class id)
- Records unions lazily on a worklist
- Restores congruence and canonicality in batch via rebuild()

Downstream code (database conversion, matching engines) requires a rebuilt
e-graph; after rebuild() every stored e-node and every exposed id is canonical.

Usage:
    g = EGraph()
    g.declare("f", 1); g.declare("a", 0); g.declare("b", 0)
    a, b = g.add(ENode("a")), g.add(ENode("b"))
    fa, fb = g.add(ENode("f", (a,))), g.add(ENode("f", (b,)))
    g.union(a, b)
    g.rebuild()
    assert g.find(fa) == g.find(fb)
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from infra.logger import get_logger

from .core.errors import DirtyEGraphError
from .core.types import EClassId, ENode, SymbolTable
from .unionfind import UnionFind

if TYPE_CHECKING:
    from query.pattern import App

logger = get_logger(__name__)

ClassIndex = Dict[EClassId, Dict[str, Tuple[ENode, ...]]]


class EGraph:
    """
    Mutable e-graph; single writer.

    Between rebuilds the structure may be shared read-only; all query
    engines treat it as frozen and key their caches on `version`.
    """

    def __init__(self, symbols: SymbolTable | None = None):
        self.symbols = symbols if symbols is not None else SymbolTable()
        self._uf = UnionFind()
        self._classes: Dict[EClassId, Set[ENode]] = {}
        self._hashcons: Dict[ENode, EClassId] = {}
        # child class -> [(parent e-node as stored, parent class)]
        self._parents: Dict[EClassId, List[Tuple[ENode, EClassId]]] = {}
        self._pending: List[EClassId] = []
        self._node_count = 0
        self._version = 0
        self._class_index: tuple[int, ClassIndex] | None = None

    # ========================================================================
    # SYMBOLS
    # ========================================================================

    def declare(self, symbol: str, arity: int) -> None:
        """Register a function symbol; constants have arity 0."""
        self.symbols.declare(symbol, arity)

    # ========================================================================
    # CORE OPERATIONS
    # ========================================================================

    def find(self, eclass: EClassId) -> EClassId:
        """Canonical representative of `eclass`."""
        return self._uf.find(eclass)

    def canonicalize(self, node: ENode) -> ENode:
        """Replace every child by its canonical id."""
        return node.map_children(self._uf.find)

    def add(self, node: ENode) -> EClassId:
        """
        Insert an e-node, returning the id of the e-class that contains it.

        Stale (non-canonical) child ids are accepted; the node is canonicalized
        before the hashcons lookup.

        Raises:
            UnknownSymbolError: symbol was never declared
            ArityError: wrong number of children for the symbol
            InvalidIdError: a child id was never allocated
        """
        self.symbols.check(node.symbol, node.arity)
        canon = self.canonicalize(node)
        existing = self._hashcons.get(canon)
        if existing is not None:
            return self._uf.find(existing)

        eclass = self._uf.make_set()
        self._classes[eclass] = {canon}
        self._hashcons[canon] = eclass
        for child in set(canon.children):
            self._parents.setdefault(child, []).append((canon, eclass))
        self._node_count += 1
        self._version += 1
        return eclass

    def add_term(self, term: App) -> EClassId:
        """Insert a ground term bottom-up, declaring its symbols on the way."""
        args = getattr(term, "args", None)
        if args is None:
            raise ValueError(f"cannot insert pattern variable {term} into an e-graph")
        children = tuple(self.add_term(arg) for arg in args)
        self.declare(term.symbol, len(children))
        return self.add(ENode(term.symbol, children))

    def union(self, a: EClassId, b: EClassId) -> EClassId:
        """
        Merge the e-classes of `a` and `b`.

        Only records the merge; congruence is restored by rebuild().
        Returns the new canonical id.
        """
        ra, rb = self._uf.find(a), self._uf.find(b)
        if ra == rb:
            return ra

        root = self._uf.union(ra, rb)
        other = rb if root == ra else ra

        keep, absorbed = self._classes[root], self._classes.pop(other)
        if len(keep) < len(absorbed):
            keep, absorbed = absorbed, keep
        keep |= absorbed
        self._classes[root] = keep

        moved = self._parents.pop(other, [])
        if moved:
            self._parents.setdefault(root, []).extend(moved)

        self._pending.append(root)
        self._version += 1
        return root

    def rebuild(self) -> int:
        """
        Restore congruence closure and canonicality.

        Processes the worklist of merged classes until it empties: parents of
        each merged class are re-canonicalized, and parents that became
        congruent are merged (which may enqueue more work).

        Returns:
            Number of hashcons repairs (stale parent e-nodes re-canonicalized)
        """
        if not self._pending:
            return 0

        repairs = 0
        rounds = 0
        while self._pending:
            todo = sorted({self._uf.find(c) for c in self._pending})
            self._pending.clear()
            rounds += 1
            for eclass in todo:
                repairs += self._repair(eclass)

        self._normalize()
        self._version += 1
        logger.debug(
            "rebuild: %d repair(s) over %d round(s); %d e-node(s) in %d class(es)",
            repairs, rounds, self._node_count, len(self._classes),
        )
        return repairs

    def lookup(self, node: ENode) -> Optional[EClassId]:
        """Id of the e-class containing `node`, or None if it is not represented."""
        if node.symbol not in self.symbols:
            return None
        eclass = self._hashcons.get(self.canonicalize(node))
        return None if eclass is None else self._uf.find(eclass)

    # ========================================================================
    # REBUILD INTERNALS
    # ========================================================================

    def _repair(self, eclass: EClassId) -> int:
        eclass = self._uf.find(eclass)
        parents = self._parents.pop(eclass, [])

        repaired = 0
        seen: Dict[ENode, EClassId] = {}
        for node, parent_class in parents:
            canon = self.canonicalize(node)
            if canon != node:
                repaired += 1
            if canon in seen:
                # Congruent parents: same symbol, equal children.
                self.union(parent_class, seen[canon])
            seen[canon] = self._uf.find(parent_class)

        if seen:
            self._parents.setdefault(self._uf.find(eclass), []).extend(seen.items())
        return repaired

    def _normalize(self) -> None:
        """Canonicalize every stored e-node and rebuild the hashcons from scratch."""
        hashcons: Dict[ENode, EClassId] = {}
        classes: Dict[EClassId, Set[ENode]] = {}
        for eclass, nodes in self._classes.items():
            canon_nodes = {self.canonicalize(n) for n in nodes}
            classes[eclass] = canon_nodes
            for node in canon_nodes:
                hashcons[node] = eclass
        self._classes = classes
        self._hashcons = hashcons
        self._node_count = sum(len(nodes) for nodes in classes.values())

        parents: Dict[EClassId, List[Tuple[ENode, EClassId]]] = {}
        for eclass, nodes in classes.items():
            for node in nodes:
                for child in set(node.children):
                    parents.setdefault(child, []).append((node, eclass))
        self._parents = parents

    # ========================================================================
    # ACCESSORS
    # ========================================================================

    @property
    def version(self) -> int:
        """Bumped by every mutation; caches compare it to detect staleness."""
        return self._version

    @property
    def is_clean(self) -> bool:
        """True when no unions are waiting for rebuild()."""
        return not self._pending

    @property
    def num_ids(self) -> int:
        """Number of ids ever allocated."""
        return len(self._uf)

    @property
    def num_classes(self) -> int:
        return len(self._classes)

    @property
    def num_nodes(self) -> int:
        """Stored e-nodes; after rebuild() this is the count of distinct canonical e-nodes."""
        return self._node_count

    def require_clean(self, operation: str) -> None:
        if self._pending:
            raise DirtyEGraphError(
                f"{operation} needs a rebuilt e-graph; {len(self._pending)} union(s) pending"
            )

    def class_ids(self) -> List[EClassId]:
        """Canonical e-class ids in ascending order."""
        return sorted(self._classes)

    def nodes(self, eclass: EClassId) -> FrozenSet[ENode]:
        return frozenset(self._classes[self._uf.find(eclass)])

    def iter_nodes(self) -> Iterable[Tuple[EClassId, ENode]]:
        """Yield (class id, e-node) for every stored e-node."""
        for eclass, nodes in self._classes.items():
            for node in nodes:
                yield eclass, node

    def class_index(self) -> ClassIndex:
        """
        E-nodes grouped by class, then by symbol, in sorted order.

        Cached per version; backtracking matchers look up a class for one symbol
        at a time.
        """
        cached = self._class_index
        if cached is not None and cached[0] == self._version:
            return cached[1]
        self.require_clean("class_index")
        index: ClassIndex = {}
        for eclass, nodes in self._classes.items():
            by_symbol: Dict[str, List[ENode]] = {}
            for node in nodes:
                by_symbol.setdefault(node.symbol, []).append(node)
            index[eclass] = {sym: tuple(sorted(group)) for sym, group in by_symbol.items()}
        self._class_index = (self._version, index)
        return index

    # ========================================================================
    # SERIALIZATION
    # ========================================================================

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize to the replayable JSON schema.

        {"nodes": [[symbol, [entry, ...]], ...], "unions": [[entry, entry], ...],
         "symbols": {symbol: arity}}

        Child references and union endpoints are positions in "nodes". Entries
        are ordered so every reference points backwards; the first entry of
        each class is its representative and every further entry is unioned
        with it.
        """
        self.require_clean("to_dict")
        entries: List[List[Any]] = []
        unions: List[List[int]] = []
        representative: Dict[EClassId, int] = {}

        remaining = sorted(self.iter_nodes(), key=lambda item: (item[1].arity, item[0], item[1]))
        while remaining:
            deferred = []
            for eclass, node in remaining:
                if not all(child in representative for child in node.children):
                    deferred.append((eclass, node))
                    continue
                position = len(entries)
                entries.append([node.symbol, [representative[c] for c in node.children]])
                if eclass in representative:
                    unions.append([representative[eclass], position])
                else:
                    representative[eclass] = position
            if len(deferred) == len(remaining):
                raise RuntimeError("e-graph contains a class with no e-node reachable from constants")
            remaining = deferred

        return {
            "nodes": entries,
            "unions": unions,
            "symbols": dict(sorted(self.symbols.items())),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> EGraph:
        """
        Replay a dump: adds in order, then unions, then rebuild().

        Raises:
            ValueError: A reference points at the same or a later entry
        """
        graph = cls()
        for symbol, arity in (data.get("symbols") or {}).items():
            graph.declare(symbol, arity)

        ids: List[EClassId] = []
        for position, entry in enumerate(data.get("nodes", [])):
            symbol, refs = entry
            for ref in refs:
                if not 0 <= ref < position:
                    raise ValueError(f"node {position} references entry {ref}, which is not an earlier node")
            graph.declare(symbol, len(refs))
            ids.append(graph.add(ENode(symbol, tuple(ids[r] for r in refs))))

        for left, right in data.get("unions", []):
            if not (0 <= left < len(ids) and 0 <= right < len(ids)):
                raise ValueError(f"union [{left}, {right}] references a missing node")
            graph.union(ids[left], ids[right])

        graph.rebuild()
        return graph

    def save_json(self, filepath: str | Path, indent: int | None = None) -> None:
        path = Path(filepath)
        path.parent.mkdir(parents=True, exist_ok=True)
        logger.info("Saving e-graph (%d e-nodes, %d classes) to %s", self.num_nodes, self.num_classes, path)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=indent)

    @classmethod
    def load_json(cls, filepath: str | Path) -> EGraph:
        with open(filepath, "r", encoding="utf-8") as f:
            data = json.load(f)
        graph = cls.from_dict(data)
        logger.info("Loaded e-graph from %s: %d e-nodes, %d classes", filepath, graph.num_nodes, graph.num_classes)
        return graph

    def __str__(self) -> str:
        return f"EGraph(nodes={self.num_nodes}, classes={self.num_classes})"

    def __repr__(self) -> str:
        return f"EGraph(nodes={self.num_nodes}, classes={self.num_classes}, clean={self.is_clean})"
