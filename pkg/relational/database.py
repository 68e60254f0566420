"""
E-graph -> relational database.

Every e-node f(c_1, ..., c_k) in e-class c becomes the tuple (c, c_1, ..., c_k)
of relation R_f. Tuples hold only canonical ids, so the conversion requires a
rebuilt e-graph.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple

from egraph.core.errors import UnknownSymbolError
from egraph.core.types import EClassId
from egraph.egraph import EGraph
from infra.logger import get_logger

logger = get_logger(__name__)

Row = Tuple[EClassId, ...]


@dataclass(frozen=True)
class Relation:
    """
    Set of tuples for one function symbol.

    `arity` counts columns: the e-class id column plus one per child.
    """
    symbol: str
    arity: int
    tuples: FrozenSet[Row] = frozenset()

    def __post_init__(self) -> None:
        bad = next((t for t in self.tuples if len(t) != self.arity), None)
        if bad is not None:
            raise ValueError(f"tuple {bad} does not have {self.arity} column(s) for R_{self.symbol}")

    def __len__(self) -> int:
        return len(self.tuples)

    def column(self, index: int) -> FrozenSet[EClassId]:
        return frozenset(t[index] for t in self.tuples)

    def functional_dependency_violations(self) -> List[Tuple[Row, List[EClassId]]]:
        """Argument tuples that map to more than one e-class id."""
        owners: Dict[Row, set] = defaultdict(set)
        for t in self.tuples:
            owners[t[1:]].add(t[0])
        return [(args, sorted(ids)) for args, ids in sorted(owners.items()) if len(ids) > 1]


@dataclass
class Database:
    relations: Dict[str, Relation]
    class_ids: Tuple[EClassId, ...] = ()
    # Version of the source e-graph; trie caches invalidate on change.
    version: int = 0
    build_ns: int = field(default=0, compare=False)

    @property
    def domain_size(self) -> int:
        return len(self.class_ids)

    @property
    def size(self) -> int:
        """Total tuple count over all relations."""
        return sum(len(r) for r in self.relations.values())

    def relation(self, symbol: str) -> Relation:
        try:
            return self.relations[symbol]
        except KeyError:
            raise UnknownSymbolError(symbol) from None

    def __contains__(self, symbol: object) -> bool:
        return symbol in self.relations

    def functional_dependency_violations(self) -> Dict[str, List[Tuple[Row, List[EClassId]]]]:
        found = {}
        for symbol, relation in self.relations.items():
            violations = relation.functional_dependency_violations()
            if violations:
                found[symbol] = violations
        return found

    @classmethod
    def from_tuples(
        cls,
        rows: Mapping[str, Iterable[Row]],
        arities: Mapping[str, int] | None = None,
        version: int = 0,
    ) -> Database:
        """
        Build a database directly from rows, e.g. for synthetic join instances.

        Column counts are taken from `arities` when given, else from the first
        row; an empty relation therefore needs an entry in `arities`.
        """
        arities = arities or {}
        relations: Dict[str, Relation] = {}
        ids: set = set()
        for symbol, found in rows.items():
            frozen = frozenset(tuple(r) for r in found)
            if symbol in arities:
                width = arities[symbol]
            elif frozen:
                width = len(next(iter(frozen)))
            else:
                raise ValueError(f"cannot infer the column count of empty relation R_{symbol}")
            relations[symbol] = Relation(symbol, width, frozen)
            for row in frozen:
                ids.update(row)
        return cls(relations=relations, class_ids=tuple(sorted(ids)), version=version)


def egraph_to_database(egraph: EGraph) -> Database:
    """
    Flatten a rebuilt e-graph into one relation per declared symbol.

    Raises:
        DirtyEGraphError: unions are pending; call rebuild() first
    """
    egraph.require_clean("egraph_to_database")
    start = time.perf_counter_ns()

    rows: Dict[str, set] = {symbol: set() for symbol in egraph.symbols}
    for eclass, node in egraph.iter_nodes():
        rows[node.symbol].add((eclass, *node.children))

    relations = {
        symbol: Relation(symbol, egraph.symbols.arity(symbol) + 1, frozenset(found))
        for symbol, found in rows.items()
    }
    db = Database(
        relations=relations,
        class_ids=tuple(egraph.class_ids()),
        version=egraph.version,
        build_ns=time.perf_counter_ns() - start,
    )
    logger.debug(
        "database v%d: %d relation(s), %d tuple(s), %d class(es)",
        db.version, len(relations), db.size, db.domain_size,
    )
    return db
