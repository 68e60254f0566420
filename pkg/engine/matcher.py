"""
Relational e-matching end to end.

    e-graph --egraph_to_database--> Database --compile_multi--> CQ
            --plan--> ordering --tries--> generic join --> MatchSet

RelationalMatcher keeps the database (per e-graph version) and the trie
cache between calls, so repeated matching over one e-graph only pays for
indices it has not built yet. Degenerate single patterns skip the join.
"""

from __future__ import annotations

import threading
import time
from typing import Iterable, List, Optional, Sequence, Tuple

from egraph.egraph import EGraph
from infra.logger import get_logger
from query.compiler import ConjunctiveQuery, compile_multi, root_name
from query.pattern import App, Pattern, PatternKind, Var, check_arities, is_degenerate, pattern_vars
from query.planner import VariableOrdering
from relational.database import Database, egraph_to_database
from relational.trie import TrieCache

from .base_engine import BaseEngine
from .fast_path import eval_nonnested
from .factory import create_engine
from .generic_join import eval_cq
from .options import EngineOptions
from .registry import register_engine
from .results import MatchSet

logger = get_logger(__name__)


def as_patterns(p_or_multi: Pattern | Iterable[Pattern]) -> List[Pattern]:
    if isinstance(p_or_multi, (Var, App)):
        return [p_or_multi]
    return list(p_or_multi)


class RelationalMatcher:
    """
    Database and trie caches for one e-graph at a time.

    A different e-graph object, or a new version of the same one, triggers a
    fresh conversion; the trie cache then invalidates itself.
    """

    def __init__(self, use_fast_path: bool = True):
        self.use_fast_path = use_fast_path
        self.trie_cache = TrieCache()
        self._lock = threading.Lock()
        self._source: EGraph | None = None
        self._db: Database | None = None

    def database(self, egraph: EGraph) -> Tuple[Database, int]:
        """(database, conversion ns paid by this call: 0 on a cache hit)"""
        with self._lock:
            if self._db is not None and self._source is egraph and self._db.version == egraph.version:
                return self._db, 0
            start = time.perf_counter_ns()
            db = egraph_to_database(egraph)
            elapsed = time.perf_counter_ns() - start
            self._source, self._db = egraph, db
            return db, elapsed

    def query(self, patterns: Sequence[Pattern], egraph: EGraph) -> ConjunctiveQuery:
        return compile_multi(patterns, egraph.symbols.copy())

    def prepare(self, patterns: Sequence[Pattern], egraph: EGraph) -> Tuple[Database, int, Optional[ConjunctiveQuery]]:
        """
        Convert and compile. The query is None when a pattern uses a symbol the
        database has no relation for: nothing can match.
        """
        egraph.require_clean("match")
        check_arities(patterns, egraph.symbols.copy())
        db, conversion_ns = self.database(egraph)
        if len(patterns) == 1 and isinstance(patterns[0], Var):
            return db, conversion_ns, None
        q = self.query(patterns, egraph)
        if any(symbol not in db for symbol in q.symbols()):
            return db, conversion_ns, None
        return db, conversion_ns, q

    def match(
        self,
        patterns: Pattern | Sequence[Pattern],
        egraph: EGraph,
        ordering: VariableOrdering | None = None,
    ) -> MatchSet:
        patterns = as_patterns(patterns)
        db, conversion_ns, q = self.prepare(patterns, egraph)

        single = patterns[0] if len(patterns) == 1 else None
        if single is not None and is_degenerate(single) is PatternKind.BARE_VARIABLE:
            result = eval_nonnested(single, db)
        elif q is None:
            result = MatchSet(empty_head(patterns))
        elif (
            single is not None
            and ordering is None
            and self.use_fast_path
            and is_degenerate(single) is PatternKind.NON_NESTED
        ):
            result = eval_nonnested(single, db)
        else:
            result = eval_cq(q, db, ordering, cache=self.trie_cache)

        result.stats.index_build_ns += conversion_ns
        return result

    def reset(self) -> None:
        with self._lock:
            self._source = self._db = None
        self.trie_cache.clear()


def empty_head(patterns: Sequence[Pattern]) -> Tuple[str, ...]:
    roots = tuple(root_name(i) for i in range(len(patterns)))
    return roots + tuple(v.cq_name for v in pattern_vars(patterns))


@register_engine("gj")
class GenericJoinEngine(BaseEngine):
    """Relational e-matching: compile, plan, index, generic join."""

    def __init__(
        self,
        ordering: VariableOrdering | None = None,
        use_fast_path: bool = True,
        name: str | None = None,
    ):
        super().__init__(name or "gj")
        self.ordering = ordering
        self.matcher = RelationalMatcher(use_fast_path=use_fast_path)

    def match(self, patterns: Sequence[Pattern], egraph: EGraph) -> MatchSet:
        return self.matcher.match(patterns, egraph, self.ordering)

    def reset(self) -> None:
        self.matcher.reset()


def ematch(
    p_or_multi: Pattern | Iterable[Pattern],
    egraph: EGraph,
    options: EngineOptions | str | None = None,
) -> MatchSet:
    """
    Match a pattern (or multi-pattern) against a rebuilt e-graph.

    Args:
        p_or_multi: One pattern or a sequence of patterns sharing variables
        egraph: Rebuilt e-graph
        options: Engine selection; the relational engine by default
    """
    engine = create_engine(options if options is not None else EngineOptions())
    result = engine.match(as_patterns(p_or_multi), egraph)
    logger.debug("%s: %d match(es) with %s", p_or_multi, len(result), engine.name)
    return result
