"""
Generic join over trie indices.

Binds one variable group at a time. At each level the participating atoms'
current trie nodes are intersected; every surviving key descends those
atoms one level (several levels for a variable repeated inside one atom,
re-using the bound key) and the next group is processed on the residual
tries. The recursion is driven by an explicit stack.
"""

from __future__ import annotations

from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from query.compiler import ConjunctiveQuery
from query.planner import VariableOrdering, plan, required_permutations
from relational.database import Database
from relational.trie import Layout, TrieCache

from .results import JoinStats, MatchSet

# Per ordering group: (atom index, trie levels that group occupies in that atom).
Steps = List[List[Tuple[int, int]]]


def intersect(nodes: Sequence[Mapping[Any, Any]], stats: Optional[JoinStats] = None) -> List[Any]:
    """
    Keys present in every node.

    Iterates the smallest node and looks keys up in the others, so the work is
    O(min size x number of nodes).
    """
    if not nodes:
        raise ValueError("intersect needs at least one trie node")
    smallest = min(nodes, key=len)
    others = [node for node in nodes if node is not smallest]
    if stats is not None:
        stats.intersection_steps += len(smallest) * max(1, len(others))
    if not others:
        return list(smallest)
    return [key for key in smallest if all(key in node for node in others)]


def _group_steps(q: ConjunctiveQuery, ordering: VariableOrdering, layouts: Dict[int, Layout]) -> Steps:
    group_of = {v: g for g, group in enumerate(ordering.groups) for v in group}
    steps: Steps = [[] for _ in ordering.groups]
    for index, atom in enumerate(q.body):
        counts: Dict[int, int] = {}
        for level in layouts[index]:
            g = group_of[atom.vars[level[0]]]
            counts[g] = counts.get(g, 0) + 1
        for g, count in counts.items():
            steps[g].append((index, count))
    return steps


def _single_candidate_levels(q: ConjunctiveQuery, ordering: VariableOrdering) -> FrozenSet[int]:
    """
    Levels binding an e-class variable after every child of its atom.

    The args -> id dependency leaves at most one candidate there. Only
    compiled queries carry that dependency.
    """
    if not q.roles:
        return frozenset()
    group_of = {v: g for g, group in enumerate(ordering.groups) for v in group}
    levels = set()
    for atom in q.body:
        g = group_of[atom.vars[0]]
        if len(ordering.groups[g]) == 1 and all(group_of[v] < g for v in atom.vars[1:]):
            levels.add(g)
    return frozenset(levels)


def eval_cq(
    q: ConjunctiveQuery,
    db: Database,
    ordering: VariableOrdering | None = None,
    *,
    cache: TrieCache | None = None,
) -> MatchSet:
    """
    Evaluate `q` over `db` by generic join.

    Args:
        q: Conjunctive query
        db: Database holding every relation the query mentions
        ordering: Variable ordering; planned when omitted
        cache: Trie cache to draw indices from (a private one when omitted)

    Raises:
        UnknownSymbolError: a relation is missing (no trie can be built)
        InvalidOrderingError: `ordering` does not fit `q`
    """
    if ordering is None:
        ordering = plan(q, db)
    ordering.validate(q)
    cache = cache if cache is not None else TrieCache()

    layouts = required_permutations(q, ordering)
    stats = JoinStats()
    roots = []
    for index, atom in enumerate(q.body):
        lookup = cache.get(db, atom.symbol, layouts[index])
        stats.index_build_ns += lookup.build_ns
        roots.append(lookup.trie.root)

    steps = _group_steps(q, ordering, layouts)
    labels = ["+".join(group) for group in ordering.groups]
    single_candidate = _single_candidate_levels(q, ordering) if __debug__ else frozenset()

    # Head variable -> (group index, position inside a batched key or None).
    extract: List[Tuple[int, Optional[int]]] = []
    for v in q.head:
        for g, group in enumerate(ordering.groups):
            if v in group:
                extract.append((g, None if len(group) == 1 else group.index(v)))
                break

    depth_total = len(ordering.groups)
    rows = set()
    stack: List[Tuple[int, Tuple[Any, ...], Tuple[Any, ...]]] = [(0, tuple(roots), ())]
    while stack:
        depth, nodes, values = stack.pop()
        if depth == depth_total:
            stats.leaves_emitted += 1
            rows.add(tuple(values[g] if p is None else values[g][p] for g, p in extract))
            continue

        participants = steps[depth]
        keys = intersect([nodes[i] for i, _ in participants], stats)
        stats.values_enumerated += len(keys)
        stats.note_domain(labels[depth], len(keys))
        assert depth not in single_candidate or len(keys) <= 1, (
            f"functional dependency broken at {labels[depth]}: {len(keys)} candidates"
        )

        for key in keys:
            descended = list(nodes)
            for i, levels in participants:
                child = nodes[i][key]
                # Repeated variable: the later columns must hold the same key.
                for _ in range(levels - 1):
                    child = child.get(key)
                    if child is None:
                        break
                if child is None:
                    break
                descended[i] = child
            else:
                stack.append((depth + 1, tuple(descended), values + (key,)))

    return MatchSet(q.head, rows, stats)
