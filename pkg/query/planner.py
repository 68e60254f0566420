"""
Variable-ordering planner for generic join.

Sort key for variables that need an intersection (ties broken left to right):
1. occurrence count, descending (more atoms -> smaller intersection)
2. smallest containing relation, ascending
3. functional-dependency level, ascending (children before the e-class they determine)
4. first occurrence in the query

Variables that occur once, in one atom, constrain nothing: they are batched
per atom into one group and placed after everything else.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from egraph.core.errors import InvalidOrderingError
from infra.logger import get_logger
from relational.database import Database
from relational.trie import Layout

from .compiler import ConjunctiveQuery

logger = get_logger(__name__)

GROUP_SEPARATOR = ","
BATCH_JOINER = "+"
# Exhaustive half-integral cover search is 3^atoms.
MAX_COVER_ATOMS = 12


@dataclass(frozen=True)
class VariableOrdering:
    groups: Tuple[Tuple[str, ...], ...]

    @classmethod
    def of(cls, *groups: str | Sequence[str]) -> VariableOrdering:
        """VariableOrdering.of("?a", ("x", "y"), "root")"""
        return cls(tuple((g,) if isinstance(g, str) else tuple(g) for g in groups))

    @classmethod
    def parse(cls, text: str) -> VariableOrdering:
        """Parse `?a,$1,x+y,root`; `+` joins variables into one batched group."""
        groups = []
        for chunk in text.split(GROUP_SEPARATOR):
            names = tuple(name.strip() for name in chunk.split(BATCH_JOINER) if name.strip())
            if not names:
                raise InvalidOrderingError(f"empty group in ordering '{text}'")
            groups.append(names)
        return cls(tuple(groups))

    @property
    def variables(self) -> List[str]:
        return [v for group in self.groups for v in group]

    def validate(self, q: ConjunctiveQuery) -> None:
        """
        Raises:
            InvalidOrderingError: not a permutation of the query's variables, or
                a batched group mixes join variables or atoms
        """
        flat = self.variables
        expected = q.variables()
        if any(not g for g in self.groups) or sorted(flat) != sorted(expected) or len(set(flat)) != len(flat):
            raise InvalidOrderingError(
                f"ordering {self} is not a permutation of the query variables {expected}"
            )
        for group in self.groups:
            if len(group) == 1:
                continue
            homes = set()
            for v in group:
                atoms = q.occurrences(v)
                if len(atoms) != 1 or len(q.body[atoms[0]].columns_of(v)) != 1:
                    raise InvalidOrderingError(
                        f"batched variable {v} must occur exactly once in exactly one atom"
                    )
                homes.add(atoms[0])
            if len(homes) != 1:
                raise InvalidOrderingError(f"batched group {group} spans several atoms")

    def __str__(self) -> str:
        return GROUP_SEPARATOR.join(BATCH_JOINER.join(g) for g in self.groups)


@dataclass(frozen=True)
class PlanStats:
    occurrences: Dict[str, int]
    min_relation_size: Dict[str, int]
    # None when the query carries no functional-dependency information.
    fd_level: Optional[Dict[str, int]]


def plan_stats(q: ConjunctiveQuery, db: Database) -> PlanStats:
    sizes = [len(db.relation(atom.symbol)) for atom in q.body]
    occurrences: Dict[str, int] = {}
    min_size: Dict[str, int] = {}
    for v in q.variables():
        atoms = q.occurrences(v)
        occurrences[v] = len(atoms)
        min_size[v] = min(sizes[i] for i in atoms)
    return PlanStats(occurrences, min_size, functional_dependency_levels(q))


def functional_dependency_levels(q: ConjunctiveQuery) -> Optional[Dict[str, int]]:
    """
    Topological depth of each variable in the FD graph (children -> e-class).

    Only compiled queries (those carrying variable roles) have e-node
    relations with the args -> id dependency; hand-written queries get None.
    """
    if not q.roles:
        return None

    determinants: Dict[str, List[Tuple[str, ...]]] = {}
    for atom in q.body:
        determinants.setdefault(atom.vars[0], []).append(atom.vars[1:])

    levels: Dict[str, int] = {}
    visiting: set = set()

    def level(v: str) -> int:
        if v in levels:
            return levels[v]
        # Compiled patterns form a forest, so the graph is acyclic.
        assert v not in visiting, f"cyclic functional dependency through {v}"
        visiting.add(v)
        depth = 0
        for children in determinants.get(v, []):
            below = [level(c) for c in children if c != v]
            depth = max(depth, 1 + max(below, default=-1))
        visiting.discard(v)
        levels[v] = depth
        return depth

    for v in q.variables():
        level(v)
    return levels


def plan(q: ConjunctiveQuery, db: Database) -> VariableOrdering:
    """
    Choose a variable ordering (with batching) for `q` over `db`.

    Raises:
        UnknownSymbolError: an atom's relation is missing from `db`
    """
    stats = plan_stats(q, db)
    first = {v: i for i, v in enumerate(q.variables())}
    fd = stats.fd_level or {}

    batched: Dict[int, List[str]] = {}
    ranked: List[str] = []
    for v in q.variables():
        atoms = q.occurrences(v)
        if len(atoms) == 1 and len(q.body[atoms[0]].columns_of(v)) == 1:
            batched.setdefault(atoms[0], []).append(v)
        else:
            ranked.append(v)

    ranked.sort(key=lambda v: (-stats.occurrences[v], stats.min_relation_size[v], fd.get(v, 0), first[v]))

    groups: List[Tuple[str, ...]] = [(v,) for v in ranked]
    atom_sizes = {i: len(db.relation(q.body[i].symbol)) for i in batched}
    for atom_index in sorted(batched, key=lambda i: (atom_sizes[i], i)):
        atom = q.body[atom_index]
        columns = sorted(batched[atom_index], key=lambda v: atom.vars.index(v))
        groups.append(tuple(columns))

    ordering = VariableOrdering(tuple(groups))
    logger.debug("plan for %s: [%s]", q, ordering)
    return ordering


def required_permutations(q: ConjunctiveQuery, ordering: VariableOrdering) -> Dict[int, Layout]:
    """
    Column layout for each atom's trie under `ordering`.

    A single-variable group contributes one level per column holding that
    variable (repeated variables give consecutive levels); a batched group
    contributes one multi-column level.
    """
    layouts: Dict[int, Layout] = {}
    for index, atom in enumerate(q.body):
        levels: List[Tuple[int, ...]] = []
        for group in ordering.groups:
            if len(group) == 1:
                levels.extend((c,) for c in atom.columns_of(group[0]))
            else:
                columns = tuple(c for v in group for c in atom.columns_of(v))
                if columns:
                    levels.append(columns)
        layouts[index] = tuple(levels)
    return layouts


def agm_bound(q: ConjunctiveQuery, db: Database) -> float:
    """
    Upper bound on |Q(I)| from the best half-integral fractional edge cover.

    Weights range over {0, 1/2, 1} per atom; for graph-shaped queries (every
    atom binary, like the triangle) this is the exact AGM bound. Queries with
    more than MAX_COVER_ATOMS atoms fall back to the all-ones cover.
    """
    sizes = [len(db.relation(atom.symbol)) for atom in q.body]
    if any(size == 0 for size in sizes):
        return 0.0
    logs = [math.log(size) for size in sizes]
    covers = [set(atom.vars) for atom in q.body]
    variables = q.variables()

    if len(q.body) > MAX_COVER_ATOMS:
        return float(math.prod(sizes))

    best = math.inf
    for weights in itertools.product((0.0, 0.5, 1.0), repeat=len(q.body)):
        if all(sum(w for w, cover in zip(weights, covers) if v in cover) >= 1.0 for v in variables):
            best = min(best, sum(w * lg for w, lg in zip(weights, logs)))
    return math.exp(best)


def output_sensitive_bound(q: ConjunctiveQuery, db: Database, output_size: int) -> float:
    """sqrt(|Q(I)| * prod |R_i|): the work bound for compiled patterns given the actual output size."""
    product = math.prod(len(db.relation(atom.symbol)) for atom in q.body)
    return math.sqrt(output_size * product)
