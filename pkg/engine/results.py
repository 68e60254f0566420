"""
MatchSet - the output contract shared by every matching engine.

Rows are tuples aligned with `head`; set semantics. Engines fill the
counters they can measure and leave the rest at zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Sequence, Set, Tuple

from egraph.core.types import EClassId

Substitution = Dict[str, EClassId]
MatchRow = Tuple[EClassId, ...]


@dataclass
class JoinStats:
    """
    Instrumentation counters.

    Attributes:
        intersection_steps: Membership lookups performed by intersections
        values_enumerated: Values bound across all generic-join levels (or
            tuples scanned by the fast path)
        leaves_emitted: Full bindings reached before projection/deduplication
        candidates: E-nodes (backtracking) or assignments (naive) visited
        level_max_domain: Largest intersection seen per variable group
        index_build_ns: Time spent building tries during this evaluation
    """
    intersection_steps: int = 0
    values_enumerated: int = 0
    leaves_emitted: int = 0
    candidates: int = 0
    level_max_domain: Dict[str, int] = field(default_factory=dict)
    index_build_ns: int = 0

    def note_domain(self, label: str, size: int) -> None:
        if size > self.level_max_domain.get(label, -1):
            self.level_max_domain[label] = size

    def absorb(self, other: JoinStats) -> None:
        self.intersection_steps += other.intersection_steps
        self.values_enumerated += other.values_enumerated
        self.leaves_emitted += other.leaves_emitted
        self.candidates += other.candidates
        self.index_build_ns += other.index_build_ns
        for label, size in other.level_max_domain.items():
            self.note_domain(label, size)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "intersection_steps": self.intersection_steps,
            "values_enumerated": self.values_enumerated,
            "leaves_emitted": self.leaves_emitted,
            "candidates": self.candidates,
            "level_max_domain": dict(self.level_max_domain),
            "index_build_ns": self.index_build_ns,
        }


@dataclass(eq=False)
class MatchSet:
    head: Tuple[str, ...]
    rows: Set[MatchRow] = field(default_factory=set)
    stats: JoinStats = field(default_factory=JoinStats)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[Substitution]:
        for row in self.sorted_rows():
            yield dict(zip(self.head, row))

    def __eq__(self, other: object) -> bool:
        """Set equality after aligning `other` to this head order; counters are ignored."""
        if not isinstance(other, MatchSet):
            return NotImplemented
        if set(self.head) != set(other.head):
            return False
        return self.rows == other.project(self.head).rows

    __hash__ = None  # type: ignore[assignment]

    def sorted_rows(self) -> List[MatchRow]:
        return sorted(self.rows)

    def substitutions(self) -> List[Substitution]:
        return list(self)

    def project(self, head: Sequence[str]) -> MatchSet:
        """Keep (and reorder to) the given head variables."""
        head = tuple(head)
        if head == self.head:
            return self
        try:
            positions = [self.head.index(v) for v in head]
        except ValueError as exc:
            raise KeyError(f"cannot project {self.head} onto {head}") from exc
        rows = {tuple(row[p] for p in positions) for row in self.rows}
        return MatchSet(head, rows, self.stats)

    def difference(self, other: MatchSet) -> Tuple[Set[MatchRow], Set[MatchRow]]:
        """(rows only here, rows only in other), both in this head order."""
        aligned = other.project(self.head).rows
        return self.rows - aligned, aligned - self.rows

    @classmethod
    def from_substitutions(cls, head: Sequence[str], substitutions: Iterable[Substitution]) -> MatchSet:
        head = tuple(head)
        return cls(head, {tuple(s[v] for v in head) for s in substitutions})

    def __repr__(self) -> str:
        return f"MatchSet(head={self.head}, rows={len(self.rows)})"
