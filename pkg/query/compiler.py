"""
Pattern -> conjunctive query compilation.

Every App node becomes one atom R_f(v, v_1, ..., v_k) where v names the
e-class of the application and v_i its arguments. Nested applications get a
fresh auxiliary variable that appears twice: as a child position of the
parent atom and as position 0 of the child's own atom.

    f(?a, g(?a))  ->  Q(root, ?a) <- R_f(root, ?a, $1), R_g($1, ?a)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Sequence, Tuple

from egraph.core.types import SymbolTable
from egraph.utils.fresh import FreshNameSupply

from .pattern import App, Pattern, Var, check_arities, pattern_vars

AUX_PREFIX = "$"


class VarRole(Enum):
    ROOT = "root"
    PATTERN = "pattern"
    AUX = "aux"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Atom:
    """One relation occurrence; vars[0] is the e-class column."""
    symbol: str
    vars: Tuple[str, ...]

    @property
    def arity(self) -> int:
        """Number of columns (symbol arity + 1)."""
        return len(self.vars)

    def columns_of(self, var: str) -> Tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.vars) if v == var)

    def __str__(self) -> str:
        return f"R_{self.symbol}({', '.join(self.vars)})"


@dataclass(frozen=True)
class ConjunctiveQuery:
    head: Tuple[str, ...]
    body: Tuple[Atom, ...]
    roles: Dict[str, VarRole] = field(compare=False, hash=False)

    def __post_init__(self) -> None:
        in_body = {v for atom in self.body for v in atom.vars}
        missing = [v for v in self.head if v not in in_body]
        if missing:
            raise ValueError(f"head variable(s) {missing} do not occur in the body")

    # ------------------------------------------------------------------#
    # Views
    # ------------------------------------------------------------------#
    def variables(self) -> List[str]:
        """All variables in first-occurrence order over the body."""
        seen: Dict[str, None] = {}
        for atom in self.body:
            for v in atom.vars:
                seen.setdefault(v, None)
        return list(seen)

    def occurrences(self, var: str) -> List[int]:
        """Indices of the atoms mentioning `var`."""
        return [i for i, atom in enumerate(self.body) if var in atom.vars]

    def symbols(self) -> List[str]:
        return sorted({atom.symbol for atom in self.body})

    @property
    def roots(self) -> List[str]:
        return [v for v in self.head if self.roles.get(v) is VarRole.ROOT]

    @property
    def auxiliaries(self) -> List[str]:
        return [v for v in self.variables() if self.roles.get(v) is VarRole.AUX]

    def canonical(self) -> ConjunctiveQuery:
        """Same query with auxiliaries renamed $1, $2, ... by first occurrence."""
        renaming: Dict[str, str] = {}
        for v in self.variables():
            if self.roles.get(v) is VarRole.AUX:
                renaming[v] = f"{AUX_PREFIX}{len(renaming) + 1}"
        body = tuple(
            Atom(atom.symbol, tuple(renaming.get(v, v) for v in atom.vars)) for atom in self.body
        )
        roles = {renaming.get(v, v): role for v, role in self.roles.items()}
        return ConjunctiveQuery(self.head, body, roles)

    def __str__(self) -> str:
        return f"Q({', '.join(self.head)}) <- {', '.join(str(a) for a in self.body)}"


def root_name(index: int) -> str:
    """Root variable for the pattern at 0-based position `index`."""
    return "root" if index == 0 else f"root_{index + 1}"


def compile(pattern: Pattern, symbols: SymbolTable | None = None) -> ConjunctiveQuery:
    """
    Compile one App pattern.

    Raises:
        ValueError: bare-variable pattern (answered without a query)
        ArityError: inconsistent symbol arity
    """
    if isinstance(pattern, Var):
        raise ValueError(f"bare-variable pattern {pattern} has no conjunctive query; use the scan path")
    return compile_multi([pattern], symbols)


def compile_multi(patterns: Sequence[Pattern], symbols: SymbolTable | None = None) -> ConjunctiveQuery:
    """
    Compile patterns matched under one shared substitution.

    Variable names are shared across patterns; auxiliaries come from one
    supply so they never collide. Head: one root per pattern, then pattern
    variables in first-occurrence order.
    """
    if not patterns:
        raise ValueError("multi-pattern must contain at least one pattern")
    bare = [p for p in patterns if isinstance(p, Var)]
    if bare:
        raise ValueError(f"multi-pattern members must be applications, got {bare[0]}")
    check_arities(patterns, symbols)

    supply = FreshNameSupply(AUX_PREFIX)
    atoms: List[Atom] = []
    roles: Dict[str, VarRole] = {}

    for index, pattern in enumerate(patterns):
        root = root_name(index)
        roles[root] = VarRole.ROOT
        _flatten(pattern, root, atoms, roles, supply)

    variables = [v.cq_name for v in pattern_vars(patterns)]
    for v in variables:
        roles[v] = VarRole.PATTERN
    head = tuple(root_name(i) for i in range(len(patterns))) + tuple(variables)
    return ConjunctiveQuery(head, tuple(atoms), roles)


def _flatten(
    app: App,
    out_var: str,
    atoms: List[Atom],
    roles: Dict[str, VarRole],
    supply: FreshNameSupply,
) -> None:
    # The parent's atom is reserved first so atom order is pre-order.
    slot = len(atoms)
    atoms.append(Atom(app.symbol, ()))
    columns = [out_var]
    for arg in app.args:
        if isinstance(arg, Var):
            columns.append(arg.cq_name)
        else:
            aux = supply.fresh()
            roles[aux] = VarRole.AUX
            columns.append(aux)
            _flatten(arg, aux, atoms, roles, supply)
    atoms[slot] = Atom(app.symbol, tuple(columns))
