"""
Rewrite rules and the plain-text suite formats.

Rule files hold one rule per line:

    comm-add: (+ ?a ?b) => (+ ?b ?a)

Term and pattern files hold one s-expression per line. In every format,
blank lines are skipped and `;` or `#` start a comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Mapping

from egraph.core.errors import SexprError
from egraph.core.types import EClassId, ENode, SymbolTable
from egraph.egraph import EGraph
from infra.logger import get_logger
from query.pattern import App, Pattern, Var, pattern_vars

from .sexpr import parse_multi, parse_sexpr

logger = get_logger(__name__)

RULE_ARROW = "=>"
COMMENT_CHARS = (";", "#")


@dataclass(frozen=True)
class RewriteRule:
    name: str
    lhs: Pattern
    rhs: Pattern

    def __post_init__(self) -> None:
        lhs_vars = set(pattern_vars(self.lhs))
        unbound = [str(v) for v in pattern_vars(self.rhs) if v not in lhs_vars]
        if unbound:
            raise ValueError(f"rule {self.name}: rhs variable(s) {unbound} are not bound by the lhs")

    @classmethod
    def parse(cls, line: str, symbols: SymbolTable | None = None, default_name: str = "rule") -> RewriteRule:
        """Parse `name: lhs => rhs` (the name is optional)."""
        name, sep, body = line.partition(":")
        if not sep or "(" in name or RULE_ARROW in name:
            name, body = default_name, line
        lhs_text, arrow, rhs_text = body.partition(RULE_ARROW)
        if not arrow:
            raise SexprError(f"rule is missing '{RULE_ARROW}'", len(line))
        symbols = symbols if symbols is not None else SymbolTable()
        return cls(name.strip(), parse_sexpr(lhs_text, symbols), parse_sexpr(rhs_text, symbols))

    def __str__(self) -> str:
        return f"{self.name}: {self.lhs} {RULE_ARROW} {self.rhs}"


def _content_lines(path: str | Path) -> List[tuple[int, str]]:
    lines = []
    for number, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        text = raw
        for marker in COMMENT_CHARS:
            text = text.split(marker, 1)[0]
        text = text.strip()
        if text:
            lines.append((number, text))
    return lines


def load_rules(path: str | Path, symbols: SymbolTable | None = None) -> List[RewriteRule]:
    symbols = symbols if symbols is not None else SymbolTable()
    rules = [
        RewriteRule.parse(text, symbols, default_name=f"rule-{number}")
        for number, text in _content_lines(path)
    ]
    logger.info("loaded %d rule(s) from %s", len(rules), path)
    return rules


def load_terms(path: str | Path, symbols: SymbolTable | None = None) -> List[App]:
    """Ground terms; a variable anywhere is rejected."""
    symbols = symbols if symbols is not None else SymbolTable()
    terms: List[App] = []
    for number, text in _content_lines(path):
        term = parse_sexpr(text, symbols)
        if not isinstance(term, App) or pattern_vars(term):
            raise SexprError(f"line {number}: terms must be ground", 0)
        terms.append(term)
    return terms


def load_patterns(path: str | Path, symbols: SymbolTable | None = None) -> List[List[Pattern]]:
    """One (multi-)pattern per line."""
    symbols = symbols if symbols is not None else SymbolTable()
    return [parse_multi(text, symbols) for _, text in _content_lines(path)]


def instantiate(rhs: Pattern, subst: Mapping[str, EClassId], egraph: EGraph) -> EClassId:
    """
    Insert `rhs` with its variables replaced by the classes in `subst`.

    `subst` is keyed like MatchSet substitutions (`?name`).
    """
    if isinstance(rhs, Var):
        return subst[rhs.cq_name]
    children = tuple(instantiate(arg, subst, egraph) for arg in rhs.args)
    if rhs.symbol not in egraph.symbols:
        egraph.declare(rhs.symbol, len(rhs.args))
    return egraph.add(ENode(rhs.symbol, children))
