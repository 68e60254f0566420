"""
A plain equality-saturation loop for populating e-graphs.

Each iteration matches every rule's lhs against the rebuilt e-graph (read
phase), then instantiates each rhs and unions it with the match root (write
phase), then rebuilds. No scheduler: every rule fires on every match.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import logfire

from egraph.egraph import EGraph
from engine.factory import create_engine
from engine.options import EngineOptions
from engine.results import MatchSet
from infra.logger import get_logger
from query.compiler import root_name
from query.pattern import App, Pattern, app_count

from .rules import RewriteRule, instantiate

logger = get_logger(__name__)


@dataclass(frozen=True)
class SaturationLimits:
    """Soft stops; None means unbounded. With neither set, run() stops only at a fixpoint."""
    max_nodes: Optional[int] = None
    max_iterations: Optional[int] = None


@dataclass
class SaturationReport:
    iterations: int = 0
    # "saturated", "node_limit" or "iteration_limit"
    stop_reason: str = "saturated"
    nodes: int = 0
    classes: int = 0

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "stop_reason": self.stop_reason,
            "nodes": self.nodes,
            "classes": self.classes,
        }


class Saturator:
    """
    Drives rewrite rules over one e-graph.

    Deterministic for a fixed rule order and engine: matches are applied in
    sorted substitution order.
    """

    def __init__(
        self,
        egraph: EGraph,
        rules: Sequence[RewriteRule],
        limits: SaturationLimits | None = None,
        engine: EngineOptions | str = "gj",
    ):
        self.egraph = egraph
        self.rules = list(rules)
        self.limits = limits or SaturationLimits()
        self.engine = create_engine(engine)
        self.report = SaturationReport()
        self._node_limit_hit = False

    def _fits(self, rhs: Pattern) -> bool:
        limit = self.limits.max_nodes
        if limit is None:
            return True
        added = app_count(rhs)  # upper bound on new e-nodes
        return self.egraph.num_nodes + added <= limit

    def step(self) -> bool:
        """One read/write/rebuild round. Returns whether the e-graph changed."""
        self.egraph.require_clean("saturation step")
        matches: List[tuple[RewriteRule, MatchSet]] = [
            (rule, self.engine.match([rule.lhs], self.egraph)) for rule in self.rules
        ]

        before = self.egraph.version
        root = root_name(0)
        for rule, found in matches:
            for subst in found:
                if not self._fits(rule.rhs):
                    self._node_limit_hit = True
                    break
                new_class = instantiate(rule.rhs, subst, self.egraph)
                self.egraph.union(subst[root], new_class)
            if self._node_limit_hit:
                break
        changed = self.egraph.version != before
        self.egraph.rebuild()
        return changed

    def run(self) -> SaturationReport:
        limits = self.limits
        while True:
            if limits.max_iterations is not None and self.report.iterations >= limits.max_iterations:
                self.report.stop_reason = "iteration_limit"
                break
            with logfire.span("saturate iteration {iteration}", iteration=self.report.iterations + 1):
                changed = self.step()
            self.report.iterations += 1
            logger.info(
                "iteration %d: %d e-node(s), %d class(es)",
                self.report.iterations, self.egraph.num_nodes, self.egraph.num_classes,
            )
            if self._node_limit_hit:
                self.report.stop_reason = "node_limit"
                break
            if not changed:
                self.report.stop_reason = "saturated"
                break

        self.report.nodes = self.egraph.num_nodes
        self.report.classes = self.egraph.num_classes
        return self.report


def saturate(
    terms: Iterable[App],
    rules: Sequence[RewriteRule],
    limits: SaturationLimits | None = None,
    engine: EngineOptions | str = "gj",
) -> EGraph:
    """Insert `terms` into a fresh e-graph and saturate it under `rules`."""
    egraph = EGraph()
    for term in terms:
        egraph.add_term(term)
    egraph.rebuild()
    report = Saturator(egraph, rules, limits, engine).run()
    logger.info("saturation stopped (%s) after %d iteration(s)", report.stop_reason, report.iterations)
    return egraph
