"""
Benchmark harness: time engines on the same (multi-)patterns, cross-check
their answers, and report CSV rows.

Per (pattern, engine) the minimum wall time over `repeat` cold runs is kept.
The relational engine yields two rows: `gj` includes building the database
and tries, `gj-noindex` subtracts that build time from the same run.
"""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import logfire

from egraph.core.errors import EngineDisagreement
from egraph.egraph import EGraph
from engine.factory import create_engine
from engine.results import MatchSet
from infra.logger import get_logger
from query.pattern import Pattern

from .sexpr import format_multi

logger = get_logger(__name__)

GJ, GJ_NOINDEX, EM = "gj", "gj-noindex", "em"
DEFAULT_ENGINES = (GJ, EM)


@dataclass(frozen=True)
class BenchRecord:
    pattern: str
    engine: str
    egraph_nodes: int
    result_count: int
    time_ns: int
    index_time_ns: int
    intersection_steps: int
    candidates: int


CSV_FIELDS = [f.name for f in fields(BenchRecord)]


@dataclass(frozen=True)
class _Run:
    time_ns: int
    result: MatchSet


def _best_run(name: str, patterns: Sequence[Pattern], egraph: EGraph, repeat: int) -> _Run:
    best: _Run | None = None
    for _ in range(repeat):
        engine = create_engine(name)
        start = time.perf_counter_ns()
        result = engine.match(patterns, egraph)
        elapsed = time.perf_counter_ns() - start
        if best is None or elapsed < best.time_ns:
            best = _Run(elapsed, result)
    assert best is not None
    return best


def bench(
    egraph: EGraph,
    patterns: Sequence[Sequence[Pattern]],
    engines: Sequence[str] = DEFAULT_ENGINES,
    repeat: int = 10,
) -> List[BenchRecord]:
    """
    Benchmark each (multi-)pattern under each engine.

    Raises:
        ValueError: repeat < 1 or no engines
        EngineDisagreement: two engines returned different matches
    """
    if repeat < 1:
        raise ValueError(f"repeat must be >= 1, got {repeat}")
    if not engines:
        raise ValueError("bench needs at least one engine")
    egraph.require_clean("bench")

    records: List[BenchRecord] = []
    nodes = egraph.num_nodes
    for multi in patterns:
        text = format_multi(multi)
        with logfire.span("bench {pattern}", pattern=text):
            runs: Dict[str, _Run] = {name: _best_run(name, multi, egraph, repeat) for name in engines}
        _check_agreement(text, runs)

        for name, run in runs.items():
            stats = run.result.stats
            index_ns = stats.index_build_ns if name == GJ else 0
            records.append(
                BenchRecord(text, name, nodes, len(run.result), run.time_ns, index_ns,
                            stats.intersection_steps, stats.candidates)
            )
            if name == GJ:
                records.append(
                    BenchRecord(text, GJ_NOINDEX, nodes, len(run.result), max(0, run.time_ns - index_ns),
                                0, stats.intersection_steps, stats.candidates)
                )
        logger.info(
            "%s: %s",
            text,
            ", ".join(f"{name}={run.time_ns / 1e6:.3f}ms ({len(run.result)})" for name, run in runs.items()),
        )
    return records


def _check_agreement(text: str, runs: Dict[str, _Run]) -> None:
    names = list(runs)
    reference = names[0]
    for other in names[1:]:
        left, right = runs[reference].result, runs[other].result
        if left != right:
            only_left, only_right = left.difference(right)
            error = EngineDisagreement(text, (reference, other), only_left, only_right)
            logger.error("engine disagreement on %s:\n%s", text, "\n".join(error.diff_lines()))
            raise error


def write_csv(records: Sequence[BenchRecord], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for record in records:
            writer.writerow(asdict(record))


def read_csv(path: str | Path) -> List[BenchRecord]:
    with Path(path).open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != CSV_FIELDS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [
            BenchRecord(
                pattern=row["pattern"],
                engine=row["engine"],
                **{name: int(row[name]) for name in CSV_FIELDS[2:]},
            )
            for row in reader
        ]


@dataclass(frozen=True)
class SpeedupSummary:
    """em/gj time ratios over the patterns both engines ran; > 1 means gj was faster."""
    mode: str
    patterns: int
    gj_wins: int
    em_wins: int
    total: float
    hmean: float
    gmean: float
    best: float
    median: float
    worst: float


def summarize(records: Sequence[BenchRecord]) -> List[SpeedupSummary]:
    """One summary per indexing mode: `+index` (gj) and `-index` (gj-noindex)."""
    times: Dict[Tuple[str, str], int] = {(r.pattern, r.engine): max(1, r.time_ns) for r in records}
    summaries = []
    for mode, gj_name in (("+index", GJ), ("-index", GJ_NOINDEX)):
        pairs = [
            (times[(pattern, EM)], gj_time)
            for (pattern, engine), gj_time in times.items()
            if engine == gj_name and (pattern, EM) in times
        ]
        if not pairs:
            continue
        ratios = [em / gj for em, gj in pairs]
        summaries.append(
            SpeedupSummary(
                mode=mode,
                patterns=len(pairs),
                gj_wins=sum(1 for r in ratios if r > 1),
                em_wins=sum(1 for r in ratios if r < 1),
                total=sum(em for em, _ in pairs) / sum(gj for _, gj in pairs),
                hmean=statistics.harmonic_mean(ratios),
                gmean=statistics.geometric_mean(ratios),
                best=max(ratios),
                median=statistics.median(ratios),
                worst=min(ratios),
            )
        )
    return summaries
