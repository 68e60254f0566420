"""
Front-door plumbing: surface syntax, rule suites, e-graph generation,
saturation and benchmarking.
"""

from .sexpr import format_multi, parse_multi, parse_sexpr, tokenize
from .rules import RewriteRule, instantiate, load_patterns, load_rules, load_terms
from .generators import gen_fgn, gen_fgn_classes
from .saturate import SaturationLimits, SaturationReport, Saturator, saturate
from .bench import BenchRecord, SpeedupSummary, bench, read_csv, summarize, write_csv

__all__ = [
    "format_multi",
    "parse_multi",
    "parse_sexpr",
    "tokenize",
    "RewriteRule",
    "instantiate",
    "load_patterns",
    "load_rules",
    "load_terms",
    "gen_fgn",
    "gen_fgn_classes",
    "SaturationLimits",
    "SaturationReport",
    "Saturator",
    "saturate",
    "BenchRecord",
    "SpeedupSummary",
    "bench",
    "read_csv",
    "summarize",
    "write_csv",
]
