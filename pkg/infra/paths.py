from __future__ import annotations

from pathlib import Path

# Resolved project root (parent directory of this infra package).
PROJECT_ROOT = Path(__file__).resolve().parent.parent

# Common storage locations.
STORAGE_DIR = PROJECT_ROOT / "storage"
EGRAPH_STORAGE_DIR = STORAGE_DIR / "egraphs"
BENCH_STORAGE_DIR = STORAGE_DIR / "bench"

# Rule, term and pattern suites shipped with the repository.
SUITES_DIR = PROJECT_ROOT / "suites"
