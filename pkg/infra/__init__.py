from .paths import BENCH_STORAGE_DIR, EGRAPH_STORAGE_DIR, PROJECT_ROOT, STORAGE_DIR, SUITES_DIR
from .logger import configure_logging, get_logger
from .settings import Settings, get_settings

__all__ = [
    "PROJECT_ROOT",
    "STORAGE_DIR",
    "EGRAPH_STORAGE_DIR",
    "BENCH_STORAGE_DIR",
    "SUITES_DIR",
    "configure_logging",
    "get_logger",
    "Settings",
    "get_settings",
]
