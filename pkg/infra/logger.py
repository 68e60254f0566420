from __future__ import annotations

import json as _json
import logging
import sys
from pathlib import Path
from typing import IO, Union

from infra.paths import STORAGE_DIR

# Logging setup:
# - main.py (or the API process) calls configure_logging() once.
# - Library modules call get_logger(__name__) and never touch handlers themselves.
DEFAULT_FORMAT = "%(asctime)s %(levelname)s [%(name)s:%(lineno)d] %(message)s"
DEFAULT_LOGFILE = STORAGE_DIR / "logs" / "rem.log"

# Third-party loggers that drown out rem's own DEBUG output.
_QUIET_LOGGERS = ("httpx", "urllib3", "asyncio")


class JsonFormatter(logging.Formatter):
    """One JSON object per line; extra fields passed via `extra=` are kept."""

    _RESERVED = set(vars(logging.LogRecord("", 0, "", 0, "", None, None))) | {"message", "asctime"}

    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "time": self.formatTime(record),
            "level": record.levelname,
            "logger": record.name,
            "line": record.lineno,
            "msg": record.getMessage(),
        }
        for key, value in vars(record).items():
            if key not in self._RESERVED and not key.startswith("_"):
                payload[key] = value
        if record.exc_info:
            payload["exc"] = self.formatException(record.exc_info)
        return _json.dumps(payload, default=str)


def configure_logging(
    level: Union[str, int] = "INFO",
    *,
    json: bool = False,
    logfile: str | Path | None = DEFAULT_LOGFILE,
    stream: IO[str] | None = None,
) -> None:
    """
    Configure the root logger with a console handler and an optional file handler.

    Args:
        level: Logging level name or int (e.g., "DEBUG", logging.INFO).
        json: Emit JSON lines instead of the human-readable format.
        logfile: File to append to; None disables file output.
        stream: Console stream (stdout when omitted). The CLI passes stderr so
            match output on stdout stays machine-readable.
    """
    formatter: logging.Formatter = JsonFormatter() if json else logging.Formatter(DEFAULT_FORMAT)

    console = logging.StreamHandler(stream or sys.stdout)
    handlers: list[logging.Handler] = [console]
    if logfile is not None:
        path = Path(logfile)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(path, encoding="utf-8"))

    root = logging.getLogger()
    root.handlers.clear()
    root.setLevel(level)
    for handler in handlers:
        handler.setFormatter(formatter)
        root.addHandler(handler)

    for name in _QUIET_LOGGERS:
        logging.getLogger(name).setLevel(max(logging.WARNING, root.level))
    logging.captureWarnings(True)


def get_logger(name: str) -> logging.Logger:
    """Namespaced logger; configure_logging() is expected to have run once."""
    return logging.getLogger(name)
