"""
Centralized Logfire configuration.

Call configure_logfire() once near process startup. Spans are only shipped
when a Logfire token is present; otherwise they stay local.
"""

from functools import lru_cache

import logfire

from infra.settings import get_settings


@lru_cache(maxsize=1)
def configure_logfire(service_name: str | None = None) -> None:
    """
    Configure Logfire for this process.

    Idempotent: repeated calls in the same process no-op after the first.
    """
    logfire.configure(
        service_name=service_name or get_settings().service_name,
        send_to_logfire="if-token-present",
        console=False,
    )
