from __future__ import annotations

from .base_engine import BaseEngine
from .options import EngineOptions
from .registry import resolve_engine


def create_engine(options: EngineOptions | str) -> BaseEngine:
    """Instantiate an engine from EngineOptions (or a bare registry key)."""
    if isinstance(options, str):
        options = EngineOptions(engine=options)
    cls = resolve_engine(options.engine)

    init_kwargs = options.init_params()
    init_kwargs.setdefault("name", options.engine)
    instance = cls(**init_kwargs)
    if not isinstance(instance, BaseEngine):
        raise TypeError(f"Engine {cls} is not a BaseEngine")

    return instance
