from __future__ import annotations

import importlib
from typing import Callable, Dict, Iterator, Tuple, Type, TypeVar

from infra.logger import get_logger

from .base_engine import BaseEngine

logger = get_logger(__name__)

EngineType = TypeVar("EngineType", bound=Type[BaseEngine])

# Modules whose import registers the shipped engines.
BUILTIN_ENGINE_MODULES: Tuple[str, ...] = ("engine.matcher", "engine.backtrack", "engine.naive")


class EngineRegistry:
    """
    Engine classes by key.

    Built-in engines are loaded lazily on the first lookup. Anything else is
    reachable either by registering it or by its dotted import path.
    """

    def __init__(self, builtin_modules: Tuple[str, ...] = BUILTIN_ENGINE_MODULES) -> None:
        self._engines: Dict[str, Type[BaseEngine]] = {}
        self._builtin_modules = builtin_modules
        self._builtins_loaded = False

    def register(self, key: str, cls: Type[BaseEngine]) -> None:
        current = self._engines.get(key)
        if current is not None and current is not cls:
            raise ValueError(f"Engine key '{key}' already taken by {current.__qualname__}")
        self._engines[key] = cls
        logger.debug("Registered engine %s -> %s", key, cls.__qualname__)

    def unregister(self, key: str) -> None:
        self._engines.pop(key, None)

    def resolve(self, type_ref: str) -> Type[BaseEngine]:
        """Look up a registry key, falling back to an import path like "pkg.module.Class"."""
        self._load_builtins()
        if type_ref in self._engines:
            return self._engines[type_ref]
        if "." not in type_ref:
            raise ValueError(f"Unknown engine '{type_ref}'. Registered engines: {', '.join(self)}.")

        module_name, class_name = type_ref.rsplit(".", 1)
        cls = getattr(importlib.import_module(module_name), class_name)
        if not isinstance(cls, type) or not issubclass(cls, BaseEngine):
            raise TypeError(f"{type_ref} is not a BaseEngine subclass")
        return cls

    def __iter__(self) -> Iterator[str]:
        self._load_builtins()
        return iter(sorted(self._engines))

    def __contains__(self, key: object) -> bool:
        self._load_builtins()
        return key in self._engines

    def _load_builtins(self) -> None:
        if self._builtins_loaded:
            return
        # Set first: the imported modules register through this same instance.
        self._builtins_loaded = True
        for module_name in self._builtin_modules:
            importlib.import_module(module_name)


ENGINES = EngineRegistry()


def register_engine(key: str, cls: EngineType | None = None) -> EngineType | Callable[[EngineType], EngineType]:
    """
    Register an engine class under a key in the shared registry.

    Works as a decorator (`@register_engine("gj")`) or as a direct call
    (`register_engine("gj", GenericJoinEngine)`).
    """
    def decorator(target_cls: EngineType) -> EngineType:
        ENGINES.register(key, target_cls)
        return target_cls

    return decorator if cls is None else decorator(cls)


def resolve_engine(type_ref: str) -> Type[BaseEngine]:
    return ENGINES.resolve(type_ref)


def registered_engines() -> list[str]:
    return list(ENGINES)
