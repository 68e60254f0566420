import pytest

from engine import BacktrackEngine, BaseEngine, EngineOptions, GenericJoinEngine, NaiveEngine, create_engine, registered_engines, resolve_engine
from engine.registry import EngineRegistry
from query.planner import VariableOrdering


def test_builtin_engines_are_registered():
    assert {"gj", "em", "naive"} <= set(registered_engines())
    assert resolve_engine("gj") is GenericJoinEngine
    assert resolve_engine("em") is BacktrackEngine
    assert resolve_engine("engine.naive.NaiveEngine") is NaiveEngine


def test_unknown_engines():
    with pytest.raises(ValueError):
        resolve_engine("nope")
    with pytest.raises(TypeError):
        resolve_engine("query.planner.VariableOrdering")


def test_registry_refuses_a_taken_key():
    class Other(BaseEngine):
        def match(self, patterns, egraph):
            raise NotImplementedError

    registry = EngineRegistry(builtin_modules=())
    registry.register("x", NaiveEngine)
    registry.register("x", NaiveEngine)
    with pytest.raises(ValueError, match="already taken"):
        registry.register("x", Other)
    registry.unregister("x")
    registry.register("x", Other)
    assert list(registry) == ["x"]
    assert "gj" not in registry
    assert registry.resolve("x") is Other


def test_factory_passes_options():
    engine = create_engine(EngineOptions(engine="gj", ordering="?a,root", use_fast_path=False))
    assert isinstance(engine, GenericJoinEngine)
    assert engine.ordering == VariableOrdering.parse("?a,root")
    assert not engine.matcher.use_fast_path
    naive = create_engine(EngineOptions(engine="naive", naive_cap=7))
    assert naive.cap == 7
    assert create_engine("em").name == "em"


def test_options_round_trip():
    options = EngineOptions(engine="naive", naive_cap=5)
    assert EngineOptions.from_dict(options.to_dict()) == options
    with pytest.raises(ValueError):
        EngineOptions.from_dict({})
