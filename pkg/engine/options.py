from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional

from query.planner import VariableOrdering


@dataclass
class EngineOptions:
    """
    Serializable engine selection for ematch(), the CLI and the HTTP surface.

    `ordering` overrides the planner and only applies to the relational engine;
    `naive_cap` only applies to the naive engine.
    """
    engine: str = "gj"
    ordering: Optional[str] = None
    use_fast_path: bool = True
    naive_cap: Optional[int] = None

    def parsed_ordering(self) -> Optional[VariableOrdering]:
        return VariableOrdering.parse(self.ordering) if self.ordering else None

    def init_params(self) -> Dict[str, Any]:
        """Constructor arguments for the selected engine."""
        if self.engine == "gj":
            return {"ordering": self.parsed_ordering(), "use_fast_path": self.use_fast_path}
        if self.engine == "naive":
            return {"cap": self.naive_cap}
        return {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "engine": self.engine,
            "ordering": self.ordering,
            "use_fast_path": self.use_fast_path,
            "naive_cap": self.naive_cap,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> EngineOptions:
        if "engine" not in data:
            raise ValueError("EngineOptions requires 'engine'")
        return cls(
            engine=data["engine"],
            ordering=data.get("ordering"),
            use_fast_path=bool(data.get("use_fast_path", True)),
            naive_cap=data.get("naive_cap"),
        )
