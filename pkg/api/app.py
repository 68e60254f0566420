"""HTTP API for loading an e-graph and matching patterns against it interactively."""

import threading
from typing import Any, Dict, List

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from egraph.core.errors import (
    ArityError,
    AssignmentSpaceError,
    InvalidOrderingError,
    SexprError,
    UnknownSymbolError,
)
from egraph.egraph import EGraph
from engine.base_engine import BaseEngine
from engine.factory import create_engine
from engine.options import EngineOptions
from infra.logger import get_logger
from infra.settings import get_settings
from runtime.logfire_config import configure_logfire
from runtime.sexpr import parse_multi

# Configure observability before the app serves requests.
configure_logfire()

log = get_logger(__name__)

app = FastAPI(title="rem")
egraph: EGraph | None = None
# Engines are kept per (engine, ordering) so relational indices survive between requests.
_engines: Dict[tuple, BaseEngine] = {}
_lock = threading.Lock()

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


class EGraphRequest(BaseModel):
    egraph: Dict[str, Any]


class MatchRequest(BaseModel):
    pattern: str
    engine: str = Field(default_factory=lambda: get_settings().default_engine)
    ordering: str | None = None


class MatchResponse(BaseModel):
    count: int
    head: List[str]
    rows: List[List[int]]


@app.post("/egraph")
def load_egraph(request: EGraphRequest):
    global egraph
    try:
        loaded = EGraph.from_dict(request.egraph)
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise HTTPException(422, f"invalid e-graph: {exc}") from exc
    with _lock:
        egraph = loaded
        _engines.clear()
    log.info("loaded e-graph with %d e-node(s)", loaded.num_nodes)
    return {"nodes": loaded.num_nodes, "classes": loaded.num_classes}


@app.post("/match", response_model=MatchResponse)
def match(request: MatchRequest):
    if egraph is None:
        raise HTTPException(400, "No e-graph loaded")
    try:
        patterns = parse_multi(request.pattern, egraph.symbols.copy())
        options = EngineOptions(
            engine=request.engine, ordering=request.ordering, naive_cap=get_settings().naive_cap
        )
        with _lock:
            key = (options.engine, options.ordering)
            engine = _engines.get(key)
            if engine is None:
                engine = _engines[key] = create_engine(options)
        result = engine.match(patterns, egraph)
    except (SexprError, ArityError, InvalidOrderingError, UnknownSymbolError, ValueError, TypeError) as exc:
        raise HTTPException(422, str(exc)) from exc
    except AssignmentSpaceError as exc:
        raise HTTPException(413, str(exc)) from exc
    return MatchResponse(count=len(result), head=list(result.head), rows=[list(r) for r in result.sorted_rows()])


@app.get("/status")
def status():
    if egraph is None:
        return {"loaded": False}
    return {
        "loaded": True,
        "nodes": egraph.num_nodes,
        "classes": egraph.num_classes,
        "version": egraph.version,
    }
