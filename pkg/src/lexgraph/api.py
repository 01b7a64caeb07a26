"""HTTP service binding store, index, graph and decoration together.

The service is read-only: state is loaded once at startup (ingesting the
configured corpus when the store is empty) and every endpoint works over
that immutable snapshot. Payload rendering is shared with the CLI, so both
produce byte-identical JSON for identical parameters.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .decorate import decorate
from .graph import (
    ALL_COLLECTIONS,
    ALL_TYPES,
    DEFAULT_PRIORITY,
    DossierGraph,
    ExportFormat,
    Stage,
    export_view,
    filter_view,
    indegree_ranking,
    load_priority,
    neighborhood,
)
from .index import (
    EmptyQuery,
    Index,
    MalformedExpression,
    Query,
    SearchMode,
    SynonymSet,
    default_stemmer,
    default_synonyms,
    parse_expert,
    search,
)
from .model import Collection, ConnectionType, DocumentRecord
from .store import ReadSnapshot, Repository, doc_to_dict, ingest_corpus, ref_to_dict

logger = logging.getLogger("lexgraph.api")


@dataclass
class ApiConfig:
    corpus_dir: Path
    listen_address: str = "127.0.0.1:8590"
    store_dir: Optional[Path] = None
    registry_path: Optional[Path] = None
    priority_table_path: Optional[Path] = None
    log_path: Optional[Path] = None

    def resolved_store_dir(self) -> Path:
        if self.store_dir is not None:
            return Path(self.store_dir)
        if self.registry_path is not None:
            return Path(self.registry_path).parent
        return Path(self.corpus_dir) / ".lexgraph-store"


class ServiceState:
    """Immutable per-startup bundle every request handler reads from."""

    def __init__(
        self,
        snapshot: ReadSnapshot,
        priority=DEFAULT_PRIORITY,
        synonyms: Optional[SynonymSet] = None,
        stemmer=None,
    ):
        self.snapshot = snapshot
        self.graph = DossierGraph.from_snapshot(snapshot, priority)
        self.lead_of = {
            member: d.lead for d in self.graph.dossiers.values() for member in d.members
        }
        self.synonyms = synonyms or default_synonyms()
        self.index = Index(stemmer=stemmer or default_stemmer())
        self.index.index_snapshot(snapshot.docs)

    @classmethod
    def from_repository(cls, repo: Repository, priority=DEFAULT_PRIORITY) -> "ServiceState":
        synonyms_path = repo.root / "synonyms.tsv"
        synonyms = SynonymSet.load(synonyms_path) if synonyms_path.exists() else default_synonyms()
        stemmer = default_stemmer(repo.suffix_table)
        return cls(repo.snapshot(), priority=priority, synonyms=synonyms, stemmer=stemmer)


# --- canonical payload rendering (shared with the CLI) ------------------------------


def _dump(payload: dict) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def render_document(doc: DocumentRecord) -> str:
    return _dump(doc_to_dict(doc))


def render_references(doc: DocumentRecord) -> str:
    return _dump(
        {
            "celex": doc.id.celex,
            "references": [ref_to_dict(r) for r in doc.references],
        }
    )


def render_search_hits(hits) -> str:
    return _dump(
        {
            "hits": [
                {
                    "celex": h.doc.celex,
                    "score": h.score,
                    "highlights": [list(span) for span in h.highlights],
                }
                for h in hits
            ]
        }
    )


def render_ranking(ranking) -> str:
    return _dump({"ranking": [{"id": d, "indegree": n} for d, n in ranking]})


def render_graph(view) -> str:
    return export_view(view, ExportFormat.GRAPH_JSON)


# --- request-level helpers ------------------------------------------------------------


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


def parse_collections(raw: Optional[str]):
    if raw is None or raw == "":
        return ALL_COLLECTIONS
    return frozenset(Collection(x.strip().upper()) for x in raw.split(",") if x.strip())


def parse_edge_types(raw: Optional[str]):
    if raw is None or raw == "":
        return ALL_TYPES
    return frozenset(ConnectionType(x.strip().upper()) for x in raw.split(",") if x.strip())


def build_query(
    q: str, mode: str, synonyms: bool, window: Optional[int]
) -> Query:
    search_mode = SearchMode(mode.strip().upper())
    if search_mode is SearchMode.EXPERT:
        return Query(
            mode=search_mode,
            expert_expression=parse_expert(q),
            use_synonyms=synonyms,
        )
    terms = tuple(q.split())
    if search_mode is SearchMode.PROXIMITY:
        return Query(
            mode=search_mode, terms=terms, proximity_window=window or 5,
            use_synonyms=synonyms,
        )
    return Query(mode=search_mode, terms=terms, use_synonyms=synonyms)


def graph_view_for(state: ServiceState, celex: str, stage: Stage,
                   collections, edge_types):
    dossier_id = celex if celex in state.graph.dossiers else state.graph.dossier_of(celex)
    if dossier_id is None:
        return None
    view = neighborhood(dossier_id, stage, state.graph)
    if collections != ALL_COLLECTIONS or edge_types != ALL_TYPES:
        view = filter_view(view, collections, edge_types)
    return view


def build_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="lexgraph", docs_url=None, redoc_url=None)

    @app.middleware("http")
    async def request_log(request: Request, call_next):
        started = time.monotonic()
        response = await call_next(request)
        elapsed_ms = (time.monotonic() - started) * 1000.0
        logger.info(
            "%s %s %d %.2fms",
            request.method,
            request.url.path + (f"?{request.url.query}" if request.url.query else ""),
            response.status_code,
            elapsed_ms,
        )
        return response

    @app.get("/documents/{celex}")
    def get_document(celex: str):
        doc = state.snapshot.get(celex)
        if doc is None:
            return _error(404, "UNKNOWN_DOCUMENT", f"no document {celex}")
        return Response(render_document(doc), media_type="application/json")

    @app.get("/documents/{celex}/decorated")
    def get_decorated(celex: str):
        doc = state.snapshot.get(celex)
        if doc is None:
            return _error(404, "UNKNOWN_DOCUMENT", f"no document {celex}")
        decorated = decorate(doc, state.snapshot, state.lead_of)
        return Response(decorated.markup, media_type="text/html; charset=utf-8")

    @app.get("/documents/{celex}/references")
    def get_references(celex: str):
        doc = state.snapshot.get(celex)
        if doc is None:
            return _error(404, "UNKNOWN_DOCUMENT", f"no document {celex}")
        return Response(render_references(doc), media_type="application/json")

    @app.get("/graph/{celex}")
    def get_graph(
        celex: str,
        stage: str = "star",
        collections: Optional[str] = None,
        edge_types: Optional[str] = None,
    ):
        try:
            stage_value = Stage(stage.strip().upper())
        except ValueError:
            return _error(400, "BAD_STAGE", f"unknown stage {stage!r}")
        try:
            node_filter = parse_collections(collections)
            edge_filter = parse_edge_types(edge_types)
        except ValueError as exc:
            return _error(400, "BAD_FILTER", str(exc))
        view = graph_view_for(state, celex, stage_value, node_filter, edge_filter)
        if view is None:
            return _error(404, "UNKNOWN_DOCUMENT", f"no dossier for {celex}")
        return Response(render_graph(view), media_type="application/json")

    @app.get("/search")
    def get_search(
        q: str = "",
        mode: str = "any_word",
        synonyms: int = 0,
        window: Optional[int] = None,
    ):
        try:
            query = build_query(q, mode, bool(synonyms), window)
        except ValueError as exc:
            return _error(400, "BAD_QUERY", str(exc))
        try:
            hits = search(query, state.index, state.synonyms)
        except EmptyQuery as exc:
            return _error(400, "EMPTY_QUERY", str(exc))
        except MalformedExpression as exc:
            return _error(400, "MALFORMED_EXPRESSION", str(exc))
        return Response(render_search_hits(hits), media_type="application/json")

    @app.get("/rank")
    def get_rank(top: int = 10):
        if top <= 0:
            return _error(400, "BAD_PARAMETER", "top must be positive")
        ranking = indegree_ranking(state.graph, top)
        return Response(render_ranking(ranking), media_type="application/json")

    return app


def load_state(config: ApiConfig) -> ServiceState:
    """Open (or first ingest) the store named by the config."""
    store_dir = config.resolved_store_dir()
    repo = Repository(store_dir)
    if not repo.docs and Path(config.corpus_dir, "manifest.tsv").exists():
        ingest_corpus(config.corpus_dir, repo)
    priority = (
        load_priority(config.priority_table_path)
        if config.priority_table_path
        else DEFAULT_PRIORITY
    )
    return ServiceState.from_repository(repo, priority)


def serve(config: ApiConfig) -> None:
    """Run the HTTP service until interrupted."""
    import uvicorn

    if config.log_path:
        handler = logging.FileHandler(config.log_path, encoding="utf-8")
        handler.setFormatter(logging.Formatter("%(asctime)s %(message)s"))
        logger.addHandler(handler)
        logger.setLevel(logging.INFO)
    if not Path(config.corpus_dir).is_dir():
        raise SystemExit(f"corpus directory not readable: {config.corpus_dir}")
    state = load_state(config)
    app = build_app(state)
    host, _, port = config.listen_address.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8590), log_level="warning")
