"""Command-line interface: ingest, backfill, extract, search, graph,
decorate, rank, serve.

Exit codes: 0 success, 1 domain error, 2 usage error. JSON outputs are
rendered by the same functions the HTTP service uses, so payloads are
byte-identical for identical parameters.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .api import (
    ApiConfig,
    ServiceState,
    build_query,
    graph_view_for,
    parse_collections,
    parse_edge_types,
    render_graph,
    render_ranking,
    render_search_hits,
    serve as serve_api,
)
from .decorate import decorate as decorate_doc
from .graph import (
    DEFAULT_PRIORITY,
    ExportFormat,
    Stage,
    export_view,
    indegree_ranking,
    load_priority,
)
from .index import EmptyQuery, MalformedExpression, search as run_search
from .store import Repository, backfill, ingest_corpus, prepare_store


def _open_repo(store: Path, need_documents: bool = True) -> Repository:
    repo = Repository(store)
    if need_documents and not repo.docs:
        raise click.ClickException(f"store {store} is empty; run `lexgraph ingest` first")
    return repo


def _state(store: Path, priority_path: Path | None = None) -> ServiceState:
    repo = _open_repo(store)
    priority = load_priority(priority_path) if priority_path else DEFAULT_PRIORITY
    return ServiceState.from_repository(repo, priority)


@click.group()
@click.option(
    "--store",
    type=click.Path(path_type=Path),
    default=Path("./lexgraph-store"),
    envvar="LEXGRAPH_STORE",
    show_default=True,
    help="Store directory holding ingested documents.",
)
@click.pass_context
def cli(ctx: click.Context, store: Path) -> None:
    ctx.obj = store


@cli.command()
@click.argument("corpus_dir", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.pass_obj
def ingest(store: Path, corpus_dir: Path) -> None:
    """Ingest a fixture corpus directory into the store."""
    try:
        repo = prepare_store(corpus_dir, store)
        report = ingest_corpus(corpus_dir, repo)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps(report.as_dict(), ensure_ascii=False, indent=2))


@cli.command(name="backfill")
@click.argument(
    "corpus_dirs", nargs=-1, required=True,
    type=click.Path(exists=True, file_okay=False, path_type=Path),
)
@click.pass_obj
def backfill_cmd(store: Path, corpus_dirs: tuple[Path, ...]) -> None:
    """Resolve missing references from the original source directories."""
    repo = _open_repo(store)
    report = backfill(repo, corpus_dirs)
    click.echo(json.dumps(report.as_dict(), ensure_ascii=False, indent=2))


@cli.command()
@click.option("--celex", default=None, help="Re-extract a single document.")
@click.pass_obj
def extract(store: Path, celex: str | None) -> None:
    """Re-run reference and entity extraction over stored documents."""
    repo = _open_repo(store)
    if celex is not None:
        doc = repo.get(celex)
        if doc is None:
            raise click.ClickException(f"unknown document {celex}")
        docs = [doc]
    else:
        docs = [repo.docs[c] for c in sorted(repo.docs)]
    for doc in docs:
        repo.extract_document(doc)
    repo.refresh_resolution()
    repo.save()
    refs = sum(len(d.references) for d in docs)
    click.echo(f"extracted\t{len(docs)}\nreferences\t{refs}")


@cli.command()
@click.option(
    "--mode",
    type=click.Choice(
        ["exact_phrase", "all_words", "any_word", "proximity", "expert"],
        case_sensitive=False,
    ),
    default="any_word",
    show_default=True,
)
@click.option("--synonyms", is_flag=True, help="Expand terms through the thesaurus.")
@click.option("--window", type=int, default=None, help="Proximity window in tokens.")
@click.option("--json", "as_json", is_flag=True, help="Emit the API JSON payload.")
@click.argument("terms", nargs=-1, required=True)
@click.pass_obj
def search(store: Path, mode: str, synonyms: bool, window: int | None,
           as_json: bool, terms: tuple[str, ...]) -> None:
    """Search indexed document bodies."""
    state = _state(store)
    try:
        query = build_query(" ".join(terms), mode, synonyms, window)
        hits = run_search(query, state.index, state.synonyms)
    except (EmptyQuery, MalformedExpression, ValueError) as exc:
        raise click.ClickException(str(exc))
    if as_json:
        click.echo(render_search_hits(hits), nl=False)
    else:
        for hit in hits:
            click.echo(f"{hit.doc.celex}\t{hit.score}")


@cli.command(name="graph")
@click.argument("celex")
@click.option(
    "--stage",
    type=click.Choice(["star", "cross", "second"], case_sensitive=False),
    default="star",
    show_default=True,
)
@click.option("--collections", default=None, help="Comma-separated collection filter.")
@click.option("--edge-types", default=None, help="Comma-separated connection type filter.")
@click.option(
    "--format", "fmt",
    type=click.Choice(["dot", "json"], case_sensitive=False),
    default="json",
    show_default=True,
)
@click.option("--priority-table", type=click.Path(exists=True, path_type=Path), default=None)
@click.pass_obj
def graph_cmd(store: Path, celex: str, stage: str, collections: str | None,
              edge_types: str | None, fmt: str, priority_table: Path | None) -> None:
    """Export the staged neighborhood of a document's dossier."""
    state = _state(store, priority_table)
    try:
        node_filter = parse_collections(collections)
        edge_filter = parse_edge_types(edge_types)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    view = graph_view_for(state, celex, Stage(stage.upper()), node_filter, edge_filter)
    if view is None:
        raise click.ClickException(f"no dossier for {celex}")
    if fmt == "dot":
        click.echo(export_view(view, ExportFormat.DOT), nl=False)
    else:
        click.echo(render_graph(view), nl=False)


@cli.command(name="decorate")
@click.argument("celex")
@click.pass_obj
def decorate_cmd(store: Path, celex: str) -> None:
    """Print the decorated markup of a document body."""
    state = _state(store)
    doc = state.snapshot.get(celex)
    if doc is None:
        raise click.ClickException(f"unknown document {celex}")
    decorated = decorate_doc(doc, state.snapshot, state.lead_of)
    click.echo(decorated.markup)


@cli.command()
@click.option("--top", type=int, default=10, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit the API JSON payload.")
@click.pass_obj
def rank(store: Path, top: int, as_json: bool) -> None:
    """Top dossiers by incoming directed references."""
    if top <= 0:
        raise click.ClickException("--top must be positive")
    state = _state(store)
    ranking = indegree_ranking(state.graph, top)
    if as_json:
        click.echo(render_ranking(ranking), nl=False)
    else:
        for dossier_id, indegree in ranking:
            click.echo(f"{dossier_id}\t{indegree}")


@cli.command()
@click.option("--listen", default="127.0.0.1:8590", show_default=True)
@click.option(
    "--corpus",
    type=click.Path(exists=True, file_okay=False, path_type=Path),
    required=True,
    help="Corpus fixture directory (ingested at startup when the store is empty).",
)
@click.option("--log", "log_path", type=click.Path(path_type=Path), default=None)
@click.option("--priority-table", type=click.Path(exists=True, path_type=Path), default=None)
@click.pass_obj
def serve(store: Path, listen: str, corpus: Path, log_path: Path | None,
          priority_table: Path | None) -> None:
    """Run the HTTP service."""
    config = ApiConfig(
        corpus_dir=corpus,
        listen_address=listen,
        store_dir=store,
        priority_table_path=priority_table,
        log_path=log_path,
    )
    serve_api(config)


def run_cli(argv: list[str]) -> int:
    """Programmatic entry point with the documented exit-code contract."""
    try:
        cli.main(args=list(argv), standalone_mode=False)
        return 0
    except click.UsageError as exc:
        exc.show()
        return 2
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        return 1


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
