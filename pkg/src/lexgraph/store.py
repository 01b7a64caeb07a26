"""Document repository: fixture ingestion, persistence, backfill, snapshots.

A corpus fixture is a directory with a ``manifest.tsv`` (one document per
line: ``source<TAB>relative_path<TAB>native_id<TAB>collection<TAB>language
<TAB>date``), per-source document files under ``eurlex/``, ``curia/``,
``ab/`` and ``obh/``, and optional authority/synonym/suffix overrides.
Files present in the source directories but absent from the manifest form
the pool the backfill can still discover, mirroring a source that holds
more than the crawler initially knew about.

The store itself is a single directory: one JSON record per document plus
the pseudo-identifier registry. Writes are single-writer; reads go through
immutable snapshots.
"""

from __future__ import annotations

import copy
import datetime as dt
import hashlib
import json
import shutil
import unicodedata
from dataclasses import dataclass, field
from html.parser import HTMLParser
from pathlib import Path
from typing import Iterable, Optional
from xml.etree import ElementTree

from .authorities import AuthoritySet, authority_files_present
from .extract import (
    AcronymOccurrence,
    DocRef,
    EntityKind,
    NamedEntity,
    RefKind,
    apply_extraction,
    run_extraction,
)
from .identifiers import (
    MalformedIdentifier,
    celex_for_case,
    parse_eu_case,
    parse_hu_decision,
    pseudo_celex,
    SerialRegistry,
)
from .model import Collection, ConnectionType, DocId, DocumentRecord
from .textnorm import SuffixTable, default_suffix_table, fold_text

SOURCES = ("EURLEX", "CURIA", "AB", "OBH")

_SOURCE_DIRS = {"EURLEX": "eurlex", "CURIA": "curia", "AB": "ab", "OBH": "obh"}

BACKFILL_PASS_LIMIT = 3


class FixtureError(ValueError):
    """Raised when a fixture directory or manifest is structurally invalid."""


@dataclass(frozen=True)
class ManifestEntry:
    source: str
    relative_path: str
    native_id: str
    collection: Collection
    language: str
    date: dt.date


@dataclass
class SourceFixture:
    """One source's slice of a corpus fixture directory."""

    source: str
    root_path: Path
    manifest: list[ManifestEntry]

    def validate(self) -> None:
        for entry in self.manifest:
            if not (self.root_path / entry.relative_path).exists():
                raise FixtureError(
                    f"manifest names a missing file: {entry.relative_path}"
                )


def load_fixtures(corpus_dir: Path | str) -> list[SourceFixture]:
    """Read ``manifest.tsv`` and group its entries into per-source fixtures."""
    root = Path(corpus_dir)
    manifest_path = root / "manifest.tsv"
    if not manifest_path.exists():
        raise FixtureError(f"no manifest.tsv under {root}")
    by_source: dict[str, list[ManifestEntry]] = {}
    for lineno, line in enumerate(manifest_path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 6:
            raise FixtureError(f"manifest line {lineno} must have 6 fields: {line!r}")
        source, rel, native_id, collection, language, date = fields
        if source not in SOURCES:
            raise FixtureError(f"unknown source {source!r} on manifest line {lineno}")
        entry = ManifestEntry(
            source=source,
            relative_path=rel,
            native_id=native_id,
            collection=Collection(collection),
            language=language,
            date=dt.date.fromisoformat(date),
        )
        by_source.setdefault(source, []).append(entry)
    fixtures = [SourceFixture(src, root, entries) for src, entries in by_source.items()]
    for fixture in fixtures:
        fixture.validate()
    return fixtures


# --- source file readers -----------------------------------------------------------


class _HtmlDoc(HTMLParser):
    """Minimal deterministic HTML reader: meta tags, title, paragraph text."""

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.metas: dict[str, str] = {}
        self.title = ""
        self.paragraphs: list[str] = []
        self._in_title = False
        self._in_body = False
        self._chunk: list[str] = []

    def handle_starttag(self, tag, attrs):
        if tag == "meta":
            d = dict(attrs)
            if "name" in d and "content" in d:
                self.metas[d["name"]] = d["content"]
        elif tag == "title":
            self._in_title = True
        elif tag == "body":
            self._in_body = True
        elif tag in ("p", "div", "li", "h1", "h2", "h3", "br") and self._in_body:
            self._flush()

    def handle_endtag(self, tag):
        if tag == "title":
            self._in_title = False
        elif tag == "body":
            self._flush()
            self._in_body = False
        elif tag in ("p", "div", "li", "h1", "h2", "h3"):
            self._flush()

    def handle_data(self, data):
        if self._in_title:
            self.title += data
        elif self._in_body:
            self._chunk.append(data)

    def _flush(self):
        text = "".join(self._chunk).strip()
        if text:
            self.paragraphs.append(text)
        self._chunk = []

    @property
    def body_text(self) -> str:
        return "\n".join(self.paragraphs)


def _normalize_text(s: str) -> str:
    s = unicodedata.normalize("NFC", s.replace("\r\n", "\n").replace("\r", "\n"))
    return s.strip()


def _parse_html(path: Path) -> _HtmlDoc:
    parser = _HtmlDoc()
    parser.feed(path.read_text(encoding="utf-8"))
    return parser


def _read_eurlex(path: Path) -> DocumentRecord:
    """XML metadata file plus an HTML body sibling (same stem, .html)."""
    tree = ElementTree.parse(path)
    root = tree.getroot()
    celex = root.get("celex")
    if not celex:
        raise FixtureError(f"{path}: eurlex document lacks a celex attribute")
    body_path = path.with_suffix(".html")
    if not body_path.exists():
        raise FixtureError(f"{path}: missing body file {body_path.name}")
    html = _parse_html(body_path)
    metadata: dict[str, str] = {}
    for meta in root.findall("meta"):
        metadata[meta.get("key", "")] = meta.text or ""
    connections = [
        f"{c.get('type')} {c.get('target')}" for c in root.findall("connection")
    ]
    if connections:
        metadata["connections"] = ";".join(connections)
    title = (root.findtext("title") or html.title).strip()
    date = dt.date.fromisoformat((root.findtext("date") or "").strip())
    return DocumentRecord(
        id=DocId(celex=celex, ecli=root.get("ecli") or None),
        collection=Collection(root.get("collection", "EU_LEGISLATION")),
        language=root.get("lang", "hu"),
        title=title,
        body=_normalize_text(html.body_text),
        publication_date=date,
        metadata=metadata,
    )


def _read_curia(path: Path) -> DocumentRecord:
    """Single HTML file; a missing celex is generated from the case number."""
    html = _parse_html(path)
    case = html.metas.get("case", "")
    if not case:
        raise FixtureError(f"{path}: curia document lacks a case meta tag")
    case_number = parse_eu_case(case)
    celex = html.metas.get("celex") or celex_for_case(case_number).render()
    metadata = {
        k: v
        for k, v in html.metas.items()
        if k not in ("case", "celex", "ecli", "date", "lang")
    }
    joined = html.metas.get("joined", "")
    if joined:
        metadata["joined_cases"] = joined
    return DocumentRecord(
        id=DocId(celex=celex, ecli=html.metas.get("ecli") or None, native_id=case),
        collection=Collection.EU_CASELAW,
        language=html.metas.get("lang", "hu"),
        title=html.title.strip(),
        body=_normalize_text(html.body_text),
        publication_date=dt.date.fromisoformat(html.metas["date"]),
        case_number=case,
        metadata=metadata,
    )


def _read_ab(path: Path, registry: SerialRegistry) -> DocumentRecord:
    """Single HTML page carrying the decision text and all published metadata."""
    html = _parse_html(path)
    number = html.metas.get("decision", "")
    if not number:
        raise FixtureError(f"{path}: AB document lacks a decision meta tag")
    metadata = {
        k: v
        for k, v in html.metas.items()
        if k not in ("decision", "guid", "date", "lang")
    }
    doc = DocumentRecord(
        id=DocId(celex=f"pending:{number}", native_id=number,
                 source_guid=html.metas.get("guid") or None),
        collection=Collection.HU_AB,
        language=html.metas.get("lang", "hu"),
        title=html.title.strip() or number,
        body=_normalize_text(html.body_text),
        publication_date=dt.date.fromisoformat(html.metas["date"]),
        metadata=metadata,
    )
    celex = pseudo_celex(doc, registry).render()
    doc.id = DocId(celex=celex, native_id=number, source_guid=doc.id.source_guid)
    return doc


def _read_obh(path: Path, registry: SerialRegistry, authorities: AuthoritySet) -> DocumentRecord:
    """Plain-text ruling plus a `<path>.meta.tsv` sidecar."""
    sidecar = Path(str(path) + ".meta.tsv")
    if not sidecar.exists():
        raise FixtureError(f"{path}: missing sidecar {sidecar.name}")
    meta: dict[str, str] = {}
    for line in sidecar.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        key, _, value = line.partition("\t")
        meta[key] = value
    court_raw = meta.pop("court", "")
    number_raw = meta.pop("number", "")
    if not court_raw or not number_raw:
        raise FixtureError(f"{path}: sidecar needs court and number keys")
    court = authorities.normalize_court(court_raw) or court_raw
    number = parse_hu_decision(number_raw).render()
    date = dt.date.fromisoformat(meta.pop("date"))
    connections = []
    previous = meta.pop("previous", "")
    subsequent = meta.pop("subsequent", "")
    if previous:
        connections.append(f"FOLLOWS hu:{previous}")
    if subsequent:
        connections.append(f"PRECEDES hu:{subsequent}")
    if connections:
        existing = meta.get("connections", "")
        meta["connections"] = ";".join(filter(None, [existing, *connections]))
    native_id = f"{court}|{number}"
    doc = DocumentRecord(
        id=DocId(celex=f"pending:{native_id}", native_id=native_id),
        collection=Collection.HU_OBH,
        language=meta.pop("lang", "hu"),
        title=meta.pop("title", f"{court} {number}"),
        body=_normalize_text(path.read_text(encoding="utf-8")),
        publication_date=date,
        court=court,
        metadata=meta,
    )
    celex = pseudo_celex(doc, registry).render()
    doc.id = DocId(celex=celex, native_id=native_id)
    return doc


# --- repository ---------------------------------------------------------------------


def _content_hash(doc: DocumentRecord) -> str:
    payload = json.dumps(
        [
            doc.title, doc.body, doc.publication_date.isoformat(),
            doc.language, doc.collection.value, sorted(doc.metadata.items()),
            doc.case_number, doc.court,
        ],
        ensure_ascii=False,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass
class IngestReport:
    ingested: int = 0
    updated: int = 0
    failed: int = 0
    errors: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "ingested": self.ingested,
            "updated": self.updated,
            "failed": self.failed,
            "errors": list(self.errors),
        }


@dataclass
class BackfillQueue:
    """Unresolved target identifiers awaiting a source lookup.

    ``pending`` and ``attempted`` stay disjoint; a key enters pending at
    most once per run.
    """

    pending: dict[str, None] = field(default_factory=dict)
    attempted: set[str] = field(default_factory=set)

    def offer(self, key: str) -> None:
        if key not in self.attempted and key not in self.pending:
            self.pending[key] = None

    def take_all(self) -> list[str]:
        keys = list(self.pending)
        self.attempted.update(keys)
        self.pending.clear()
        return keys


@dataclass
class BackfillReport:
    passes: int = 0
    before_ratio: float = 1.0
    after_ratio: float = 1.0
    recovered: list[str] = field(default_factory=list)
    still_unresolved: list[str] = field(default_factory=list)
    exhausted: bool = False

    def as_dict(self) -> dict:
        return {
            "passes": self.passes,
            "before_ratio": self.before_ratio,
            "after_ratio": self.after_ratio,
            "recovered": list(self.recovered),
            "still_unresolved": list(self.still_unresolved),
            "exhausted": self.exhausted,
        }


class Repository:
    """Single-writer document store over one directory."""

    def __init__(
        self,
        root: Path | str,
        authorities: Optional[AuthoritySet] = None,
        suffix_table: Optional[SuffixTable] = None,
    ):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        (self.root / "documents").mkdir(exist_ok=True)
        if authorities is None:
            authorities = (
                AuthoritySet.load(self.root / "authorities")
                if authority_files_present(self.root / "authorities")
                else AuthoritySet.default()
            )
        self.authorities = authorities
        if suffix_table is None:
            local = self.root / "suffixes.tsv"
            suffix_table = SuffixTable.load(local) if local.exists() else default_suffix_table()
        self.suffix_table = suffix_table
        self.registry = SerialRegistry(self.root / "registry.tsv")
        self.docs: dict[str, DocumentRecord] = {}
        self._hashes: dict[str, str] = {}
        self._load()

    # -- lookups ----------------------------------------------------------

    def get(self, celex: str) -> Optional[DocumentRecord]:
        return self.docs.get(celex)

    def by_ecli(self, ecli: str) -> Optional[DocumentRecord]:
        for doc in self.docs.values():
            if doc.id.ecli and doc.id.ecli.upper() == ecli.upper():
                return doc
        return None

    def by_native(self, court: str, number: str) -> Optional[DocumentRecord]:
        key = fold_text(f"{court}|{number}")
        for doc in self.docs.values():
            if doc.id.native_id and fold_text(doc.id.native_id) == key:
                return doc
        return None

    def by_case_number(self, case: str) -> Optional[DocumentRecord]:
        for doc in self.docs.values():
            if doc.case_number == case or case in self._joined_cases(doc):
                return doc
        return None

    @staticmethod
    def _joined_cases(doc: DocumentRecord) -> list[str]:
        joined = doc.metadata.get("joined_cases", "")
        return [c for c in joined.replace(",", " ").split() if c]

    def resolve_key(self, key: str) -> Optional[DocId]:
        """Resolve a DocRef target key against the current repository state."""
        return resolve_target_key(self.docs, key)

    # -- persistence --------------------------------------------------------

    def _doc_path(self, celex: str) -> Path:
        return self.root / "documents" / f"{celex}.json"

    def _load(self) -> None:
        for path in sorted((self.root / "documents").glob("*.json")):
            doc = doc_from_dict(json.loads(path.read_text(encoding="utf-8")))
            self.docs[doc.id.celex] = doc
            self._hashes[doc.id.celex] = _content_hash(doc)

    def save(self) -> None:
        for celex, doc in self.docs.items():
            self._doc_path(celex).write_text(
                json.dumps(doc_to_dict(doc), ensure_ascii=False, indent=1),
                encoding="utf-8",
            )

    # -- mutation -------------------------------------------------------------

    def add(self, doc: DocumentRecord) -> str:
        """Insert or replace; returns 'new', 'updated' or 'unchanged'."""
        celex = doc.id.celex
        new_hash = _content_hash(doc)
        if celex in self.docs:
            if self._hashes.get(celex) == new_hash:
                return "unchanged"
            self.docs[celex] = doc
            self._hashes[celex] = new_hash
            return "updated"
        self.docs[celex] = doc
        self._hashes[celex] = new_hash
        return "new"

    def extract_document(self, doc: DocumentRecord) -> None:
        result = run_extraction(doc, self.authorities, resolver=self)
        apply_extraction(doc, result)

    def refresh_resolution(self) -> None:
        """Re-evaluate resolution of every reference repository-wide."""
        for doc in self.docs.values():
            for ref in doc.references:
                if ref.target_key is None:
                    ref.resolved = False
                    continue
                found = self.resolve_key(ref.target_key)
                if found is not None:
                    ref.target = found
                    ref.resolved = True
                else:
                    ref.resolved = False

    # -- metrics ----------------------------------------------------------------

    def reference_counts(self) -> tuple[int, int]:
        total = resolved = 0
        for doc in self.docs.values():
            for ref in doc.references:
                total += 1
                resolved += 1 if ref.resolved else 0
        return resolved, total

    def resolved_ratio(self) -> float:
        resolved, total = self.reference_counts()
        return resolved / total if total else 1.0

    def unresolved_keys(self) -> list[str]:
        keys: dict[str, None] = {}
        for celex in sorted(self.docs):
            for ref in self.docs[celex].references:
                if not ref.resolved and ref.target_key:
                    keys.setdefault(ref.target_key)
        return list(keys)

    def snapshot(self) -> "ReadSnapshot":
        return ReadSnapshot(
            docs={celex: copy.deepcopy(doc) for celex, doc in self.docs.items()}
        )


@dataclass(frozen=True)
class ReadSnapshot:
    """Immutable point-in-time view of the repository."""

    docs: dict[str, DocumentRecord]

    def get(self, celex: str) -> Optional[DocumentRecord]:
        return self.docs.get(celex)

    def __len__(self) -> int:
        return len(self.docs)

    def by_ecli(self, ecli: str) -> Optional[DocumentRecord]:
        for doc in self.docs.values():
            if doc.id.ecli and doc.id.ecli.upper() == ecli.upper():
                return doc
        return None

    def by_native(self, court: str, number: str) -> Optional[DocumentRecord]:
        key = fold_text(f"{court}|{number}")
        for doc in self.docs.values():
            if doc.id.native_id and fold_text(doc.id.native_id) == key:
                return doc
        return None

    def by_case_number(self, case: str) -> Optional[DocumentRecord]:
        for doc in self.docs.values():
            if doc.case_number == case or case in Repository._joined_cases(doc):
                return doc
        return None

    def resolve_key(self, key: str) -> Optional[DocId]:
        return resolve_target_key(self.docs, key)


def resolve_target_key(docs: dict[str, DocumentRecord], key: str) -> Optional[DocId]:
    """Resolve a DocRef target key against a document mapping."""
    scheme, _, value = key.partition(":")
    if scheme == "celex":
        doc = docs.get(value)
        if doc is None:
            doc = _by_case_celex(docs, value)
        return doc.id if doc else None
    if scheme == "ab":
        for doc in docs.values():
            if doc.collection is Collection.HU_AB and doc.id.native_id:
                if doc.id.native_id == value or doc.id.native_id.startswith(value + "."):
                    return doc.id
                if fold_text(doc.id.native_id).startswith(fold_text(value)):
                    return doc.id
        return None
    if scheme == "hu":
        court, _, number = value.partition("|")
        want = fold_text(f"{court}|{number}")
        for doc in docs.values():
            if doc.id.native_id and fold_text(doc.id.native_id) == want:
                return doc.id
        return None
    if scheme == "alias":
        for doc in docs.values():
            alias = doc.metadata.get("alias", "")
            if alias and fold_text(alias) == value:
                return doc.id
        return None
    return None


def _by_case_celex(docs: dict[str, DocumentRecord], celex: str) -> Optional[DocumentRecord]:
    """Match generated case celexes of joined-case members."""
    for doc in docs.values():
        if doc.collection is not Collection.EU_CASELAW:
            continue
        cases = ([doc.case_number] if doc.case_number else []) + Repository._joined_cases(doc)
        for case in cases:
            try:
                if celex_for_case(parse_eu_case(case)).render() == celex:
                    return doc
            except MalformedIdentifier:
                continue
    return None


# --- ingestion and backfill ------------------------------------------------------------


def _read_source_file(
    source: str, path: Path, repo: Repository
) -> DocumentRecord:
    if source == "EURLEX":
        return _read_eurlex(path)
    if source == "CURIA":
        return _read_curia(path)
    if source == "AB":
        return _read_ab(path, repo.registry)
    if source == "OBH":
        return _read_obh(path, repo.registry, repo.authorities)
    raise FixtureError(f"unknown source {source!r}")


def ingest(fixture: SourceFixture, repo: Repository) -> IngestReport:
    """Ingest every manifest entry: parse, normalize, identify, store,
    extract. Per-document failures are reported, never abort the run."""
    report = IngestReport()
    changed: list[DocumentRecord] = []
    for entry in fixture.manifest:
        path = fixture.root_path / entry.relative_path
        try:
            doc = _read_source_file(entry.source, path, repo)
        except Exception as exc:  # per-document isolation
            report.failed += 1
            report.errors.append(f"{entry.relative_path}: {exc}")
            continue
        status = repo.add(doc)
        if status == "new":
            report.ingested += 1
            changed.append(doc)
        elif status == "updated":
            report.updated += 1
            changed.append(doc)
    for doc in changed:
        repo.extract_document(doc)
    repo.refresh_resolution()
    repo.save()
    return report


def ingest_corpus(corpus_dir: Path | str, repo: Repository) -> IngestReport:
    """Ingest all source fixtures under one corpus directory."""
    total = IngestReport()
    for fixture in load_fixtures(corpus_dir):
        part = ingest(fixture, repo)
        total.ingested += part.ingested
        total.updated += part.updated
        total.failed += part.failed
        total.errors.extend(part.errors)
    return total


class _SourceCatalog:
    """Identifier index over every parseable file under the fixture roots,
    manifest-listed or not. Parsed lazily, once per file."""

    def __init__(self, roots: Iterable[Path]):
        self.roots = [Path(r) for r in roots]
        self._parsed: dict[Path, Optional[DocumentRecord]] = {}

    def _candidate_files(self) -> list[tuple[str, Path]]:
        out = []
        for root in self.roots:
            for source, subdir in _SOURCE_DIRS.items():
                d = root / subdir
                if not d.is_dir():
                    continue
                if source == "EURLEX":
                    out.extend((source, p) for p in sorted(d.glob("*.xml")))
                elif source in ("CURIA", "AB"):
                    out.extend((source, p) for p in sorted(d.glob("*.html")))
                else:
                    out.extend((source, p) for p in sorted(d.glob("*.txt")))
        return out

    def find(self, key: str, repo: Repository) -> Optional[DocumentRecord]:
        """Parse source files until one matches the target key."""
        for source, path in self._candidate_files():
            if path in self._parsed:
                doc = self._parsed[path]
            else:
                try:
                    doc = _read_source_file(source, path, repo)
                except Exception:
                    doc = None
                self._parsed[path] = doc
            if doc is not None and _doc_matches_key(doc, key):
                return doc
        return None


def _doc_matches_key(doc: DocumentRecord, key: str) -> bool:
    scheme, _, value = key.partition(":")
    if scheme == "celex":
        if doc.id.celex == value:
            return True
        cases = ([doc.case_number] if doc.case_number else []) + Repository._joined_cases(doc)
        for case in cases:
            try:
                if celex_for_case(parse_eu_case(case)).render() == value:
                    return True
            except MalformedIdentifier:
                continue
        return False
    if scheme == "ab":
        return bool(
            doc.collection is Collection.HU_AB
            and doc.id.native_id
            and fold_text(doc.id.native_id).startswith(fold_text(value))
        )
    if scheme == "hu":
        return bool(doc.id.native_id and fold_text(doc.id.native_id) == fold_text(value))
    if scheme == "alias":
        return fold_text(doc.metadata.get("alias", "")) == value
    return False


def backfill(
    repo: Repository,
    sources: Iterable[Path | str],
    pass_limit: int = BACKFILL_PASS_LIMIT,
) -> BackfillReport:
    """Fetch referenced-but-missing documents from the source directories.

    Drains to fixpoint: newly ingested documents may reference further
    missing ones, bounded by ``pass_limit`` passes.
    """
    report = BackfillReport()
    report.before_ratio = repo.resolved_ratio()
    catalog = _SourceCatalog([Path(s) for s in sources])
    queue = BackfillQueue()
    for pass_no in range(pass_limit):
        for key in repo.unresolved_keys():
            queue.offer(key)
        pending = queue.take_all()
        if not pending:
            break
        report.passes = pass_no + 1
        progress = False
        for key in pending:
            doc = catalog.find(key, repo)
            if doc is None:
                continue
            status = repo.add(doc)
            if status in ("new", "updated"):
                repo.extract_document(doc)
                report.recovered.append(doc.id.celex)
                progress = True
        repo.refresh_resolution()
        if not progress:
            break
    report.exhausted = bool(repo.unresolved_keys()) and report.passes == pass_limit
    report.after_ratio = repo.resolved_ratio()
    report.still_unresolved = repo.unresolved_keys()
    repo.save()
    return report


def prepare_store(corpus_dir: Path | str, store_dir: Path | str) -> Repository:
    """Copy corpus-level configuration (authorities, synonyms, suffix table)
    into the store directory so later commands are self-contained."""
    corpus = Path(corpus_dir)
    store = Path(store_dir)
    store.mkdir(parents=True, exist_ok=True)
    if authority_files_present(corpus / "authorities"):
        shutil.copytree(corpus / "authorities", store / "authorities", dirs_exist_ok=True)
    for name in ("synonyms.tsv", "suffixes.tsv"):
        if (corpus / name).exists():
            shutil.copyfile(corpus / name, store / name)
    return Repository(store)


# --- JSON record serialization -----------------------------------------------------


def ref_to_dict(ref: DocRef) -> dict:
    return {
        "span": list(ref.span),
        "kind": ref.kind.value,
        "raw": ref.raw,
        "target": _docid_to_dict(ref.target) if ref.target else None,
        "target_key": ref.target_key,
        "article": ref.article,
        "paragraphs": list(ref.paragraphs) if ref.paragraphs else None,
        "context": ref.context,
        "resolved": ref.resolved,
        "anomaly": ref.anomaly,
        "court": ref.court,
    }


def ref_from_dict(d: dict) -> DocRef:
    return DocRef(
        span=tuple(d["span"]),
        kind=RefKind(d["kind"]),
        raw=d["raw"],
        target=_docid_from_dict(d["target"]) if d.get("target") else None,
        target_key=d.get("target_key"),
        article=d.get("article"),
        paragraphs=tuple(d["paragraphs"]) if d.get("paragraphs") else None,
        context=d.get("context", ""),
        resolved=d.get("resolved", False),
        anomaly=d.get("anomaly"),
        court=d.get("court"),
    )


def _docid_to_dict(docid: DocId) -> dict:
    return {
        "celex": docid.celex,
        "ecli": docid.ecli,
        "native_id": docid.native_id,
        "source_guid": docid.source_guid,
    }


def _docid_from_dict(d: dict) -> DocId:
    return DocId(
        celex=d["celex"],
        ecli=d.get("ecli"),
        native_id=d.get("native_id"),
        source_guid=d.get("source_guid"),
    )


def doc_to_dict(doc: DocumentRecord) -> dict:
    return {
        "id": _docid_to_dict(doc.id),
        "collection": doc.collection.value,
        "language": doc.language,
        "title": doc.title,
        "body": doc.body,
        "publication_date": doc.publication_date.isoformat(),
        "case_number": doc.case_number,
        "court": doc.court,
        "metadata": dict(doc.metadata),
        "references": [ref_to_dict(r) for r in doc.references],
        "entities": [
            {
                "kind": e.kind.value,
                "span": list(e.span),
                "surface": e.surface,
                "normalized": e.normalized,
            }
            for e in doc.entities
        ],
        "acronyms": [
            {"span": list(a.span), "acronym": a.acronym, "full_form": a.full_form}
            for a in doc.acronyms
        ],
    }


def doc_from_dict(d: dict) -> DocumentRecord:
    return DocumentRecord(
        id=_docid_from_dict(d["id"]),
        collection=Collection(d["collection"]),
        language=d["language"],
        title=d["title"],
        body=d["body"],
        publication_date=dt.date.fromisoformat(d["publication_date"]),
        case_number=d.get("case_number"),
        court=d.get("court"),
        metadata=dict(d.get("metadata", {})),
        references=[ref_from_dict(r) for r in d.get("references", [])],
        entities=[
            NamedEntity(
                kind=EntityKind(e["kind"]),
                span=tuple(e["span"]),
                surface=e["surface"],
                normalized=e.get("normalized"),
            )
            for e in d.get("entities", [])
        ],
        acronyms=[
            AcronymOccurrence(
                span=tuple(a["span"]), acronym=a["acronym"], full_form=a["full_form"]
            )
            for a in d.get("acronyms", [])
        ],
    )


def parse_connections(doc: DocumentRecord) -> list[tuple[ConnectionType, str]]:
    """Typed connections recorded in document metadata: `TYPE key;TYPE key`."""
    raw = doc.metadata.get("connections", "")
    out: list[tuple[ConnectionType, str]] = []
    for item in filter(None, raw.split(";")):
        type_name, _, key = item.strip().partition(" ")
        out.append((ConnectionType(type_name), key))
    return out
