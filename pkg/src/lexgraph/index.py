"""Inverted index over document bodies with pluggable stemming, synonym
expansion, five search modes and hit highlighting.

Only Hungarian bodies are stem-indexed; other languages are folded only.
Scoring is raw matched-token frequency with a deterministic ascending-celex
tie break. Index building is single-writer; searches never mutate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Optional, Union

from .model import DocId, DocumentRecord
from .textnorm import SuffixTable, default_suffix_table, fold_text, stem

Stemmer = Callable[[str], str]

_WORD_RE = re.compile(r"\w+", re.UNICODE)


class EmptyQuery(ValueError):
    """Raised for a query with no terms."""


class MalformedExpression(ValueError):
    """Raised for an invalid expert-search expression."""


class SearchMode(Enum):
    EXACT_PHRASE = "EXACT_PHRASE"
    ALL_WORDS = "ALL_WORDS"
    ANY_WORD = "ANY_WORD"
    PROXIMITY = "PROXIMITY"
    EXPERT = "EXPERT"


# Expert expressions are nested tuples:
#   ("term", text) | ("and", [nodes]) | ("or", [nodes]) | ("not", node)
ExprNode = Union[tuple]


@dataclass(frozen=True)
class Query:
    mode: SearchMode
    terms: tuple[str, ...] = ()
    proximity_window: Optional[int] = None
    use_synonyms: bool = False
    expert_expression: Optional[ExprNode] = None

    def __post_init__(self) -> None:
        if self.mode is SearchMode.PROXIMITY and not self.proximity_window:
            raise ValueError("PROXIMITY requires a proximity_window")
        if self.mode is SearchMode.EXPERT and self.expert_expression is None:
            raise ValueError("EXPERT requires an expert_expression")


@dataclass
class Posting:
    doc: DocId
    positions: list[int] = field(default_factory=list)
    offsets: list[tuple[int, int]] = field(default_factory=list)


@dataclass(frozen=True)
class Hit:
    doc: DocId
    score: int
    highlights: tuple[tuple[int, int], ...]


def tokenize(text: str) -> list[tuple[str, int, int]]:
    """Unicode word tokens with character offsets."""
    return [(m.group(0), m.start(), m.end()) for m in _WORD_RE.finditer(text)]


def default_stemmer(table: Optional[SuffixTable] = None) -> Stemmer:
    t = table or default_suffix_table()
    return lambda word: stem(word, t)


class SynonymSet:
    """Synonym groups; a term expands to the union of all groups holding it.

    Group membership is compared on folded single-word terms, matching the
    thesaurus fixture format (one group per line, terms tab separated).
    """

    def __init__(self, groups: list[list[str]]):
        self.groups = [[fold_text(t) for t in g] for g in groups]
        self._by_term: dict[str, list[str]] = {}
        for group in self.groups:
            for term in group:
                merged = self._by_term.setdefault(term, [])
                for other in group:
                    if other not in merged:
                        merged.append(other)

    def expand(self, term: str) -> list[str]:
        folded = fold_text(term)
        expansion = [folded]
        for other in self._by_term.get(folded, []):
            if other not in expansion:
                expansion.append(other)
        return expansion

    @classmethod
    def load(cls, path: Path | str) -> "SynonymSet":
        groups = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            groups.append([t for t in line.split("\t") if t.strip()])
        return cls(groups)

    @classmethod
    def empty(cls) -> "SynonymSet":
        return cls([])


class Index:
    """Term to per-document postings, with original character offsets kept
    so hits can be highlighted in the source text."""

    def __init__(self, stemmer: Optional[Stemmer] = None):
        self.stemmer = stemmer or default_stemmer()
        self._postings: dict[str, dict[str, Posting]] = {}
        self._doc_language: dict[str, str] = {}
        self._doc_ids: dict[str, DocId] = {}

    # -- building -----------------------------------------------------------

    def _process(self, token: str, language: str) -> str:
        folded = fold_text(token)
        return self.stemmer(folded) if language == "hu" else folded

    def index_document(self, doc: DocumentRecord) -> None:
        celex = doc.id.celex
        if celex in self._doc_ids:
            self._remove(celex)
        self._doc_ids[celex] = doc.id
        self._doc_language[celex] = doc.language
        for position, (token, start, end) in enumerate(tokenize(doc.body)):
            term = self._process(token, doc.language)
            posting = self._postings.setdefault(term, {}).setdefault(
                celex, Posting(doc=doc.id)
            )
            posting.positions.append(position)
            posting.offsets.append((start, end))

    def _remove(self, celex: str) -> None:
        for term in list(self._postings):
            self._postings[term].pop(celex, None)
            if not self._postings[term]:
                del self._postings[term]
        self._doc_ids.pop(celex, None)
        self._doc_language.pop(celex, None)

    def index_snapshot(self, docs) -> None:
        for celex in sorted(docs):
            self.index_document(docs[celex])

    # -- lookups ------------------------------------------------------------

    @property
    def documents(self) -> list[str]:
        return sorted(self._doc_ids)

    def doc_id(self, celex: str) -> DocId:
        return self._doc_ids[celex]

    def term_postings(self, query_term: str) -> dict[str, Posting]:
        """Documents whose tokens match ``query_term`` under each document's
        own pipeline (stemmed for Hungarian, folded otherwise)."""
        folded = fold_text(query_term)
        stemmed = self.stemmer(folded)
        merged: dict[str, Posting] = {}
        for form, want_hu in ((stemmed, True), (folded, False)):
            for celex, posting in self._postings.get(form, {}).items():
                is_hu = self._doc_language.get(celex) == "hu"
                if is_hu != want_hu:
                    continue
                merged[celex] = posting
        return merged


# --- expert expression parsing ------------------------------------------------------

_EXPR_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


def parse_expert(expression: str) -> ExprNode:
    """Parse `a AND (b OR NOT c)` style expressions into a tree.

    AND binds tighter than OR; NOT is prefix; keywords are case-insensitive.
    """
    tokens = _EXPR_TOKEN_RE.findall(expression)
    if not tokens:
        raise MalformedExpression("empty expression")
    pos = 0

    def peek() -> Optional[str]:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> str:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_or() -> ExprNode:
        parts = [parse_and()]
        while peek() is not None and peek().upper() == "OR":
            take()
            parts.append(parse_and())
        return parts[0] if len(parts) == 1 else ("or", parts)

    def parse_and() -> ExprNode:
        parts = [parse_unary()]
        while peek() is not None and peek().upper() == "AND":
            take()
            parts.append(parse_unary())
        return parts[0] if len(parts) == 1 else ("and", parts)

    def parse_unary() -> ExprNode:
        tok = peek()
        if tok is None:
            raise MalformedExpression("unexpected end of expression")
        if tok.upper() == "NOT":
            take()
            return ("not", parse_unary())
        if tok == "(":
            take()
            node = parse_or()
            if peek() != ")":
                raise MalformedExpression("missing closing parenthesis")
            take()
            return node
        if tok == ")" or tok.upper() in ("AND", "OR"):
            raise MalformedExpression(f"unexpected token {tok!r}")
        return ("term", take())

    node = parse_or()
    if pos != len(tokens):
        raise MalformedExpression(f"trailing tokens from {tokens[pos]!r}")
    return node


def expression_terms(node: ExprNode) -> list[str]:
    kind = node[0]
    if kind == "term":
        return [node[1]]
    if kind == "not":
        return expression_terms(node[1])
    out: list[str] = []
    for child in node[1]:
        for term in expression_terms(child):
            if term not in out:
                out.append(term)
    return out


# --- search ---------------------------------------------------------------------------


def _slot_matches(
    idx: Index, term: str, thesaurus: SynonymSet, use_synonyms: bool
) -> dict[str, tuple[list[int], list[tuple[int, int]]]]:
    """Merged positions/offsets per document for one query slot."""
    expansions = thesaurus.expand(term) if use_synonyms else [fold_text(term)]
    per_doc: dict[str, dict[int, tuple[int, int]]] = {}
    for expansion in expansions:
        for celex, posting in idx.term_postings(expansion).items():
            bucket = per_doc.setdefault(celex, {})
            for position, offset in zip(posting.positions, posting.offsets):
                bucket[position] = offset
    out = {}
    for celex, bucket in per_doc.items():
        positions = sorted(bucket)
        out[celex] = (positions, [bucket[p] for p in positions])
    return out


def _phrase_occurrences(slots: list[dict], celex: str) -> list[list[int]]:
    position_sets = []
    for slot in slots:
        if celex not in slot:
            return []
        position_sets.append(set(slot[celex][0]))
    first = sorted(position_sets[0])
    occurrences = []
    for start in first:
        if all(start + i in position_sets[i] for i in range(1, len(position_sets))):
            occurrences.append([start + i for i in range(len(position_sets))])
    return occurrences


def _proximity_hit(slots: list[dict], celex: str, window: int) -> bool:
    """True iff one position per slot fits inside a ``window``-token span."""
    events: list[tuple[int, int]] = []
    for slot_no, slot in enumerate(slots):
        if celex not in slot:
            return False
        events.extend((p, slot_no) for p in slot[celex][0])
    events.sort()
    need = len(slots)
    counts: dict[int, int] = {}
    covered = 0
    left = 0
    for right in range(len(events)):
        slot_no = events[right][1]
        counts[slot_no] = counts.get(slot_no, 0) + 1
        if counts[slot_no] == 1:
            covered += 1
        while covered == need:
            if events[right][0] - events[left][0] <= window:
                return True
            lslot = events[left][1]
            counts[lslot] -= 1
            if counts[lslot] == 0:
                covered -= 1
            left += 1
    return False


def _eval_expression(
    node: ExprNode, slot_of: dict[str, dict], universe: set[str]
) -> set[str]:
    kind = node[0]
    if kind == "term":
        return set(slot_of[node[1]])
    if kind == "not":
        return universe - _eval_expression(node[1], slot_of, universe)
    if kind == "and":
        result = universe
        for child in node[1]:
            result = result & _eval_expression(child, slot_of, universe)
        return result
    if kind == "or":
        result: set[str] = set()
        for child in node[1]:
            result = result | _eval_expression(child, slot_of, universe)
        return result
    raise MalformedExpression(f"unknown node {node!r}")


def search(query: Query, idx: Index, thesaurus: Optional[SynonymSet] = None) -> list[Hit]:
    """Evaluate a query; hits carry the document, a matched-token-frequency
    score and the character offsets to highlight, ordered by descending
    score then ascending celex."""
    thesaurus = thesaurus or SynonymSet.empty()
    if query.mode is SearchMode.EXPERT:
        terms = expression_terms(query.expert_expression)
    else:
        terms = [t for t in query.terms if t.strip()]
    if not terms:
        raise EmptyQuery("query has no terms")

    slots = [_slot_matches(idx, t, thesaurus, query.use_synonyms) for t in terms]
    universe = set(idx.documents)

    if query.mode is SearchMode.ANY_WORD:
        docs = set().union(*[set(s) for s in slots])
    elif query.mode in (SearchMode.ALL_WORDS, SearchMode.PROXIMITY, SearchMode.EXACT_PHRASE):
        docs = set(slots[0])
        for slot in slots[1:]:
            docs &= set(slot)
        if query.mode is SearchMode.PROXIMITY:
            docs = {d for d in docs if _proximity_hit(slots, d, query.proximity_window)}
        elif query.mode is SearchMode.EXACT_PHRASE:
            docs = {d for d in docs if _phrase_occurrences(slots, d)}
    else:
        slot_of = dict(zip(terms, slots))
        docs = _eval_expression(query.expert_expression, slot_of, universe)

    hits = []
    for celex in sorted(docs):
        if query.mode is SearchMode.EXACT_PHRASE:
            occurrences = _phrase_occurrences(slots, celex)
            matched: dict[int, tuple[int, int]] = {}
            for occurrence in occurrences:
                for slot_no, position in enumerate(occurrence):
                    positions, offsets = slots[slot_no][celex]
                    matched[position] = offsets[positions.index(position)]
            score = sum(len(o) for o in occurrences)
            highlights = tuple(matched[p] for p in sorted(matched))
        else:
            score = 0
            spans: set[tuple[int, int]] = set()
            for slot in slots:
                if celex in slot:
                    positions, offsets = slot[celex]
                    score += len(positions)
                    spans.update(offsets)
            highlights = tuple(sorted(spans))
        hits.append(Hit(doc=idx.doc_id(celex), score=score, highlights=highlights))
    hits.sort(key=lambda h: (-h.score, h.doc.celex))
    return hits


def highlight(doc: DocumentRecord, hit: Hit) -> list[tuple[int, int]]:
    """Exact character spans of the matched tokens in the original body."""
    if hit.doc.celex != doc.id.celex:
        raise ValueError("hit does not belong to this document")
    return list(hit.highlights)


def default_synonyms() -> SynonymSet:
    return SynonymSet.load(Path(__file__).parent / "data" / "synonyms.tsv")
