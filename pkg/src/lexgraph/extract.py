"""Recognition of in-text document references, aliases, acronyms and named
entities.

The pipeline runs in a fixed order: sentence split, document-reference
grammars (longest match first), reference masking, alias/acronym definition
capture, alias occurrence linking, named entities, context snippets.
Masking happens before acronym work because acronyms may themselves appear
inside document references.

Extraction is pure per document; resolution against the store goes through
a read-only resolver interface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Protocol

from .authorities import AuthoritySet
from .identifiers import (
    CelexParts,
    EuCaseNumber,
    MalformedIdentifier,
    celex_for_case,
    parse_hu_decision,
)
from .model import DocId, DocumentRecord
from .textnorm import concat_variants, fold_text, split_sentences, word_match

# Opaque filler for masked reference spans: private-use codepoint, never a
# word character, position preserving.
MASK_CHAR = ""

SNIPPET_BUDGET = 160

#: Anomaly notes recorded on a DocRef instead of raising.
AMBIGUOUS_REFERENCE = "ambiguous_reference"
UNRESOLVED_TREATY = "unresolved_treaty"


class RefKind(Enum):
    EU_CASE = "EU_CASE"
    EU_REGULATION = "EU_REGULATION"
    EU_DIRECTIVE = "EU_DIRECTIVE"
    EU_TREATY_ARTICLE = "EU_TREATY_ARTICLE"
    AB_DECISION = "AB_DECISION"
    HU_DECISION = "HU_DECISION"
    ALIAS = "ALIAS"
    ACRONYM_DOC = "ACRONYM_DOC"


class BindingKind(Enum):
    DOC_ALIAS = "DOC_ALIAS"
    ACRONYM = "ACRONYM"


class EntityKind(Enum):
    JUDGE = "JUDGE"
    APPLICANT = "APPLICANT"
    DEFENDANT = "DEFENDANT"
    REPRESENTATIVE = "REPRESENTATIVE"
    SUBJECT = "SUBJECT"


@dataclass
class DocRef:
    """One recognized in-text reference.

    ``target_key`` is the canonical resolution key (``celex:...``,
    ``ab:<number>``, ``hu:<court>|<number>``, ``alias:<compound>``) used by
    the store and the backfill; ``target`` is filled in once the key
    resolves. ``anomaly`` records ambiguous or treaty-less matches instead
    of dropping them.
    """

    span: tuple[int, int]
    kind: RefKind
    raw: str
    target: Optional[DocId] = None
    target_key: Optional[str] = None
    article: Optional[int] = None
    paragraphs: Optional[tuple[int, int]] = None
    context: str = ""
    resolved: bool = False
    anomaly: Optional[str] = None
    court: Optional[str] = None


@dataclass
class AliasBinding:
    """A within-document definition of a textual short form.

    DOC_ALIAS binds parenthesized text after a reference token to that
    reference's target; ACRONYM binds an all-caps token to its spelled-out
    institution name. First definition wins.
    """

    alias_text: str
    kind: BindingKind
    defined_at: tuple[int, int]
    target: Optional[DocId] = None
    target_key: Optional[str] = None
    full_form: Optional[str] = None


@dataclass
class NamedEntity:
    kind: EntityKind
    span: tuple[int, int]
    surface: str
    normalized: Optional[str] = None


@dataclass
class AcronymOccurrence:
    """A standalone acronym use, presented with its expansion as a title."""

    span: tuple[int, int]
    acronym: str
    full_form: str


@dataclass
class ExtractionResult:
    references: list[DocRef] = field(default_factory=list)
    bindings: list[AliasBinding] = field(default_factory=list)
    acronyms: list[AcronymOccurrence] = field(default_factory=list)
    entities: list[NamedEntity] = field(default_factory=list)


class Resolver(Protocol):
    """Read-only lookup of a target key in the repository."""

    def resolve_key(self, key: str) -> Optional[DocId]: ...


# --- grammars -----------------------------------------------------------------

_EU_CASE_RE = re.compile(r"\b([CTF])[-‐‑–](\d{1,4})/(\d{2})(?!\d)")
_HU_DECISION_RE = re.compile(r"\b(\d{1,2})\.([A-Z]{1,2})\.(\d+(?:\.\d+)*)/(\d{4})/(\d{1,3})\.?")
_FRACTION_RE = re.compile(r"\b(\d{1,4})/(\d{1,4})(?![/\d])")
_WORD_RE = re.compile(r"\w+", re.UNICODE)

_REGULATION_CUES = ("rendelet", "regulation")
_DIRECTIVE_CUES = ("iranyelv", "directive")
#: Document-noun words accepted on the right side of an `ACRO-<word>` compound.
_DOC_WORDS = (
    "directive", "directives", "regulation", "regulations", "treaty", "decision",
    "rendelet", "iranyelv", "szerzodes", "hatarozat", "torveny",
)
_CONNECTIVES = {"of", "the", "and", "for", "on", "in", "to", "a", "az", "es", "szolo"}


def _year_like(n: int, digits: int) -> bool:
    return digits == 4 and 1900 <= n <= 2099


def _tokens(text: str) -> list[tuple[str, int, int]]:
    return [(m.group(0), m.start(), m.end()) for m in _WORD_RE.finditer(text)]


def _token_index_after(tokens: list[tuple[str, int, int]], pos: int) -> int:
    for i, (_, s, _e) in enumerate(tokens):
        if s >= pos:
            return i
    return len(tokens)


def _token_index_before(tokens: list[tuple[str, int, int]], pos: int) -> int:
    last = -1
    for i, (_, _s, e) in enumerate(tokens):
        if e <= pos:
            last = i
        else:
            break
    return last


def _has_cue_within(
    tokens: list[tuple[str, int, int]], start: int, end: int,
    cues: tuple[str, ...], window: int, direction: str = "both",
) -> bool:
    """True iff a cue word occurs within ``window`` tokens of the match."""
    lo = _token_index_before(tokens, start)
    hi = _token_index_after(tokens, end)
    candidates: list[str] = []
    if direction in ("both", "before"):
        candidates += [t for t, _s, _e in tokens[max(0, lo - window + 1) : lo + 1]]
    if direction in ("both", "after"):
        candidates += [t for t, _s, _e in tokens[hi : hi + window]]
    for tok in candidates:
        folded = fold_text(tok)
        if any(folded.startswith(c) for c in cues):
            return True
    return False


def _has_ab_token_after(tokens: list[tuple[str, int, int]], end: int, window: int = 3) -> bool:
    hi = _token_index_after(tokens, end)
    return any(t == "AB" for t, _s, _e in tokens[hi : hi + window])


@dataclass
class _Candidate:
    span: tuple[int, int]
    ref: DocRef


def _court_occurrences(
    sentence: str, offset: int, authorities: AuthoritySet
) -> list[tuple[int, int, str]]:
    """Find authority court names in a sentence, tolerating case/accents and
    trailing inflection on the last word. Returns (start, end, canonical)."""
    folded = fold_text(sentence)
    found: list[tuple[int, int, str]] = []
    for name in authorities.courts:
        words = fold_text(name).split()
        pattern = r"\b" + r"\W+".join(re.escape(w) for w in words[:-1])
        if len(words) > 1:
            pattern += r"\W+"
        pattern += re.escape(words[-1]) + r"\w*"
        for m in re.finditer(pattern, folded):
            found.append((offset + m.start(), offset + m.end(), name))
    found.sort()
    return found


def _classify_fraction(
    m: re.Match, tokens: list[tuple[str, int, int]], offset: int
) -> Optional[DocRef]:
    """Type an `N/YYYY` or `YYYY/N` match from its 3-token keyword window.

    Regulation/AB readings need a 4-digit year on the right, directive on
    the left. A match carrying both the regulation and the AB cue, or
    neither reading's cue, is kept but flagged ambiguous rather than
    dropped.
    """
    a_txt, b_txt = m.group(1), m.group(2)
    a, b = int(a_txt), int(b_txt)
    span = (offset + m.start(), offset + m.end())
    raw = m.group(0)
    n_yyyy = _year_like(b, len(b_txt))
    yyyy_n = _year_like(a, len(a_txt))
    if not n_yyyy and not yyyy_n:
        return None

    is_ab = n_yyyy and _has_ab_token_after(tokens, m.end())
    is_reg = n_yyyy and _has_cue_within(tokens, m.start(), m.end(), _REGULATION_CUES, 3)
    is_dir = yyyy_n and _has_cue_within(tokens, m.start(), m.end(), _DIRECTIVE_CUES, 3)

    if is_ab and is_reg:
        return DocRef(span=span, kind=RefKind.AB_DECISION, raw=raw, anomaly=AMBIGUOUS_REFERENCE)
    if is_ab:
        return DocRef(
            span=span, kind=RefKind.AB_DECISION, raw=raw, target_key=f"ab:{a}/{b}"
        )
    if is_reg:
        celex = CelexParts(3, b, "R", a).render()
        return DocRef(
            span=span, kind=RefKind.EU_REGULATION, raw=raw,
            target=DocId(celex=celex), target_key=f"celex:{celex}",
        )
    if is_dir:
        celex = CelexParts(3, a, "L", b).render()
        return DocRef(
            span=span, kind=RefKind.EU_DIRECTIVE, raw=raw,
            target=DocId(celex=celex), target_key=f"celex:{celex}",
        )
    kind = RefKind.AB_DECISION if n_yyyy else RefKind.EU_DIRECTIVE
    return DocRef(span=span, kind=kind, raw=raw, anomaly=AMBIGUOUS_REFERENCE)


# --- treaty article lists -------------------------------------------------------

_ARTICLE_HEAD_RE = re.compile(r"\b[Aa]rticles?\s+(?=\d)")
_ARTICLE_ITEM_RE = re.compile(r"(\d+)")
_PARAGRAPHS_RE = re.compile(r"\s*\(\s*(\d+)\s*\)(?:\s*to\s*\(\s*(\d+)\s*\))?")
_ARTICLE_CONN_RE = re.compile(r"\s*(,\s*(?:and\s+)?|and\s+|to\s+)(?:[Aa]rticles?\s+)?(?=\d)")
_OF_THE_RE = re.compile(r"\s*(?:of\s+(?:the\s+)?)", re.IGNORECASE)
_HU_ARTICLE_RE = re.compile(r"\s+(\d+)\.\s*(?:és\s+(\d+)\.\s*)?cikk\w*")


@dataclass
class _ArticleItem:
    number: int
    paragraphs: Optional[tuple[int, int]]
    span: tuple[int, int]  # sentence-relative
    from_range: bool = False  # interpolated member of an `X to Y` range


def _match_treaty_name(sentence: str, pos: int, authorities: AuthoritySet) -> Optional[tuple[str, int]]:
    """Try to match a treaty name variant at ``pos``; returns (base celex, end)."""
    folded = fold_text(sentence)
    best: Optional[tuple[str, int]] = None
    for variant, base in authorities.treaties.items():
        fv = fold_text(variant)
        if folded.startswith(fv, pos):
            end = pos + len(fv)
            # the variant must end at a word boundary
            if end < len(folded) and (folded[end].isalnum() or folded[end] == "_"):
                continue
            if best is None or end > best[1]:
                best = (base, end)
    return best


def _scan_article_list(sentence: str) -> tuple[list[_ArticleItem], int, int]:
    """Parse the first `Article ...` list in a sentence.

    Returns (items, list_start, scan_end) with sentence-relative offsets;
    ranges `X to Y` are expanded inclusively, interpolated members getting a
    zero-width span at the range's closing numeral.
    """
    head = _ARTICLE_HEAD_RE.search(sentence)
    if head is None:
        return [], -1, -1
    items: list[_ArticleItem] = []
    pos = head.end()
    connector = ""
    while True:
        m = _ARTICLE_ITEM_RE.match(sentence, pos)
        if m is None:
            break
        number = int(m.group(1))
        item_start, item_end = m.start(1), m.end(1)
        pos = m.end()
        paragraphs = None
        pm = _PARAGRAPHS_RE.match(sentence, pos)
        if pm is not None:
            p = int(pm.group(1))
            q = int(pm.group(2)) if pm.group(2) else p
            paragraphs = (p, q)
            item_end = pm.end()
            pos = pm.end()
        if connector == "to" and items and items[-1].number < number:
            for interior in range(items[-1].number + 1, number):
                items.append(
                    _ArticleItem(interior, None, (item_start, item_start), from_range=True)
                )
        items.append(_ArticleItem(number, paragraphs, (item_start, item_end)))
        cm = _ARTICLE_CONN_RE.match(sentence, pos)
        if cm is None:
            break
        connector = "to" if cm.group(1).strip().startswith("to") else cm.group(1)
        pos = cm.end()
    # keep range-interpolated items anchored after the closing numeral
    items.sort(key=lambda it: (it.number))
    return items, head.start(), pos


def expand_article_list(sentence: str, treaty_authorities: AuthoritySet) -> list[DocRef]:
    """Expand an inline article list into one DocRef per distinct article.

    A treaty name trailing the list (`... of the Treaty on European Union`)
    resolves every article in it; without one the references are emitted
    unresolved and flagged. Spans are sentence-relative.
    """
    refs = _treaty_article_refs_en(sentence, treaty_authorities)
    refs += _treaty_article_refs_hu(sentence, treaty_authorities)
    return refs


def _treaty_article_refs_en(sentence: str, authorities: AuthoritySet) -> list[DocRef]:
    items, list_start, scan_end = _scan_article_list(sentence)
    if not items:
        return []
    base: Optional[str] = None
    of_m = _OF_THE_RE.match(sentence, scan_end)
    if of_m is not None:
        hit = _match_treaty_name(sentence, of_m.end(), authorities)
        if hit is not None:
            base = hit[0]
    refs = []
    seen: set[int] = set()
    for item in items:
        if item.number in seen:
            continue
        seen.add(item.number)
        ref = DocRef(
            span=item.span,
            kind=RefKind.EU_TREATY_ARTICLE,
            raw=sentence[item.span[0] : item.span[1]],
            article=item.number,
            paragraphs=item.paragraphs,
        )
        if base is not None:
            celex = f"{base}{item.number:04d}"
            ref.target = DocId(celex=celex)
            ref.target_key = f"celex:{celex}"
        else:
            ref.anomaly = UNRESOLVED_TREATY
        refs.append(ref)
    return refs


def _treaty_article_refs_hu(sentence: str, authorities: AuthoritySet) -> list[DocRef]:
    """`<Treaty> N. cikk` and `<Treaty> N. és M. cikk` forms, treaty first."""
    folded = fold_text(sentence)
    refs: list[DocRef] = []
    for variant, base in authorities.treaties.items():
        fv = fold_text(variant)
        for m in re.finditer(rf"(?<!\w){re.escape(fv)}(?!\w)", folded):
            am = _HU_ARTICLE_RE.match(sentence, m.end())
            if am is None:
                continue
            numbers = [(int(am.group(1)), am.span(1))]
            if am.group(2):
                numbers.append((int(am.group(2)), am.span(2)))
            for number, span in numbers:
                celex = f"{base}{number:04d}"
                refs.append(
                    DocRef(
                        span=span,
                        kind=RefKind.EU_TREATY_ARTICLE,
                        raw=sentence[span[0] : span[1]],
                        article=number,
                        target=DocId(celex=celex),
                        target_key=f"celex:{celex}",
                    )
                )
    return refs


# --- reference extraction --------------------------------------------------------


def _sentence_candidates(
    sentence: str, offset: int, authorities: AuthoritySet
) -> list[DocRef]:
    tokens = _tokens(sentence)
    candidates: list[DocRef] = []

    for m in _HU_DECISION_RE.finditer(sentence):
        try:
            number = parse_hu_decision(m.group(0))
        except MalformedIdentifier:
            continue
        courts = [
            c for c in _court_occurrences(sentence, 0, authorities) if c[1] <= m.start()
        ]
        ref = DocRef(
            span=(offset + m.start(), offset + m.end()),
            kind=RefKind.HU_DECISION,
            raw=m.group(0),
        )
        if courts:
            nearest = max(courts, key=lambda c: c[1])
            ref.court = nearest[2]
            ref.target_key = f"hu:{nearest[2]}|{number.render()}"
        candidates.append(ref)

    for m in _EU_CASE_RE.finditer(sentence):
        try:
            case = EuCaseNumber(m.group(1), int(m.group(2)), int(m.group(3)))
        except MalformedIdentifier:
            continue
        celex = celex_for_case(case).render()
        candidates.append(
            DocRef(
                span=(offset + m.start(), offset + m.end()),
                kind=RefKind.EU_CASE,
                raw=m.group(0),
                target=DocId(celex=celex),
                target_key=f"celex:{celex}",
            )
        )

    for m in _FRACTION_RE.finditer(sentence):
        ref = _classify_fraction(m, tokens, offset)
        if ref is not None:
            candidates.append(ref)

    article_refs = expand_article_list(sentence, authorities)
    attach = _single_article_attachment(sentence, article_refs, candidates, offset)
    if attach is None:
        for ref in article_refs:
            ref.span = (offset + ref.span[0], offset + ref.span[1])
            candidates.append(ref)

    return candidates


def _single_article_attachment(
    sentence: str,
    article_refs: list[DocRef],
    candidates: list[DocRef],
    offset: int,
) -> Optional[DocRef]:
    """`Article 9 of Directive 2016/2284` attaches the article to the
    directive reference instead of emitting a treaty-article reference.

    Applies only to a single, treaty-less article immediately preceding a
    directive/regulation match via `of`.
    """
    unresolved = [r for r in article_refs if r.anomaly == UNRESOLVED_TREATY]
    if len(article_refs) != 1 or len(unresolved) != 1:
        return None
    art = unresolved[0]
    tail = sentence[art.span[1] :]
    of_m = _OF_THE_RE.match(tail)
    if of_m is None:
        return None
    for cand in candidates:
        if cand.kind in (RefKind.EU_DIRECTIVE, RefKind.EU_REGULATION):
            gap = sentence[art.span[1] : cand.span[0] - offset]
            if 0 <= cand.span[0] - offset - art.span[1] <= 40 and _OF_THE_RE.match(gap):
                cand.article = art.article
                cand.paragraphs = art.paragraphs
                return cand
    return None


def _select_non_overlapping(candidates: list[DocRef]) -> list[DocRef]:
    """Longest-match-first, left-to-right: earlier starts win, then longer
    spans; zero-width spans never conflict."""
    ordered = sorted(candidates, key=lambda r: (r.span[0], -(r.span[1] - r.span[0])))
    chosen: list[DocRef] = []
    occupied: list[tuple[int, int]] = []
    for ref in ordered:
        s, e = ref.span
        if s == e:
            chosen.append(ref)
            continue
        if any(s < oe and os_ < e for os_, oe in occupied):
            continue
        occupied.append((s, e))
        chosen.append(ref)
    chosen.sort(key=lambda r: (r.span[0], r.span[1], r.article or 0))
    return chosen


def context_snippet(
    body: str, sentence_span: tuple[int, int], match_span: tuple[int, int],
    budget: int = SNIPPET_BUDGET,
) -> str:
    """Up to ``budget`` characters of the sentence, centered on the match,
    truncated at the sentence boundary, not splitting words at either end
    unless a single word exceeds the budget."""
    ss, se = sentence_span
    while ss < se and body[ss].isspace():
        ss += 1
    while se > ss and body[se - 1].isspace():
        se -= 1
    ms = min(max(match_span[0], ss), se)
    me = min(max(match_span[1], ss), se)
    if me - ms >= budget:
        return body[ms:me]
    if se - ss <= budget:
        return body[ss:se]
    avail = budget - (me - ms)
    start = ms - avail // 2
    end = me + (avail - avail // 2)
    if start < ss:
        end += ss - start
        start = ss
    if end > se:
        start -= end - se
        end = se
    start = max(start, ss)
    end = min(end, se)
    if start > ss and not body[start - 1].isspace() and not body[start].isspace():
        m = re.search(r"\s", body[start:ms])
        if m is not None:
            start += m.end()
    if end < se and not body[end].isspace() and not body[end - 1].isspace():
        m = re.search(r"\s\S*$", body[me:end])
        if m is not None:
            end = me + m.start()
    return body[start:end]


def _attach_contexts(body: str, refs: list[DocRef], sentences: list[tuple[int, int]]) -> None:
    for ref in refs:
        sentence = next(
            (sp for sp in sentences if sp[0] <= ref.span[0] and ref.span[1] <= sp[1]),
            (0, len(body)),
        )
        ref.context = context_snippet(body, sentence, ref.span)


def resolve_refs(refs: list[DocRef], resolver: Optional[Resolver]) -> None:
    """Fill in target/resolved for every reference with a resolvable key."""
    for ref in refs:
        if ref.target_key is None:
            ref.resolved = False
            continue
        found = resolver.resolve_key(ref.target_key) if resolver is not None else None
        if found is not None:
            ref.target = found
            ref.resolved = True
        else:
            ref.resolved = False


def extract_references(
    doc: DocumentRecord,
    authorities: AuthoritySet,
    resolver: Optional[Resolver] = None,
) -> list[DocRef]:
    """Run the document-reference grammars over a document body.

    Returns non-overlapping references in span order, with context snippets
    attached and targets resolved against ``resolver`` when given.
    """
    body = doc.body
    sentences = split_sentences(body)
    candidates: list[DocRef] = []
    for ss, se in sentences:
        candidates.extend(_sentence_candidates(body[ss:se], ss, authorities))
    refs = _select_non_overlapping(candidates)
    _attach_contexts(body, refs, sentences)
    resolve_refs(refs, resolver)
    return refs


# --- masking, aliases and acronyms ------------------------------------------------

_PAREN_RE = re.compile(r"\(([^()\n]{1,80})\)")
_ACRO_RE = re.compile(r"^[A-ZÁÉÍÓÖŐÚÜŰ]{2,12}$")


def mask_and_bind_aliases(
    doc: DocumentRecord, refs: list[DocRef]
) -> tuple[str, list[AliasBinding]]:
    """Replace reference spans with opaque filler and capture definitions.

    The filler preserves positions, so all downstream spans are valid in
    the original body. `<ref> (Alias)` binds a document alias; a preceding
    capitalized phrase plus `(ACRO)` binds an acronym to its full form.
    """
    body = doc.body
    chars = list(body)
    for ref in refs:
        s, e = ref.span
        for i in range(s, e):
            chars[i] = MASK_CHAR
    masked = "".join(chars)

    bindings: list[AliasBinding] = []
    bound: set[str] = set()

    def _bind(b: AliasBinding) -> None:
        key = fold_text(b.alias_text)
        if key and key not in bound:
            bound.add(key)
            bindings.append(b)

    for m in _PAREN_RE.finditer(masked):
        inner = m.group(1).strip()
        if not inner:
            continue
        before = m.start() - 1
        while before >= 0 and masked[before].isspace():
            before -= 1
        if before >= 0 and masked[before] == MASK_CHAR:
            ref = next((r for r in refs if r.span[1] == before + 1), None)
            if ref is not None and any(c.isalpha() for c in inner):
                _bind(
                    AliasBinding(
                        alias_text=inner,
                        kind=BindingKind.DOC_ALIAS,
                        defined_at=(m.start(1), m.end(1)),
                        target=ref.target,
                        target_key=ref.target_key,
                    )
                )
            continue
        if _ACRO_RE.match(inner):
            phrase = _full_form_before(masked, m.start(), inner)
            if phrase is not None:
                _bind(
                    AliasBinding(
                        alias_text=inner,
                        kind=BindingKind.ACRONYM,
                        defined_at=(m.start(1), m.end(1)),
                        full_form=body[phrase[0] : phrase[1]],
                    )
                )
    return masked, bindings


def _full_form_before(masked: str, paren_start: int, acronym: str) -> Optional[tuple[int, int]]:
    """The spelled-out phrase before `(ACRO)`: trailing run of capitalized
    words (connectives allowed between), sharing the acronym's initial."""
    head = masked[:paren_start]
    words = list(_WORD_RE.finditer(head))
    if not words:
        return None
    # nothing but whitespace may sit between the phrase and the paren
    if head[words[-1].end() :].strip():
        return None
    phrase: list[re.Match] = []
    for w in reversed(words[-8:]):
        token = w.group(0)
        if fold_text(token) in _CONNECTIVES and phrase:
            phrase.insert(0, w)
        elif token[0].isupper():
            phrase.insert(0, w)
        else:
            break
    while phrase and fold_text(phrase[0].group(0)) in _CONNECTIVES:
        phrase.pop(0)
    capitalized = [w for w in phrase if w.group(0)[0].isupper()]
    if len(capitalized) < 2:
        return None
    if fold_text(capitalized[0].group(0)[0]) != fold_text(acronym[0]):
        return None
    return phrase[0].start(), phrase[-1].end()


def link_alias_occurrences(
    masked_body: str, bindings: list[AliasBinding]
) -> list[DocRef]:
    """References created by later alias/acronym-compound occurrences.

    Document aliases match exactly (after folding) at word boundaries;
    `ACRO-<document word>` compounds reference the acronym institution's
    document, unresolved unless such a document is registered.
    """
    refs, _ = _alias_layer(masked_body, bindings)
    return refs


def find_acronym_occurrences(
    masked_body: str, bindings: list[AliasBinding]
) -> list[AcronymOccurrence]:
    """Standalone acronym uses after their definition (for presentation)."""
    _, occurrences = _alias_layer(masked_body, bindings)
    return occurrences


def _alias_layer(
    masked_body: str, bindings: list[AliasBinding]
) -> tuple[list[DocRef], list[AcronymOccurrence]]:
    folded = fold_text(masked_body)
    candidates: list[tuple[tuple[int, int], str, AliasBinding, Optional[str]]] = []

    for binding in bindings:
        start_at = binding.defined_at[1]
        if binding.kind is BindingKind.DOC_ALIAS:
            pattern = rf"(?<!\w){re.escape(fold_text(binding.alias_text))}(?!\w)"
            for m in re.finditer(pattern, folded):
                if m.start() < start_at:
                    continue
                candidates.append(((m.start(), m.end()), "alias", binding, None))
        else:
            acro = re.escape(fold_text(binding.alias_text))
            docword = "|".join(_DOC_WORDS)
            for m in re.finditer(
                rf"(?<!\w)({acro})[-‐‑]({docword})\w*", folded
            ):
                if m.start() < start_at:
                    continue
                candidates.append(((m.start(), m.end()), "compound", binding, m.group(2)))
            for m in re.finditer(rf"(?<!\w){acro}(?![\w\-‐‑])", folded):
                if m.start() < start_at:
                    continue
                candidates.append(((m.start(), m.end()), "acro", binding, None))

    candidates.sort(key=lambda c: (c[0][0], -(c[0][1] - c[0][0])))
    refs: list[DocRef] = []
    occurrences: list[AcronymOccurrence] = []
    occupied: list[tuple[int, int]] = []
    for (s, e), kind, binding, docword in candidates:
        if any(s < oe and os_ < e for os_, oe in occupied):
            continue
        occupied.append((s, e))
        raw = masked_body[s:e]
        if kind == "alias":
            refs.append(
                DocRef(
                    span=(s, e), kind=RefKind.ALIAS, raw=raw,
                    target=binding.target, target_key=binding.target_key,
                )
            )
        elif kind == "compound":
            key = f"alias:{fold_text(binding.alias_text)}-{docword}"
            refs.append(
                DocRef(span=(s, e), kind=RefKind.ACRONYM_DOC, raw=raw, target_key=key)
            )
        else:
            occurrences.append(
                AcronymOccurrence(span=(s, e), acronym=raw, full_form=binding.full_form or "")
            )
    refs.sort(key=lambda r: r.span)
    occurrences.sort(key=lambda o: o.span)
    return refs, occurrences


# --- named entities ---------------------------------------------------------------

_CUE_LINES: tuple[tuple[EntityKind, str], ...] = (
    (EntityKind.SUBJECT, r"(?:az ugy targya|a per targya|targya?)"),
    (EntityKind.APPLICANT, r"(?:felperes|inditvanyozo|applicant)"),
    (EntityKind.DEFENDANT, r"(?:alperes|defendant)"),
    (EntityKind.REPRESENTATIVE, r"(?:kepviselo(?:je)?|jogi kepviselo|representative)"),
)


def extract_named_entities(
    doc: DocumentRecord, authorities: AuthoritySet
) -> list[NamedEntity]:
    """Judges via the normalized authority list (one typo per word allowed,
    compound-tolerant); subjects and parties from labelled cue lines."""
    entities = _judge_entities(doc.body, authorities)
    entities += _cue_line_entities(doc.body, authorities)
    entities.sort(key=lambda e: e.span)
    return entities


def _judge_entities(body: str, authorities: AuthoritySet) -> list[NamedEntity]:
    tokens = _tokens(body)
    out: list[NamedEntity] = []
    occupied: list[tuple[int, int]] = []
    for judge in authorities.judges:
        width = len(judge.split())
        variants_auth = concat_variants(judge)
        for i in range(0, len(tokens) - width + 1):
            start = tokens[i][1]
            end = tokens[i + width - 1][2]
            if any(start < oe and os_ < end for os_, oe in occupied):
                continue
            candidate = body[start:end]
            if "\n" in candidate:
                continue
            if _fuzzy_phrase_match(candidate, judge, variants_auth):
                out.append(
                    NamedEntity(
                        kind=EntityKind.JUDGE,
                        span=(start, end),
                        surface=candidate,
                        normalized=judge,
                    )
                )
                occupied.append((start, end))
    return out


def _fuzzy_phrase_match(candidate: str, authority: str, authority_variants: list[str]) -> bool:
    if word_match(candidate, authority):
        return True
    for cv in concat_variants(candidate):
        for av in authority_variants:
            if word_match(cv, av):
                return True
    return False


def _cue_line_entities(body: str, authorities: AuthoritySet) -> list[NamedEntity]:
    out: list[NamedEntity] = []
    offset = 0
    folded = fold_text(body)
    for line in body.split("\n"):
        fline = folded[offset : offset + len(line)]
        for kind, cue in _CUE_LINES:
            m = re.match(rf"\s*{cue}\s*:\s*(.+?)\s*$", fline)
            if m is None:
                continue
            span = (offset + m.start(1), offset + m.end(1))
            surface = body[span[0] : span[1]]
            normalized = (
                authorities.normalize_subject(surface)
                if kind is EntityKind.SUBJECT
                else None
            )
            out.append(NamedEntity(kind=kind, span=span, surface=surface, normalized=normalized))
            break
        offset += len(line) + 1
    return out


# --- pipeline ---------------------------------------------------------------------


def run_extraction(
    doc: DocumentRecord,
    authorities: AuthoritySet,
    resolver: Optional[Resolver] = None,
) -> ExtractionResult:
    """Full extraction pipeline for one document, in the canonical order."""
    refs = extract_references(doc, authorities, resolver)
    masked, bindings = mask_and_bind_aliases(doc, refs)
    alias_refs, acronym_occurrences = _alias_layer(masked, bindings)
    sentences = split_sentences(doc.body)
    _attach_contexts(doc.body, alias_refs, sentences)
    resolve_refs(alias_refs, resolver)
    all_refs = sorted(refs + alias_refs, key=lambda r: (r.span[0], r.span[1], r.article or 0))
    entities = extract_named_entities(doc, authorities)
    return ExtractionResult(
        references=all_refs,
        bindings=bindings,
        acronyms=acronym_occurrences,
        entities=entities,
    )


def apply_extraction(doc: DocumentRecord, result: ExtractionResult) -> None:
    doc.references = result.references
    doc.entities = result.entities
    doc.acronyms = result.acronyms
