"""Presentation markup for a document body.

Resolved references become links to their dossier lead document, unresolved
ones are wrapped in a ``missing``-classed element (presented red by the
client, non-navigable), acronym occurrences carry their full form as an
abbreviation title. Text is strictly escaped, so stripping the tags and
unescaping reproduces the original body byte for byte.
"""

from __future__ import annotations

import html
import re
from dataclasses import dataclass
from typing import Mapping, Optional

from .model import DocId, DocumentRecord
from .store import ReadSnapshot


@dataclass(frozen=True)
class DecoratedDocument:
    doc: DocId
    markup: str
    link_count: int
    missing_count: int


def strip_markup(markup: str) -> str:
    """Inverse of decoration: drop tags, unescape entities."""
    return html.unescape(re.sub(r"<[^>]*>", "", markup))


def decorate(
    doc: DocumentRecord,
    snapshot: ReadSnapshot,
    lead_of: Optional[Mapping[str, str]] = None,
) -> DecoratedDocument:
    """Render a document body with its extraction results inlined.

    ``lead_of`` maps a member celex to its dossier lead so links land on
    the lead document; without it links target the member directly.
    """
    lead_of = lead_of or {}
    wraps: list[tuple[tuple[int, int], str, str]] = []
    links = missing = 0
    for ref in doc.references:
        if ref.resolved and ref.target is not None:
            target = lead_of.get(ref.target.celex, ref.target.celex)
            open_tag = f'<a href="/documents/{html.escape(target, quote=True)}">'
            wraps.append((ref.span, open_tag, "</a>"))
            links += 1
        else:
            wraps.append((ref.span, '<span class="missing">', "</span>"))
            missing += 1
    for occurrence in doc.acronyms:
        title = html.escape(occurrence.full_form, quote=True)
        wraps.append((occurrence.span, f'<abbr title="{title}">', "</abbr>"))

    wraps.sort(key=lambda w: (w[0][0], w[0][1]))
    body = doc.body
    parts: list[str] = []
    cursor = 0
    for (start, end), open_tag, close_tag in wraps:
        parts.append(html.escape(body[cursor:start], quote=False))
        parts.append(open_tag)
        parts.append(html.escape(body[start:end], quote=False))
        parts.append(close_tag)
        cursor = end
    parts.append(html.escape(body[cursor:], quote=False))
    return DecoratedDocument(
        doc=doc.id,
        markup="".join(parts),
        link_count=links,
        missing_count=missing,
    )
