"""Shared domain vocabulary: collections, connection types, identifiers, documents.

Everything here is an immutable value (or treated as one once constructed),
so instances can be shared freely between threads.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .extract import AcronymOccurrence, DocRef, NamedEntity


class Collection(Enum):
    """Source collection a document is stored under.

    Dossier grouping, pseudo-identifier generation and node filtering are
    all keyed on this value; every document belongs to exactly one.
    """

    EU_TREATY = "EU_TREATY"
    EU_LEGISLATION = "EU_LEGISLATION"
    EU_CASELAW = "EU_CASELAW"
    HU_AB = "HU_AB"
    HU_OBH = "HU_OBH"


class ConnectionType(Enum):
    """Typed relation between two documents.

    All types except RELATED come in (active, passive) pairs; the active
    member is the one affecting its target document. RELATED is undirected.
    Serialized as the upper-snake-case name in every file format and payload.
    """

    ANNULS = "ANNULS"
    ANNULLED_BY = "ANNULLED_BY"
    MODIFIES = "MODIFIES"
    MODIFIED_BY = "MODIFIED_BY"
    SUSPENDS = "SUSPENDS"
    SUSPENDED_BY = "SUSPENDED_BY"
    CONFIRMS = "CONFIRMS"
    CONFIRMED_BY = "CONFIRMED_BY"
    LEGAL_BASIS = "LEGAL_BASIS"
    BASIS_FOR = "BASIS_FOR"
    CITES = "CITES"
    CITED_BY = "CITED_BY"
    PRECEDES = "PRECEDES"
    FOLLOWS = "FOLLOWS"
    RELATED = "RELATED"


#: Ordered (active, passive) pairs. Closed set: the enumeration above is the
#: whole vocabulary, so pair resolution is provable by exhaustion.
CONNECTION_PAIRS: tuple[tuple[ConnectionType, ConnectionType], ...] = (
    (ConnectionType.ANNULS, ConnectionType.ANNULLED_BY),
    (ConnectionType.MODIFIES, ConnectionType.MODIFIED_BY),
    (ConnectionType.SUSPENDS, ConnectionType.SUSPENDED_BY),
    (ConnectionType.CONFIRMS, ConnectionType.CONFIRMED_BY),
    (ConnectionType.LEGAL_BASIS, ConnectionType.BASIS_FOR),
    (ConnectionType.CITES, ConnectionType.CITED_BY),
    (ConnectionType.PRECEDES, ConnectionType.FOLLOWS),
)

_PAIR_OF: dict[ConnectionType, tuple[ConnectionType, ConnectionType]] = {}
for _active, _passive in CONNECTION_PAIRS:
    _PAIR_OF[_active] = (_active, _passive)
    _PAIR_OF[_passive] = (_active, _passive)


def pair_of(t: ConnectionType) -> Optional[tuple[ConnectionType, ConnectionType]]:
    """Return the ordered (active, passive) pair containing ``t``.

    Both members of a pair map to the identical pair value. RELATED is
    undirected and has no pair, so it maps to ``None``.
    """
    return _PAIR_OF.get(t)


def is_active(t: ConnectionType) -> bool:
    """True iff ``t`` is the active (first) member of its pair.

    RELATED is undirected and therefore never active.
    """
    pair = _PAIR_OF.get(t)
    return pair is not None and pair[0] is t


def partner(t: ConnectionType) -> Optional[ConnectionType]:
    """The other member of ``t``'s pair, or ``None`` for RELATED."""
    pair = _PAIR_OF.get(t)
    if pair is None:
        return None
    active, passive = pair
    return passive if t is active else active


@dataclass(frozen=True)
class DocId:
    """Identifier bundle of one document.

    ``celex`` is the canonical primary key and is always present (generated
    when the source provides none). The remaining identifiers are kept for
    lookup: ECLI, the source-native id (for HU court decisions qualified by
    the assigning court) and the AB case GUID.
    """

    celex: str
    ecli: Optional[str] = None
    native_id: Optional[str] = None
    source_guid: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.celex:
            raise ValueError("celex must be non-empty")
        if self.ecli is not None:
            parts = self.ecli.split(":")
            if len(parts) != 5 or parts[0].upper() != "ECLI":
                raise ValueError(f"not a valid ECLI: {self.ecli!r}")


@dataclass
class DocumentRecord:
    """One legal document with its extraction results.

    ``metadata`` is an open, insertion-ordered key/value map standing in for
    the production system's very large metadata vocabulary; typed fields
    cover the subset the pipeline itself consumes. ``references``,
    ``entities`` and ``acronyms`` are populated by the extraction pipeline.
    """

    id: DocId
    collection: Collection
    language: str
    title: str
    body: str
    publication_date: dt.date
    case_number: Optional[str] = None
    court: Optional[str] = None
    metadata: dict[str, str] = field(default_factory=dict)
    references: list["DocRef"] = field(default_factory=list)
    entities: list["NamedEntity"] = field(default_factory=list)
    acronyms: list["AcronymOccurrence"] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.body:
            raise ValueError(f"document {self.id.celex} has an empty body")
        if len(self.language) != 2:
            raise ValueError(f"language must be a 2-letter code, got {self.language!r}")
