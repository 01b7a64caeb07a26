"""Identifier grammars: Celex, ECLI, EU case numbers, HU decision numbers.

Celex is the canonical primary key. Documents arriving without one get a
generated value: EU court documents from their case number (sector 6), HU
documents from a persistent serial registry (sector 8, descriptors HA/HB).

All parsers are pure; the serial registry is the single mutable resource
and serializes its mutations through one lock.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .model import Collection, DocumentRecord


class MalformedIdentifier(ValueError):
    """Raised when an identifier string violates its grammar."""


class RegistryUnavailable(OSError):
    """Raised when the persistent serial registry cannot be read or written."""


# --- Celex ------------------------------------------------------------------
#
# Grammar: sector(1 digit 1-9) year(4 digits) descriptor(1-2 uppercase
# letters) serial(4 digits, zero padded), concatenated without separators.

_CELEX_RE = re.compile(r"^([1-9])(\d{4})([A-Z]{1,2})(\d{4})$")

#: Sectors in use: 1 treaties, 3 legislation, 6 case law, 8 generated
#: national/pseudo identifiers.
KNOWN_SECTORS = (1, 3, 6, 8)


@dataclass(frozen=True)
class CelexParts:
    sector: int
    year: int
    descriptor: str
    serial: int

    def __post_init__(self) -> None:
        if not 1 <= self.sector <= 9:
            raise MalformedIdentifier(f"celex sector out of range: {self.sector}")
        if not 0 <= self.year <= 9999:
            raise MalformedIdentifier(f"celex year out of range: {self.year}")
        if not re.fullmatch(r"[A-Z]{1,2}", self.descriptor):
            raise MalformedIdentifier(f"celex descriptor must be 1-2 uppercase letters: {self.descriptor!r}")
        if not 0 <= self.serial <= 9999:
            raise MalformedIdentifier(f"celex serial out of range: {self.serial}")

    def render(self) -> str:
        return f"{self.sector}{self.year:04d}{self.descriptor}{self.serial:04d}"


def parse_celex(s: str) -> CelexParts:
    """Parse a Celex string into its parts; inverse of :meth:`CelexParts.render`."""
    m = _CELEX_RE.match(s)
    if m is None:
        raise MalformedIdentifier(f"not a valid celex: {s!r}")
    sector, year, descriptor, serial = m.groups()
    return CelexParts(int(sector), int(year), descriptor, int(serial))


def is_celex(s: str) -> bool:
    return _CELEX_RE.match(s) is not None


# --- EU case numbers --------------------------------------------------------

_EU_CASE_RE = re.compile(r"^([CTF])-(\d+)/(\d{2})$")

#: Court prefix to generated-celex descriptor. One letter pair per court;
#: production numbering distinguishes judgment/opinion/order document types,
#: which this grammar does not.
_COURT_DESCRIPTOR = {"C": "CJ", "T": "TJ", "F": "FJ"}


@dataclass(frozen=True)
class EuCaseNumber:
    court_prefix: str
    serial: int
    year2: int
    joined_with: tuple["EuCaseNumber", ...] = ()

    def __post_init__(self) -> None:
        if self.court_prefix not in _COURT_DESCRIPTOR:
            raise MalformedIdentifier(f"unknown court prefix: {self.court_prefix!r}")
        if self.serial <= 0:
            raise MalformedIdentifier(f"case serial must be positive: {self.serial}")
        if not 0 <= self.year2 <= 99:
            raise MalformedIdentifier(f"case 2-digit year out of range: {self.year2}")

    def render(self) -> str:
        """Canonical `P-S/YY` form, serial unpadded; joined members not shown."""
        return f"{self.court_prefix}-{self.serial}/{self.year2:02d}"


def parse_eu_case(s: str) -> EuCaseNumber:
    m = _EU_CASE_RE.match(s)
    if m is None:
        raise MalformedIdentifier(f"not a valid EU case number: {s!r}")
    prefix, serial, year2 = m.groups()
    if int(serial) <= 0:
        raise MalformedIdentifier(f"case serial must be positive: {s!r}")
    return EuCaseNumber(prefix, int(serial), int(year2))


def expand_year2(yy: int) -> int:
    """Expand a 2-digit case-number year; the docket starts in 1953, so no
    20xx case can predate the pivot."""
    if not 0 <= yy <= 99:
        raise MalformedIdentifier(f"2-digit year out of range: {yy}")
    return 1900 + yy if yy >= 53 else 2000 + yy


def celex_for_case(n: EuCaseNumber, doc_year: Optional[int] = None) -> CelexParts:
    """Generate the Celex of an EU court document from its case number.

    ``doc_year`` is accepted for signature stability but the case year wins:
    generated case identifiers are keyed on the docket year.
    """
    return CelexParts(
        sector=6,
        year=expand_year2(n.year2),
        descriptor=_COURT_DESCRIPTOR[n.court_prefix],
        serial=n.serial,
    )


# --- HU court decision numbers ----------------------------------------------

_HU_DECISION_RE = re.compile(r"^(\d+)\.([A-Z]{1,2})\.(\d+(?:\.\d+)*)/(\d{4})/(\d+)\.?$")


@dataclass(frozen=True)
class HuDecisionNumber:
    """An OBH-published court decision number, e.g. ``4.K.27.207/2015/12.``

    The rendered number is unique only together with the assigning court;
    two courts may assign the same number.
    """

    council: int
    case_type_letter: str
    registry: tuple[int, ...]
    year: int
    doc_serial: int
    court: str = ""

    def __post_init__(self) -> None:
        if self.council <= 0:
            raise MalformedIdentifier(f"council must be positive: {self.council}")
        if not re.fullmatch(r"[A-Z]{1,2}", self.case_type_letter):
            raise MalformedIdentifier(f"bad case type letter: {self.case_type_letter!r}")
        if not self.registry or any(r <= 0 for r in self.registry):
            raise MalformedIdentifier(f"registry numbers must be positive: {self.registry}")
        if not 1000 <= self.year <= 9999:
            raise MalformedIdentifier(f"bad year: {self.year}")
        if self.doc_serial <= 0:
            raise MalformedIdentifier(f"doc serial must be positive: {self.doc_serial}")

    def render(self) -> str:
        """Canonical `c.T.r1.r2/YYYY/d.` form, court not included."""
        reg = ".".join(str(r) for r in self.registry)
        return f"{self.council}.{self.case_type_letter}.{reg}/{self.year}/{self.doc_serial}."


def parse_hu_decision(s: str, court: str = "") -> HuDecisionNumber:
    m = _HU_DECISION_RE.match(s)
    if m is None:
        raise MalformedIdentifier(f"not a valid HU decision number: {s!r}")
    council, letters, registry, year, serial = m.groups()
    return HuDecisionNumber(
        council=int(council),
        case_type_letter=letters,
        registry=tuple(int(r) for r in registry.split(".")),
        year=int(year),
        doc_serial=int(serial),
        court=court,
    )


# --- ECLI -------------------------------------------------------------------


def parse_ecli(s: str) -> tuple[str, str, str, str]:
    """Split an ECLI into (country, court, year, number).

    The leading token must be ``ECLI`` (case-insensitive on input); the
    remaining four fields are returned verbatim.
    """
    parts = s.strip().split(":")
    if len(parts) != 5:
        raise MalformedIdentifier(
            f"ECLI must have exactly 5 colon-separated fields, got {len(parts)}: {s!r}"
        )
    head, country, court, year, number = parts
    if head.upper() != "ECLI":
        raise MalformedIdentifier(f"ECLI must start with the literal token 'ECLI': {s!r}")
    if not all((country, court, year, number)):
        raise MalformedIdentifier(f"ECLI has an empty field: {s!r}")
    return country, court, year, number


def render_ecli(country: str, court: str, year: str, number: str) -> str:
    return f"ECLI:{country}:{court}:{year}:{number}"


# --- Pseudo-Celex serial registry -------------------------------------------

#: Collection to generated-celex descriptor, sector 8 (never collides with
#: the EU sectors 1/3/6).
_PSEUDO_DESCRIPTOR = {Collection.HU_AB: "HA", Collection.HU_OBH: "HB"}


class SerialRegistry:
    """Persistent, monotonic serial assignment per (year, descriptor).

    Backed by a UTF-8 text file with one line per assignment:
    ``descriptor<TAB>year<TAB>serial<TAB>native_id``. Assignments are stable
    across runs: looking up an already-registered native id returns the
    serial recorded in the file.
    """

    def __init__(self, path: Path | str):
        self._path = Path(path)
        self._lock = threading.Lock()
        self._by_native: dict[tuple[str, int, str], int] = {}
        self._next: dict[tuple[str, int], int] = {}
        self._load()

    def _load(self) -> None:
        if not self._path.exists():
            return
        try:
            text = self._path.read_text(encoding="utf-8")
        except OSError as exc:
            raise RegistryUnavailable(f"cannot read registry {self._path}: {exc}") from exc
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise RegistryUnavailable(
                    f"corrupt registry line {lineno} in {self._path}: {line!r}"
                )
            descriptor, year_s, serial_s, native_id = fields
            year, serial = int(year_s), int(serial_s)
            self._by_native[(descriptor, year, native_id)] = serial
            key = (descriptor, year)
            self._next[key] = max(self._next.get(key, 1), serial + 1)

    def assign(self, descriptor: str, year: int, native_id: str) -> int:
        """Return the serial for ``native_id``, allocating and persisting a
        new one on first sight."""
        with self._lock:
            known = self._by_native.get((descriptor, year, native_id))
            if known is not None:
                return known
            serial = self._next.get((descriptor, year), 1)
            try:
                with open(self._path, "a", encoding="utf-8") as fh:
                    fh.write(f"{descriptor}\t{year}\t{serial}\t{native_id}\n")
            except OSError as exc:
                raise RegistryUnavailable(f"cannot write registry {self._path}: {exc}") from exc
            self._by_native[(descriptor, year, native_id)] = serial
            self._next[(descriptor, year)] = serial + 1
            return serial


def pseudo_celex(doc: DocumentRecord, registry: SerialRegistry) -> CelexParts:
    """Generate a sector-8 Celex for a HU document lacking a source one.

    Idempotent: repeated calls for the same native id hit the registry file
    and return the identical value.
    """
    descriptor = _PSEUDO_DESCRIPTOR.get(doc.collection)
    if descriptor is None:
        raise ValueError(f"pseudo celex only applies to HU collections, got {doc.collection}")
    native_id = doc.id.native_id or doc.id.source_guid
    if not native_id:
        raise ValueError(f"document needs a native id for pseudo celex assignment: {doc.title!r}")
    year = doc.publication_date.year
    serial = registry.assign(descriptor, year, native_id)
    return CelexParts(sector=8, year=year, descriptor=descriptor, serial=serial)
