"""Curated authority tables used by extraction and normalization.

All tables are UTF-8 TSV fixtures: ``courts.tsv`` (court name, integer id),
``judges.tsv`` (canonical names), ``treaties.tsv`` (name variant, treaty
base celex), ``subjects.tsv`` (raw expression, normalized form). Lines
starting with ``#`` are comments. The package ships a small default set;
corpus fixtures may override any of the files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .textnorm import fold_text

DATA_DIR = Path(__file__).parent / "data"

_FILES = ("courts.tsv", "judges.tsv", "treaties.tsv", "subjects.tsv")


def _rows(path: Path) -> list[list[str]]:
    rows = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        rows.append(line.rstrip("\n").split("\t"))
    return rows


@dataclass(frozen=True)
class AuthoritySet:
    """Normalized-name lookups for courts, judges, treaties and subjects."""

    courts: dict[str, int] = field(default_factory=dict)
    judges: tuple[str, ...] = ()
    treaties: dict[str, str] = field(default_factory=dict)
    subjects: dict[str, str] = field(default_factory=dict)

    def normalize_subject(self, raw: str) -> str | None:
        """Curated normalization of a case-subject expression, if present."""
        return self.subjects.get(fold_text(raw).strip())

    def normalize_court(self, raw: str) -> str | None:
        """Map arbitrary casing/accents to the canonical court name."""
        folded = fold_text(raw).strip()
        for name in self.courts:
            if fold_text(name) == folded:
                return name
        return None

    @classmethod
    def load(cls, directory: Path | str) -> "AuthoritySet":
        directory = Path(directory)
        courts = {name: int(cid) for name, cid in _rows(directory / "courts.tsv")}
        judges = tuple(row[0] for row in _rows(directory / "judges.tsv"))
        treaties = {variant: base for variant, base in _rows(directory / "treaties.tsv")}
        subjects = {
            fold_text(raw).strip(): normalized
            for raw, normalized in _rows(directory / "subjects.tsv")
        }
        return cls(courts=courts, judges=judges, treaties=treaties, subjects=subjects)

    @classmethod
    def default(cls) -> "AuthoritySet":
        return cls.load(DATA_DIR)

    def has_all_files(self) -> bool:
        return bool(self.courts and self.judges and self.treaties)


def authority_files_present(directory: Path | str) -> bool:
    d = Path(directory)
    return all((d / f).exists() for f in _FILES)
