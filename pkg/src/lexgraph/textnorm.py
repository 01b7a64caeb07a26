"""Hungarian-aware text normalization.

Accent folding with position-faithful restoration, per-word fuzzy matching,
compound-tolerant concatenated variants, sentence segmentation that survives
identifier-embedded periods, and a rule-based suffix-stripping stemmer.

All functions are pure; parallel use needs no synchronization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

# Accented vowels fold to their base letters; everything else just
# lowercases. Deliberately no ligature expansion or other length-changing
# normalization, so the position map stays a bijection.
_FOLD_TABLE = str.maketrans(
    {
        "á": "a", "é": "e", "í": "i", "ó": "o", "ö": "o", "ő": "o",
        "ú": "u", "ü": "u", "ű": "u",
        "Á": "a", "É": "e", "Í": "i", "Ó": "o", "Ö": "o", "Ő": "o",
        "Ú": "u", "Ü": "u", "Ű": "u",
    }
)

_HYPHENS = "-‐‑–"


@dataclass(frozen=True)
class FoldedText:
    """Accent-free lowercase text plus the map back to source positions."""

    folded: str
    origin_map: tuple[int, ...]

    def origin_span(self, start: int, end: int) -> tuple[int, int]:
        """Map a span in folded coordinates back to the source text."""
        if start == end:
            pos = self.origin_map[start] if start < len(self.origin_map) else len(self.origin_map)
            return pos, pos
        return self.origin_map[start], self.origin_map[end - 1] + 1


def fold(s: str) -> FoldedText:
    """Fold accents away and lowercase, keeping a per-character origin map.

    The fold is character-for-character, so ``origin_map[i] == i``; the map
    exists so that callers composing folds with character-dropping
    transforms can treat both uniformly.
    """
    folded = s.translate(_FOLD_TABLE).lower()
    return FoldedText(folded=folded, origin_map=tuple(range(len(s))))


def fold_text(s: str) -> str:
    """Shorthand for ``fold(s).folded``."""
    return s.translate(_FOLD_TABLE).lower()


def strip_hyphens(s: str) -> str:
    return re.sub(f"[{_HYPHENS}]", "", s)


def concat_variants(s: str) -> list[str]:
    """Spelling variants of a possibly-compound phrase.

    Returns the original, the hyphen-free form and the form with both spaces
    and hyphens removed; duplicates dropped, original order kept. Compound
    usage is inconsistent in the wild (joined, hyphenated or spaced), so
    entity matching runs over all variants.
    """
    no_hyphen = strip_hyphens(s)
    no_space = re.sub(r"\s+", "", no_hyphen)
    out: list[str] = []
    for v in (s, no_hyphen, no_space):
        if v not in out:
            out.append(v)
    return out


# --- per-word fuzzy matching --------------------------------------------------


def damerau_levenshtein(a: str, b: str) -> int:
    """Edit distance counting substitution, insertion, deletion and adjacent
    transposition each as one operation (restricted/OSA variant)."""
    la, lb = len(a), len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    prev2: list[int] = []
    prev = list(range(lb + 1))
    for i in range(1, la + 1):
        cur = [i] + [0] * lb
        for j in range(1, lb + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
                cur[j] = min(cur[j], prev2[j - 2] + 1)
        prev2, prev = prev, cur
    return prev[lb]


def word_match(candidate: str, authority: str) -> bool:
    """True iff the two phrases align word-for-word with at most one typo per
    word (edit distance 1 under :func:`damerau_levenshtein`), compared on
    accent-folded text."""
    cand_words = fold_text(candidate).split()
    auth_words = fold_text(authority).split()
    if not cand_words or not auth_words or len(cand_words) != len(auth_words):
        return False
    return all(damerau_levenshtein(c, a) <= 1 for c, a in zip(cand_words, auth_words))


# --- sentence segmentation ----------------------------------------------------

# Identifier-like tokens whose embedded periods must not shatter sentences:
# HU decision numbers and AB promulgation-date parentheticals.
_PROTECT_RES = (
    re.compile(r"\d+\.[A-Z]{1,2}\.\d+(?:\.\d+)*/\d{4}/\d+\.?"),
    re.compile(r"\(\s*[IVXLCDM]+\.\s*\d+\.\s*\)"),
)

# Common abbreviations and similar period-bearing tokens (folded forms).
_ABBREVIATIONS = frozenset(
    ["sz", "szam", "un", "stb", "pl", "ill", "ld", "vo", "kb", "ti", "ui", "dr", "mr", "no", "arts", "art"]
)

_BOUNDARY_RE = re.compile(r"[.!?]")


def _protected_mask(s: str) -> list[bool]:
    mask = [False] * len(s)
    for rx in _PROTECT_RES:
        for m in rx.finditer(s):
            for i in range(m.start(), m.end()):
                mask[i] = True
    return mask


def split_sentences(s: str) -> list[tuple[int, int]]:
    """Partition ``s`` into sentence spans.

    A boundary is a ``.``/``!``/``?`` followed by whitespace and an uppercase
    letter, except when the period sits inside an identifier-like token
    (masked by a pre-scan) or terminates a known abbreviation. Spans are
    contiguous and cover the whole string; each starts right after the
    previous boundary.
    """
    if not s:
        return []
    folded = fold_text(s)
    protected = _protected_mask(s)
    spans: list[tuple[int, int]] = []
    start = 0
    for m in _BOUNDARY_RE.finditer(s):
        pos = m.start()
        if protected[pos]:
            continue
        # require whitespace, then an uppercase letter
        j = pos + 1
        if j >= len(s) or not s[j].isspace():
            continue
        while j < len(s) and s[j].isspace():
            j += 1
        if j >= len(s) or not s[j].isupper():
            continue
        if s[pos] == ".":
            word = re.search(r"(\w+)$", folded[:pos])
            if word is not None and word.group(1) in _ABBREVIATIONS:
                continue
        spans.append((start, pos + 1))
        start = pos + 1
    if start < len(s):
        spans.append((start, len(s)))
    return spans


# --- suffix-stripping stemmer -------------------------------------------------


@dataclass(frozen=True)
class SuffixTable:
    """Ordered suffix-strip rules: longest suffix first, ties lexicographic."""

    rules: tuple[tuple[str, int], ...]

    @classmethod
    def from_pairs(cls, pairs: list[tuple[str, int]]) -> "SuffixTable":
        seen: dict[str, int] = {}
        for suffix, min_stem in pairs:
            if not suffix:
                raise ValueError("empty suffix in table")
            if min_stem < 1:
                raise ValueError(f"min_stem_length must be positive for {suffix!r}")
            if suffix in seen:
                raise ValueError(f"duplicate suffix {suffix!r}")
            seen[suffix] = min_stem
        ordered = sorted(seen.items(), key=lambda kv: (-len(kv[0]), kv[0]))
        return cls(rules=tuple(ordered))

    @classmethod
    def load(cls, path: Path | str) -> "SuffixTable":
        """Read a `suffix<TAB>min_stem_length` per line fixture; `#` comments."""
        pairs: list[tuple[str, int]] = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            suffix, _, min_stem = line.partition("\t")
            pairs.append((suffix, int(min_stem)))
        return cls.from_pairs(pairs)


_MAX_STRIPS = 3


def stem(word: str, table: SuffixTable) -> str:
    """Strip recognized suffixes from ``word``, at most three times.

    Matching runs on the accent-folded form; the surviving prefix keeps its
    original characters. Each strip takes the longest applicable suffix
    whose removal leaves at least the rule's minimum stem length.
    """
    if not word:
        return word
    current = word
    for _ in range(_MAX_STRIPS):
        folded = fold_text(current)
        stripped = False
        for suffix, min_stem in table.rules:
            fsuf = fold_text(suffix)
            if folded.endswith(fsuf) and len(current) - len(fsuf) >= min_stem:
                current = current[: len(current) - len(fsuf)]
                stripped = True
                break
        if not stripped:
            break
    return current


def default_suffix_table() -> SuffixTable:
    """The suffix table shipped as package data (common case and possessive
    endings, minimum stem length 3)."""
    return SuffixTable.load(Path(__file__).parent / "data" / "suffixes.tsv")
