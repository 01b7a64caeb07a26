"""Synthetic-corpus generator with planted references and exact ground truth.

Every reference string is emitted by the canonical grammars; the filler
vocabulary is chosen so no other grammar can fire (no digits, no cue words,
no authority names, no parentheses). The generator records the exact span,
kind and target key the extractor must produce, plus expected judge
entities and acronym occurrences.
"""

from __future__ import annotations

import datetime as dt
import random
from dataclasses import dataclass, field
from pathlib import Path

from lexgraph.extract import RefKind

from corpus import CorpusBuilder

ROMAN = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII"]

FILLER_HU = [
    "az", "eljárás", "során", "felek", "által", "előadott", "érvelés",
    "vizsgálata", "megtörtént", "ennek", "körében", "megállapítható",
    "kereset", "megalapozott", "volt", "továbbá", "kötelezettség",
    "teljesítése", "elmaradt", "ezért", "jogkövetkezmény", "alkalmazása",
    "szükséges", "indokolás", "kiegészítése", "tényállás", "tisztázása",
    "megfelelően", "lezajlott", "független", "testület", "mérlegelte",
]

JUDGES = ["Kovács János", "Nagy Éva", "Szabó Péter", "Tóth Katalin", "Horváth Gábor"]
COURTS = ["Kúria", "Fővárosi Törvényszék", "Szegedi Törvényszék", "Budapest Court",
          "Supreme Court", "Debreceni Ítélőtábla"]

TEU_BASE = "12016M"
TFEU_BASE = "12012E"
TEU_ARTICLES = [7, 13, 14, 15, 16, 17, 18, 19, 48, 49, 50]
TFEU_ARTICLES = [101, 102, 107, 108]


@dataclass
class GroundTruth:
    refs: list[tuple[tuple[int, int], RefKind, str | None]] = field(default_factory=list)
    judges: list[tuple[tuple[int, int], str]] = field(default_factory=list)
    acronyms: list[tuple[int, int]] = field(default_factory=list)


class SentenceBuilder:
    """Compose a sentence from literal chunks and reference chunks, keeping
    the sentence-relative span of every planted item."""

    def __init__(self):
        self.text = ""
        self.refs: list[tuple[tuple[int, int], RefKind, str | None]] = []
        self.judges: list[tuple[tuple[int, int], str]] = []
        self.acronyms: list[tuple[int, int]] = []

    def lit(self, chunk: str) -> "SentenceBuilder":
        self.text += chunk
        return self

    def span_of(self, chunk: str) -> tuple[int, int]:
        start = len(self.text)
        self.text += chunk
        return (start, start + len(chunk))

    def ref(self, chunk: str, kind: RefKind, target_key: str | None) -> "SentenceBuilder":
        span = self.span_of(chunk)
        self.refs.append((span, kind, target_key))
        return self

    def zero_ref(self, kind: RefKind, target_key: str | None, at: int) -> "SentenceBuilder":
        self.refs.append(((at, at), kind, target_key))
        return self

    def judge(self, chunk: str, normalized: str) -> "SentenceBuilder":
        span = self.span_of(chunk)
        self.judges.append((span, normalized))
        return self

    def acronym(self, chunk: str) -> "SentenceBuilder":
        span = self.span_of(chunk)
        self.acronyms.append(span)
        return self


@dataclass
class DocPlan:
    celex_hint: str
    sentences: list[SentenceBuilder]

    def body_and_truth(self) -> tuple[str, GroundTruth]:
        body_parts: list[str] = []
        truth = GroundTruth()
        offset = 0
        for sb in self.sentences:
            for (s, e), kind, key in sb.refs:
                truth.refs.append(((s + offset, e + offset), kind, key))
            for (s, e), normalized in sb.judges:
                truth.judges.append(((s + offset, e + offset), normalized))
            for s, e in sb.acronyms:
                truth.acronyms.append((s + offset, e + offset))
            body_parts.append(sb.text)
            offset += len(sb.text) + 1  # sentences joined by one space
        return " ".join(body_parts), truth


def _filler(rng: random.Random, n: int, capitalize: bool = True) -> str:
    words = [rng.choice(FILLER_HU) for _ in range(n)]
    text = " ".join(words)
    if capitalize:
        text = text[0].upper() + text[1:]
    return text


def _filler_sentence(rng: random.Random) -> SentenceBuilder:
    sb = SentenceBuilder()
    sb.lit(_filler(rng, rng.randint(4, 9)) + ".")
    return sb


def _one_typo(rng: random.Random, name: str) -> str:
    words = name.split()
    i = rng.randrange(len(words))
    w = list(words[i])
    if len(w) >= 4 and rng.random() < 0.5:
        j = rng.randrange(1, len(w) - 2)
        w[j], w[j + 1] = w[j + 1], w[j]
    else:
        j = rng.randrange(1, len(w) - 1)
        w[j] = "x" if w[j] != "x" else "y"
    words[i] = "".join(w)
    return " ".join(words)


class PlantedCorpus:
    """Pool of target documents plus citing documents with ground truth."""

    def __init__(self, root: Path, rng: random.Random, n_citing: int = 200):
        self.rng = rng
        self.builder = CorpusBuilder(root)
        self.truth: dict[str, GroundTruth] = {}
        self.directives: list[tuple[int, int]] = []   # (year, serial)
        self.regulations: list[tuple[int, int]] = []
        self.cases: list[tuple[int, int]] = []        # (serial, year2)
        self.ab_numbers: list[tuple[int, int, str, int]] = []  # (n, year, roman, day)
        self.obh: list[tuple[str, str]] = []          # (court, number)
        self._alias_counter = 0
        self._acro_counter = 0
        self._build_pool()
        self._build_citing(n_citing)
        self.root = self.builder.write_manifest()
        self._write_authorities(root)

    # -- target pool ---------------------------------------------------------

    def _build_pool(self) -> None:
        rng = self.rng
        for i in range(12):
            year, serial = 2004 + i, 10 + i
            self.directives.append((year, serial))
            celex = f"3{year}L{serial:04d}"
            self._pool_doc_eurlex(celex, f"Irányelv {year}/{serial}")
        for i in range(8):
            year, serial = 2004 + i, 100 + i
            self.regulations.append((serial, year))
            celex = f"3{year}R{serial:04d}"
            self._pool_doc_eurlex(celex, f"Rendelet {serial}/{year}")
        for article in TEU_ARTICLES:
            self._pool_doc_eurlex(
                f"{TEU_BASE}{article:04d}", f"EUSZ {article}. cikk",
                collection="EU_TREATY",
            )
        for article in TFEU_ARTICLES:
            self._pool_doc_eurlex(
                f"{TFEU_BASE}{article:04d}", f"EUMSZ {article}. cikk",
                collection="EU_TREATY",
            )
        for i in range(8):
            serial, year2 = 100 + i, 10 + i
            self.cases.append((serial, year2))
            case = f"C-{serial}/{year2:02d}"
            body = _filler(rng, 8) + "."
            self.builder.add_curia(
                case, f"Ítélet a {case}. ügyben", body,
                dt.date(2000 + year2, 3, 1 + i),
            )
        for i in range(6):
            n, year = 5 + i, 2012 + i
            roman, day = ROMAN[i % 12], 3 + i
            self.ab_numbers.append((n, year, roman, day))
            number = f"{n}/{year}. ({roman}. {day}.) AB határozat"
            body = _filler(rng, 8) + "."
            self.builder.add_ab(number, number, body, dt.date(year, (i % 12) + 1, day))
        for i in range(6):
            court = COURTS[i % len(COURTS)]
            number = f"{2 + i}.K.27.{100 + i}/{2014 + (i % 3)}/{3 + i}."
            self.obh.append((court, number))
            body = _filler(rng, 8) + "."
            self.builder.add_obh(
                court, number, f"{court} ítélete", body,
                dt.date(2014 + (i % 3), 5, 2 + i),
            )

    def _pool_doc_eurlex(self, celex: str, title: str, collection: str = "EU_LEGISLATION"):
        body = _filler(self.rng, 8) + "."
        self.builder.add_eurlex(
            celex, title, body,
            dt.date(2000 + int(celex[1:5]) % 100, 1, 1 + int(celex[-2:]) % 27),
            collection=collection,
        )
        self.truth[celex] = GroundTruth()

    # -- sentence templates ----------------------------------------------------

    def _tpl_eu_case(self, rng) -> list[SentenceBuilder]:
        serial, year2 = rng.choice(self.cases)
        case = f"C-{serial}/{year2:02d}"
        celex = f"6{2000 + year2}CJ{serial:04d}"
        sb = SentenceBuilder()
        sb.lit(_filler(rng, 3) + " a ")
        sb.ref(case, RefKind.EU_CASE, f"celex:{celex}")
        sb.lit(". sz. ügyben " + _filler(rng, 3, capitalize=False) + ".")
        return [sb]

    def _tpl_regulation(self, rng) -> list[SentenceBuilder]:
        serial, year = rng.choice(self.regulations)
        sb = SentenceBuilder()
        sb.lit(_filler(rng, 3) + " a ")
        sb.ref(f"{serial}/{year}", RefKind.EU_REGULATION, f"celex:3{year}R{serial:04d}")
        sb.lit(" rendelet szerint " + _filler(rng, 3, capitalize=False) + ".")
        return [sb]

    def _tpl_directive(self, rng) -> list[SentenceBuilder]:
        year, serial = rng.choice(self.directives)
        sb = SentenceBuilder()
        sb.lit(_filler(rng, 3) + " a ")
        sb.ref(f"{year}/{serial}", RefKind.EU_DIRECTIVE, f"celex:3{year}L{serial:04d}")
        sb.lit(" irányelv alapján " + _filler(rng, 3, capitalize=False) + ".")
        return [sb]

    def _tpl_ab(self, rng) -> list[SentenceBuilder]:
        n, year, roman, day = rng.choice(self.ab_numbers)
        sb = SentenceBuilder()
        sb.lit(_filler(rng, 3) + " a ")
        sb.ref(f"{n}/{year}", RefKind.AB_DECISION, f"ab:{n}/{year}")
        sb.lit(f". ({roman}. {day}.) AB határozat szerint "
               + _filler(rng, 2, capitalize=False) + ".")
        return [sb]

    def _tpl_hu_decision(self, rng) -> list[SentenceBuilder]:
        court, number = rng.choice(self.obh)
        sb = SentenceBuilder()
        if rng.random() < 0.4:
            other = rng.choice([c for c in COURTS if c != court])
            sb.lit(f"A {other} helybenhagyta a {court} ")
        else:
            sb.lit(f"A {court} ")
        sb.ref(number, RefKind.HU_DECISION, f"hu:{court}|{number}")
        sb.lit(" számú ítélete " + _filler(rng, 3, capitalize=False) + ".")
        return [sb]

    def _tpl_treaty_single(self, rng) -> list[SentenceBuilder]:
        article = rng.choice(TEU_ARTICLES)
        sb = SentenceBuilder()
        sb.lit("Article ")
        sb.ref(str(article), RefKind.EU_TREATY_ARTICLE, f"celex:{TEU_BASE}{article:04d}")
        sb.lit(" of the Treaty on European Union shall apply to the dispute.")
        return [sb]

    def _tpl_treaty_range(self, rng) -> list[SentenceBuilder]:
        x = rng.choice([13, 14, 15])
        y = x + rng.randint(1, 19 - x)
        sb = SentenceBuilder()
        sb.lit("Articles ")
        sb.ref(str(x), RefKind.EU_TREATY_ARTICLE, f"celex:{TEU_BASE}{x:04d}")
        sb.lit(" to ")
        y_start = len(sb.text)
        sb.ref(str(y), RefKind.EU_TREATY_ARTICLE, f"celex:{TEU_BASE}{y:04d}")
        for interior in range(x + 1, y):
            sb.zero_ref(RefKind.EU_TREATY_ARTICLE, f"celex:{TEU_BASE}{interior:04d}", y_start)
        sb.lit(" of the Treaty on European Union shall apply in full.")
        sb.refs.sort(key=lambda r: (r[0][0], r[0][1]))
        return [sb]

    def _tpl_treaty_paragraphs(self, rng) -> list[SentenceBuilder]:
        p = rng.randint(1, 3)
        q = p + rng.randint(1, 3)
        sb = SentenceBuilder()
        sb.lit("Article ")
        sb.ref(f"48({p}) to ({q})", RefKind.EU_TREATY_ARTICLE, f"celex:{TEU_BASE}0048")
        sb.lit(" of the Treaty on European Union shall apply accordingly.")
        return [sb]

    def _tpl_treaty_hu(self, rng) -> list[SentenceBuilder]:
        article = rng.choice(TFEU_ARTICLES)
        sb = SentenceBuilder()
        sb.lit("Az EUMSZ ")
        sb.ref(str(article), RefKind.EU_TREATY_ARTICLE, f"celex:{TFEU_BASE}{article:04d}")
        sb.lit(". cikk szerint " + _filler(rng, 3, capitalize=False) + ".")
        return [sb]

    def _tpl_alias(self, rng) -> list[SentenceBuilder]:
        year, serial = rng.choice(self.directives)
        self._alias_counter += 1
        alias = f"KER-Keret{self._alias_counter}"
        key = f"celex:3{year}L{serial:04d}"
        define = SentenceBuilder()
        define.lit("Under Directive ")
        define.ref(f"{year}/{serial}", RefKind.EU_DIRECTIVE, key)
        define.lit(f" ({alias}) the operators must comply fully.")
        use = SentenceBuilder()
        use.lit("The ")
        use.ref(alias, RefKind.ALIAS, key)
        use.lit(" sets the national commitments accordingly.")
        sentences = [define, use]
        if rng.random() < 0.5:
            again = SentenceBuilder()
            again.lit("A ")
            again.ref(alias, RefKind.ALIAS, key)
            again.lit(" hatálya " + _filler(rng, 2, capitalize=False) + ".")
            sentences.append(again)
        return sentences

    def _tpl_acronym(self, rng) -> list[SentenceBuilder]:
        self._acro_counter += 1
        acro = f"EMV{chr(ord('A') + self._acro_counter % 20)}"
        full = "Európai Mezőgazdasági Vidékfejlesztési Alap"
        define = SentenceBuilder()
        define.lit(f"Az {full} ({acro}) nyújt támogatást ehhez.")
        standalone = SentenceBuilder()
        standalone.lit("Az ")
        standalone.acronym(acro)
        standalone.lit(" forrásai " + _filler(rng, 2, capitalize=False) + ".")
        sentences = [define, standalone]
        if rng.random() < 0.5:
            compound = SentenceBuilder()
            compound.lit("Az ")
            compound.ref(
                f"{acro}-rendelet", RefKind.ACRONYM_DOC,
                f"alias:{acro.lower()}-rendelet",
            )
            compound.lit(" szabályai " + _filler(rng, 2, capitalize=False) + ".")
            sentences.append(compound)
        return sentences

    def _tpl_judge(self, rng) -> list[SentenceBuilder]:
        judge = rng.choice(JUDGES)
        surface = _one_typo(rng, judge)
        sb = SentenceBuilder()
        sb.lit("Az ügyben ")
        sb.judge(surface, judge)
        sb.lit(" bíró járt el " + _filler(rng, 2, capitalize=False) + ".")
        return [sb]

    # -- citing documents ---------------------------------------------------------

    def _build_citing(self, n_citing: int) -> None:
        rng = self.rng
        templates = [
            self._tpl_eu_case, self._tpl_regulation, self._tpl_directive,
            self._tpl_ab, self._tpl_hu_decision, self._tpl_treaty_single,
            self._tpl_treaty_range, self._tpl_treaty_paragraphs,
            self._tpl_treaty_hu, self._tpl_alias, self._tpl_acronym,
            self._tpl_judge,
        ]
        for i in range(n_citing):
            sentences: list[SentenceBuilder] = [_filler_sentence(rng)]
            for template in rng.sample(templates, rng.randint(2, 4)):
                sentences.extend(template(rng))
            sentences.append(_filler_sentence(rng))
            celex = f"3{2020 + i % 5}D{i:04d}"
            plan = DocPlan(celex_hint=celex, sentences=sentences)
            body, truth = plan.body_and_truth()
            self.builder.add_eurlex(
                celex, f"Szintetikus dokumentum {i}", body,
                dt.date(2020 + i % 5, (i % 12) + 1, (i % 27) + 1),
            )
            self.truth[celex] = truth

    def _write_authorities(self, root: Path) -> None:
        auth = root / "authorities"
        auth.mkdir(exist_ok=True)
        (auth / "courts.tsv").write_text(
            "\n".join(f"{c}\t{i + 1}" for i, c in enumerate(COURTS)) + "\n",
            encoding="utf-8",
        )
        (auth / "judges.tsv").write_text("\n".join(JUDGES) + "\n", encoding="utf-8")
        (auth / "treaties.tsv").write_text(
            "Treaty on European Union\t12016M\n"
            "EUSZ\t12016M\n"
            "Treaty on the Functioning of the European Union\t12012E\n"
            "EUMSZ\t12012E\n",
            encoding="utf-8",
        )
        (auth / "subjects.tsv").write_text("adóügy\tadójog\n", encoding="utf-8")
