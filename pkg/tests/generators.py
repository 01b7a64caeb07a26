"""Random fixture generators shared by module tests and the acceptance suite."""

from __future__ import annotations

import datetime as dt
import random

from lexgraph.graph import DEFAULT_PRIORITY, Dossier, DossierGraph, Edge
from lexgraph.index import Query, SearchMode, parse_expert
from lexgraph.model import Collection, ConnectionType, DocId, DocumentRecord

VOCAB_HU = ["adó", "bírság", "illeték", "bíróság", "ítélet", "unió", "európai",
            "jog", "törvényszék", "határozat", "irányelv", "rendelet"]
VOCAB_EN = ["tax", "penalty", "court", "union", "law", "directive", "regulation"]


def make_doc(celex, body, language="hu"):
    return DocumentRecord(
        id=DocId(celex=celex),
        collection=Collection.EU_LEGISLATION,
        language=language,
        title=celex,
        body=body,
        publication_date=dt.date(2016, 1, 1),
    )


def random_corpus(rng: random.Random, n_docs: int = 30) -> dict:
    docs = {}
    for i in range(n_docs):
        language = rng.choice(["hu", "hu", "en"])
        vocab = VOCAB_HU if language == "hu" else VOCAB_EN
        words = [rng.choice(vocab) for _ in range(rng.randint(3, 40))]
        if language == "hu":
            words = [w + rng.choice(["", "", "nak", "ban", "ok"]) for w in words]
        doc = make_doc(f"3{2000 + i % 20}L{i:04d}", " ".join(words), language)
        docs[doc.id.celex] = doc
    return docs


def random_query(rng: random.Random) -> Query:
    mode = rng.choice(list(SearchMode))
    terms = tuple(rng.sample(VOCAB_HU + VOCAB_EN, rng.randint(1, 3)))
    use_synonyms = rng.random() < 0.5
    if mode is SearchMode.PROXIMITY:
        return Query(mode=mode, terms=terms, proximity_window=rng.randint(1, 6),
                     use_synonyms=use_synonyms)
    if mode is SearchMode.EXPERT:
        parts = [("NOT " if rng.random() < 0.3 else "") + t for t in terms]
        expr = f" {rng.choice(['AND', 'OR'])} ".join(parts)
        return Query(mode=mode, expert_expression=parse_expert(expr),
                     use_synonyms=use_synonyms)
    return Query(mode=mode, terms=terms, use_synonyms=use_synonyms)


def synthetic_graph(rng: random.Random, n_nodes: int, edge_prob: float = 0.05) -> DossierGraph:
    collections = list(Collection)
    dossiers = [
        Dossier(
            id=f"D{i:04d}",
            members=(f"D{i:04d}",),
            lead=f"D{i:04d}",
            collection=rng.choice(collections),
            label=f"node {i}",
        )
        for i in range(n_nodes)
    ]
    edges = []
    types = list(DEFAULT_PRIORITY)
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if rng.random() < edge_prob:
                lead = rng.choice(types)
                a, b = f"D{i:04d}", f"D{j:04d}"
                if rng.random() < 0.5:
                    a, b = b, a
                if lead is ConnectionType.RELATED:
                    a, b = min(a, b), max(a, b)
                edges.append(
                    Edge(
                        from_id=a,
                        to_id=b,
                        constituents=((lead, "synthetic"),),
                        lead_type=lead,
                        directed=lead is not ConnectionType.RELATED,
                    )
                )
    return DossierGraph(dossiers, edges)
