"""Citation network over document dossiers.

Dossier grouping is collection dependent: treaty articles group across
publication years, legislation groups its corrigenda/consolidations around
the original act, case law groups by (joined) case number, AB decisions are
single-document dossiers except joined cases, OBH rulings stay separate.

Connections recorded from both sides of an (active, passive) pair collapse
onto the active side; the highest-priority constituent types and directs
the single displayed edge. Neighborhood staging (star / cross / second
order) and filtering always return topology only: layout belongs to the
client.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .identifiers import MalformedIdentifier, parse_celex
from .model import Collection, ConnectionType, is_active, pair_of
from .store import ReadSnapshot, Repository, parse_connections, resolve_target_key


class UnknownDossier(KeyError):
    """Raised when a graph operation names a dossier that does not exist."""


class Stage(Enum):
    STAR = "STAR"
    CROSS = "CROSS"
    SECOND = "SECOND"


class ExportFormat(Enum):
    DOT = "DOT"
    GRAPH_JSON = "GRAPH_JSON"


#: Default lead-connection priority, strongest legal effect first.
#: Overridable through a one-type-per-line fixture file.
DEFAULT_PRIORITY: tuple[ConnectionType, ...] = (
    ConnectionType.ANNULS,
    ConnectionType.SUSPENDS,
    ConnectionType.MODIFIES,
    ConnectionType.CONFIRMS,
    ConnectionType.PRECEDES,
    ConnectionType.LEGAL_BASIS,
    ConnectionType.CITES,
    ConnectionType.RELATED,
)


def load_priority(path: Path | str) -> tuple[ConnectionType, ...]:
    types = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        types.append(ConnectionType(line))
    return tuple(types)


@dataclass(frozen=True)
class Dossier:
    """A merged graph node: related documents plus the lead document that
    labels the node and receives clicks. The id is the lead celex."""

    id: str
    members: tuple[str, ...]
    lead: str
    collection: Collection
    label: str


@dataclass(frozen=True)
class Edge:
    """Single displayed connection between two dossiers.

    ``constituents`` keeps every recorded (type, origin) untouched;
    ``lead_type``/``directed``/endpoint order are derived by pair
    resolution and never drop information.
    """

    from_id: str
    to_id: str
    constituents: tuple[tuple[ConnectionType, str], ...]
    lead_type: ConnectionType
    directed: bool


@dataclass(frozen=True)
class GraphView:
    center: str
    stage: Stage
    nodes: tuple[Dossier, ...]
    edges: tuple[Edge, ...]
    node_filter: frozenset[Collection]
    edge_filter: frozenset[ConnectionType]

    def node_ids(self) -> set[str]:
        return {d.id for d in self.nodes}


# --- dossier construction -----------------------------------------------------------


def _latest(docs, snapshot: ReadSnapshot) -> str:
    return max(docs, key=lambda c: (snapshot.docs[c].publication_date, c))


def _earliest(docs, snapshot: ReadSnapshot) -> str:
    return min(docs, key=lambda c: (snapshot.docs[c].publication_date, c))


def _legislation_base(doc) -> str:
    for key in ("consolidates", "corrects", "version_of"):
        base = doc.metadata.get(key, "")
        if base:
            return base
    return doc.id.celex


def _doc_cases(doc) -> list[str]:
    cases = []
    if doc.case_number:
        cases.append(doc.case_number)
    cases.extend(Repository._joined_cases(doc))
    return cases


def _case_classes(snapshot: ReadSnapshot) -> dict[str, str]:
    """Union joined case numbers transitively; map each number to the
    lexicographically smallest member of its class (the dossier key)."""
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for celex in sorted(snapshot.docs):
        doc = snapshot.docs[celex]
        if doc.collection is not Collection.EU_CASELAW:
            continue
        cases = _doc_cases(doc)
        for other in cases[1:]:
            union(cases[0], other)
        for case in cases:
            find(case)
    smallest: dict[str, str] = {}
    for case in parent:
        root = find(case)
        smallest[root] = min(smallest.get(root, case), case)
    return {case: smallest[find(case)] for case in parent}


def build_dossiers(snapshot: ReadSnapshot) -> list[Dossier]:
    """Partition every document into exactly one dossier, per-collection."""
    case_class = _case_classes(snapshot)
    groups: dict[tuple, list[str]] = {}
    for celex in sorted(snapshot.docs):
        doc = snapshot.docs[celex]
        if doc.collection is Collection.EU_TREATY:
            try:
                parts = parse_celex(celex)
                key = ("treaty", parts.descriptor, parts.serial)
            except MalformedIdentifier:
                key = ("treaty", celex, 0)
        elif doc.collection is Collection.EU_LEGISLATION:
            key = ("leg", _legislation_base(doc))
        elif doc.collection is Collection.EU_CASELAW:
            cases = _doc_cases(doc)
            key = ("case", case_class[cases[0]] if cases else celex)
        elif doc.collection is Collection.HU_AB:
            key = ("ab", doc.metadata.get("joined_group") or celex)
        else:
            key = ("obh", celex)
        groups.setdefault(key, []).append(celex)

    dossiers = []
    for key, members in groups.items():
        collection = snapshot.docs[members[0]].collection
        if collection is Collection.EU_LEGISLATION:
            lead = _earliest(members, snapshot)
        else:
            lead = _latest(members, snapshot)
        lead_doc = snapshot.docs[lead]
        dossiers.append(
            Dossier(
                id=lead,
                members=tuple(sorted(members)),
                lead=lead,
                collection=collection,
                label=lead_doc.title or lead,
            )
        )
    dossiers.sort(key=lambda d: d.id)
    return dossiers


# --- edge construction and pair resolution --------------------------------------------


def resolve_edge(
    connections: Sequence[tuple[ConnectionType, str]],
    priority: Sequence[ConnectionType] = DEFAULT_PRIORITY,
) -> tuple[ConnectionType, bool]:
    """Collapse recorded constituents to (lead_type, directed).

    Passive members are replaced by their active partners first; the lead
    is the highest-priority type present. RELATED leads are undirected.
    """
    if not connections:
        raise ValueError("resolve_edge needs at least one constituent")
    normalized = []
    for ctype, _origin in connections:
        pair = pair_of(ctype)
        normalized.append(ctype if pair is None or is_active(ctype) else pair[0])
    rank = {t: i for i, t in enumerate(priority)}
    lead = min(normalized, key=lambda t: rank.get(t, len(rank)))
    return lead, lead is not ConnectionType.RELATED


@dataclass
class _Recorded:
    ctype: ConnectionType
    origin: str
    src: str
    dst: str


class DossierGraph:
    """The full dossier-level citation network for one snapshot."""

    def __init__(self, dossiers: list[Dossier], edges: list[Edge]):
        self.dossiers: dict[str, Dossier] = {d.id: d for d in dossiers}
        self.edges: list[Edge] = sorted(edges, key=lambda e: (e.from_id, e.to_id))
        self.adjacency: dict[str, set[str]] = {d.id: set() for d in dossiers}
        for edge in self.edges:
            self.adjacency[edge.from_id].add(edge.to_id)
            self.adjacency[edge.to_id].add(edge.from_id)
        self._member_to_dossier = {
            member: d.id for d in dossiers for member in d.members
        }

    def dossier_of(self, celex: str) -> Optional[str]:
        return self._member_to_dossier.get(celex)

    @classmethod
    def from_snapshot(
        cls,
        snapshot: ReadSnapshot,
        priority: Sequence[ConnectionType] = DEFAULT_PRIORITY,
    ) -> "DossierGraph":
        dossiers = build_dossiers(snapshot)
        member_of = {m: d.id for d in dossiers for m in d.members}
        recorded: dict[tuple[str, str], list[_Recorded]] = {}

        def record(src_doss: str, dst_doss: str, ctype: ConnectionType, origin: str):
            if src_doss == dst_doss:
                return
            key = (min(src_doss, dst_doss), max(src_doss, dst_doss))
            recorded.setdefault(key, []).append(
                _Recorded(ctype=ctype, origin=origin, src=src_doss, dst=dst_doss)
            )

        for celex in sorted(snapshot.docs):
            doc = snapshot.docs[celex]
            src = member_of[celex]
            for ref in doc.references:
                if not ref.resolved or ref.target is None:
                    continue
                dst = member_of.get(ref.target.celex)
                if dst is None:
                    continue
                record(src, dst, ConnectionType.CITES, f"text:{ref.raw}")
            for ctype, key in parse_connections(doc):
                target = resolve_target_key(snapshot.docs, key)
                if target is None:
                    continue
                dst = member_of.get(target.celex)
                if dst is None:
                    continue
                record(src, dst, ctype, f"metadata:{key}")

        edges = []
        for (_a, _b), items in recorded.items():
            items.sort(key=lambda r: (r.ctype.value, r.origin, r.src, r.dst))
            constituents = tuple((r.ctype, r.origin) for r in items)
            lead_type, directed = resolve_edge(constituents, priority)
            lead_dir = _lead_direction(items, lead_type)
            if directed:
                from_id, to_id = lead_dir
            else:
                from_id, to_id = min(_a, _b), max(_a, _b)
            edges.append(
                Edge(
                    from_id=from_id,
                    to_id=to_id,
                    constituents=constituents,
                    lead_type=lead_type,
                    directed=directed,
                )
            )
        return cls(build_dossiers(snapshot), edges)


def _lead_direction(items: list[_Recorded], lead_type: ConnectionType) -> tuple[str, str]:
    """Direction of the lead constituent, flipping passive recordings."""
    for item in items:
        pair = pair_of(item.ctype)
        if pair is None:
            active, flipped = item.ctype, False
        elif is_active(item.ctype):
            active, flipped = item.ctype, False
        else:
            active, flipped = pair[0], True
        if active is lead_type:
            return (item.dst, item.src) if flipped else (item.src, item.dst)
    first = items[0]
    return first.src, first.dst


# --- neighborhood staging and filtering ------------------------------------------------


def _bfs(adjacency: dict[str, set[str]], center: str, depth: int) -> set[str]:
    seen = {center}
    queue = deque([(center, 0)])
    while queue:
        node, d = queue.popleft()
        if d == depth:
            continue
        for neighbor in sorted(adjacency.get(node, ())):
            if neighbor not in seen:
                seen.add(neighbor)
                queue.append((neighbor, d + 1))
    return seen


def _coerce_graph(source: Union[DossierGraph, ReadSnapshot]) -> DossierGraph:
    if isinstance(source, DossierGraph):
        return source
    return DossierGraph.from_snapshot(source)


ALL_COLLECTIONS = frozenset(Collection)
ALL_TYPES = frozenset(ConnectionType)


def neighborhood(
    center: str, stage: Stage, source: Union[DossierGraph, ReadSnapshot]
) -> GraphView:
    """Staged neighborhood of a center dossier.

    STAR: first-order neighbors, edges touching the center only. CROSS:
    same nodes plus the edges among them. SECOND: everything within two
    steps and all edges among those nodes.
    """
    graph = _coerce_graph(source)
    if center not in graph.dossiers:
        raise UnknownDossier(center)
    if stage is Stage.SECOND:
        node_ids = _bfs(graph.adjacency, center, 2)
    else:
        node_ids = _bfs(graph.adjacency, center, 1)
    if stage is Stage.STAR:
        edges = [e for e in graph.edges if center in (e.from_id, e.to_id)]
    else:
        edges = [
            e for e in graph.edges if e.from_id in node_ids and e.to_id in node_ids
        ]
    nodes = tuple(sorted((graph.dossiers[i] for i in node_ids), key=lambda d: d.id))
    return GraphView(
        center=center,
        stage=stage,
        nodes=nodes,
        edges=tuple(edges),
        node_filter=ALL_COLLECTIONS,
        edge_filter=ALL_TYPES,
    )


def filter_view(
    view: GraphView,
    node_filter: Iterable[Collection],
    edge_filter: Iterable[ConnectionType],
) -> GraphView:
    """Induced subgraph of the view: kept nodes (center always survives)
    and the edges whose endpoints survive and whose lead type is kept."""
    node_filter = frozenset(node_filter)
    edge_filter = frozenset(edge_filter)
    nodes = tuple(
        d for d in view.nodes if d.id == view.center or d.collection in node_filter
    )
    ids = {d.id for d in nodes}
    edges = tuple(
        e
        for e in view.edges
        if e.from_id in ids and e.to_id in ids and e.lead_type in edge_filter
    )
    return replace(
        view, nodes=nodes, edges=edges, node_filter=node_filter, edge_filter=edge_filter
    )


def indegree_ranking(
    source: Union[DossierGraph, ReadSnapshot], k: int
) -> list[tuple[str, int]]:
    """Top-k dossiers by incoming directed edges, ties by ascending id."""
    graph = _coerce_graph(source)
    indegree = {d: 0 for d in graph.dossiers}
    for edge in graph.edges:
        if edge.directed:
            indegree[edge.to_id] += 1
    ranked = sorted(indegree.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:k]


# --- export -----------------------------------------------------------------------------


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def export_view(view: GraphView, format: ExportFormat = ExportFormat.GRAPH_JSON) -> str:
    """Serialize a view deterministically (sorted nodes and edges)."""
    nodes = sorted(view.nodes, key=lambda d: d.id)
    edges = sorted(view.edges, key=lambda e: (e.from_id, e.to_id))
    if format is ExportFormat.DOT:
        lines = ["digraph citations {"]
        for d in nodes:
            lines.append(
                f'  "{_dot_escape(d.id)}" [label="{_dot_escape(d.label)}", '
                f'class="{d.collection.value}"];'
            )
        for e in edges:
            attrs = f'lead_type="{e.lead_type.value}"'
            if not e.directed:
                attrs += ", dir=none"
            lines.append(
                f'  "{_dot_escape(e.from_id)}" -> "{_dot_escape(e.to_id)}" [{attrs}];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"

    payload = {
        "center": view.center,
        "stage": view.stage.value,
        "nodes": [
            {
                "id": d.id,
                "label": d.label,
                "collection": d.collection.value,
                "lead": d.lead,
                "members": list(d.members),
            }
            for d in nodes
        ],
        "edges": [
            {
                "from": e.from_id,
                "to": e.to_id,
                "lead_type": e.lead_type.value,
                "directed": e.directed,
                "constituents": [{"type": c[0].value} for c in e.constituents],
            }
            for e in edges
        ],
    }
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
