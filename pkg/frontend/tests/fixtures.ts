/** Graph payload fixtures shaped like the API's GRAPH_JSON and a fake
 * fetch that serves them keyed on the request URL. */

import type { FetchLike } from "../src/api.js";
import type { GraphEdge, GraphNode, GraphPayload, StageName } from "../src/types.js";

export function node(id: string, collection = "EU_LEGISLATION"): GraphNode {
  return { id, label: `label ${id}`, collection, lead: id, members: [id] };
}

export function edge(from: string, to: string, leadType = "CITES"): GraphEdge {
  return {
    from,
    to,
    lead_type: leadType,
    directed: leadType !== "RELATED",
    constituents: [{ type: leadType }],
  };
}

export const CENTER = "32016L0001";

const star: GraphPayload = {
  center: CENTER,
  stage: "STAR",
  nodes: [
    node(CENTER),
    node("12016M0007", "EU_TREATY"),
    node("32016R0100"),
    node("62016CJ0018", "EU_CASELAW"),
    node("82016HA0001", "HU_AB"),
  ],
  edges: [
    edge(CENTER, "12016M0007", "LEGAL_BASIS"),
    edge("62016CJ0018", CENTER, "ANNULS"),
    edge("82016HA0001", CENTER),
    edge(CENTER, "32016R0100"),
  ],
};

const cross: GraphPayload = {
  ...star,
  stage: "CROSS",
  edges: [...star.edges, edge("62016CJ0018", "32016R0100")],
};

const second: GraphPayload = {
  ...cross,
  stage: "SECOND",
  nodes: [...cross.nodes, node("32010L0010"), node("62012CJ0293", "EU_CASELAW")],
  edges: [
    ...cross.edges,
    edge("32016R0100", "32010L0010"),
    edge("62012CJ0293", "82016HA0001"),
  ],
};

/** The regulation-only filter: the server-side induced subgraph. */
const secondLegislationOnly: GraphPayload = {
  center: CENTER,
  stage: "SECOND",
  nodes: [node(CENTER), node("32016R0100"), node("32010L0010")],
  edges: [edge(CENTER, "32016R0100"), edge("32016R0100", "32010L0010")],
};

export function payloadFor(stage: StageName, collections: string | null): GraphPayload {
  if (collections === "EU_LEGISLATION" && stage === "SECOND") {
    return secondLegislationOnly;
  }
  if (stage === "STAR") return star;
  if (stage === "CROSS") return cross;
  return second;
}

export interface FakeBackend {
  fetch: FetchLike;
  requests: string[];
  delayFor(substring: string, ms: number): void;
}

export function fakeBackend(): FakeBackend {
  const requests: string[] = [];
  const delays = new Map<string, number>();
  const fetchFn: FetchLike = async (url) => {
    requests.push(url);
    for (const [substring, ms] of delays) {
      if (url.includes(substring)) {
        await new Promise((resolve) => setTimeout(resolve, ms));
      }
    }
    const parsed = new URL(url, "http://test");
    if (parsed.pathname.startsWith("/graph/")) {
      const center = decodeURIComponent(parsed.pathname.replace("/graph/", ""));
      if (center !== CENTER) {
        return { ok: false, status: 404, text: async () => "{}" };
      }
      const stage = (parsed.searchParams.get("stage") ?? "star").toUpperCase() as StageName;
      const collections = parsed.searchParams.get("collections");
      const payload = payloadFor(stage, collections);
      return { ok: true, status: 200, text: async () => JSON.stringify(payload) };
    }
    if (parsed.pathname.startsWith("/documents/") && parsed.pathname.endsWith("/decorated")) {
      const markup =
        'A <a href="/documents/32016R0100">100/2016</a> rendelet és ' +
        '<span class="missing">1999/5</span> irányelv.';
      return { ok: true, status: 200, text: async () => markup };
    }
    return { ok: false, status: 404, text: async () => "not found" };
  };
  return {
    fetch: fetchFn,
    requests,
    delayFor: (substring, ms) => delays.set(substring, ms),
  };
}
