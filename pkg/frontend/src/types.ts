/** Wire types of the graph endpoint (GRAPH_JSON schema). */

export type StageName = "STAR" | "CROSS" | "SECOND";

export type LayoutMode = "CONCENTRIC" | "FORCE";

export interface GraphNode {
  id: string;
  label: string;
  collection: string;
  lead: string;
  members: string[];
}

export interface GraphEdge {
  from: string;
  to: string;
  lead_type: string;
  directed: boolean;
  constituents: { type: string }[];
}

export interface GraphPayload {
  center: string;
  stage: StageName;
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface Point {
  x: number;
  y: number;
}
