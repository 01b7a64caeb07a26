/** Explorer controller: state machine over the API, producing pure render
 * models (nodes with coordinates plus the untouched payload).
 *
 * The client never invents topology: everything rendered comes from the
 * most recent API payload; filtering happens server-side. Later user
 * actions supersede in-flight ones (stale responses are dropped).
 */

import { ApiClient } from "./api.js";
import { forceLayout, starLayout } from "./layout.js";
import {
  ExplorerState,
  advanceStage,
  initialState,
  recenter,
  withFilters,
} from "./state.js";
import type { GraphPayload, Point } from "./types.js";

export interface RenderModel {
  state: ExplorerState;
  payload: GraphPayload;
  positions: Map<string, Point>;
}

export interface DocumentPanel {
  celex: string;
  markup: string;
}

export class Explorer {
  private generation = 0;

  constructor(private api: ApiClient) {}

  private async fetchPayload(state: ExplorerState): Promise<GraphPayload> {
    return this.api.graph(state.center, state.stage, state.nodeFilter, state.edgeFilter);
  }

  /** Guard against out-of-order responses: only the newest action wins. */
  private begin(): number {
    this.generation += 1;
    return this.generation;
  }

  private fresh(token: number): boolean {
    return token === this.generation;
  }

  async load(state: ExplorerState, previous?: RenderModel): Promise<RenderModel> {
    const token = this.begin();
    const payload = await this.fetchPayload(state);
    if (!this.fresh(token)) {
      throw new StaleActionError();
    }
    const positions = this.layout(state, payload, previous);
    return { state, payload, positions };
  }

  async open(center: string): Promise<RenderModel> {
    return this.load(initialState(center));
  }

  /** STAR -> CROSS keeps every node where it is (edges only); CROSS ->
   * SECOND switches to the budgeted force layout seeded from the center. */
  async expand(model: RenderModel): Promise<RenderModel> {
    const next = advanceStage(model.state);
    if (next === null) {
      return model; // expansion control is disabled at SECOND
    }
    return this.load(next, model);
  }

  /** Re-fetch the same stage with new filters; the display equals the
   * server-filtered induced subgraph. */
  async applyFilters(
    model: RenderModel,
    nodeFilter: string[] | null,
    edgeFilter: string[] | null,
  ): Promise<RenderModel> {
    return this.load(withFilters(model.state, nodeFilter, edgeFilter), model);
  }

  /** Clicking a node opens its dossier's lead document. */
  async openDocument(model: RenderModel, nodeId: string): Promise<DocumentPanel> {
    const node = model.payload.nodes.find((n) => n.id === nodeId);
    if (node === undefined) {
      throw new Error(`node ${nodeId} is not in the current view`);
    }
    const markup = await this.api.decorated(node.lead);
    return { celex: node.lead, markup };
  }

  /** Clicking a resolved in-text reference re-centers at stage STAR. */
  async followReference(model: RenderModel, celex: string): Promise<RenderModel> {
    return this.load(recenter(model.state, celex));
  }

  private layout(
    state: ExplorerState,
    payload: GraphPayload,
    previous?: RenderModel,
  ): Map<string, Point> {
    if (state.layoutMode === "FORCE") {
      return forceLayout(payload, previous?.positions ?? new Map());
    }
    if (previous !== undefined && previous.state.center === state.center) {
      const kept = new Map<string, Point>();
      let allKnown = true;
      for (const node of payload.nodes) {
        const p = previous.positions.get(node.id);
        if (p === undefined) {
          allKnown = false;
          break;
        }
        kept.set(node.id, { x: p.x, y: p.y });
      }
      // same node set (stage advance to CROSS, or a filter that only
      // removed nodes): nothing moves
      if (allKnown) {
        return kept;
      }
    }
    return starLayout(payload);
  }
}

export class StaleActionError extends Error {
  constructor() {
    super("superseded by a later action");
  }
}
