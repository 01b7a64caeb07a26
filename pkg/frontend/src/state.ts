/** Explorer state: fully URL-encoded so any exploration is deep-linkable.
 *
 * Stage transitions only advance STAR -> CROSS -> SECOND for a fixed
 * center; re-centering resets to STAR with a concentric layout. A null
 * filter means "everything" and is omitted from the URL.
 */

import type { LayoutMode, StageName } from "./types.js";

export interface ExplorerState {
  center: string;
  stage: StageName;
  nodeFilter: string[] | null;
  edgeFilter: string[] | null;
  selectedNode: string | null;
  layoutMode: LayoutMode;
}

const STAGE_ORDER: StageName[] = ["STAR", "CROSS", "SECOND"];

export function initialState(center: string): ExplorerState {
  return {
    center,
    stage: "STAR",
    nodeFilter: null,
    edgeFilter: null,
    selectedNode: null,
    layoutMode: "CONCENTRIC",
  };
}

export function nextStage(stage: StageName): StageName | null {
  const index = STAGE_ORDER.indexOf(stage);
  return index < STAGE_ORDER.length - 1 ? STAGE_ORDER[index + 1] : null;
}

export function advanceStage(state: ExplorerState): ExplorerState | null {
  const stage = nextStage(state.stage);
  if (stage === null) {
    return null;
  }
  return {
    ...state,
    stage,
    layoutMode: stage === "SECOND" ? "FORCE" : state.layoutMode,
  };
}

export function recenter(state: ExplorerState, center: string): ExplorerState {
  return {
    ...state,
    center,
    stage: "STAR",
    layoutMode: "CONCENTRIC",
    selectedNode: null,
  };
}

export function withFilters(
  state: ExplorerState,
  nodeFilter: string[] | null,
  edgeFilter: string[] | null,
): ExplorerState {
  return {
    ...state,
    nodeFilter: nodeFilter === null ? null : [...nodeFilter].sort(),
    edgeFilter: edgeFilter === null ? null : [...edgeFilter].sort(),
  };
}

export function encodeState(state: ExplorerState): string {
  const params = new URLSearchParams();
  params.set("center", state.center);
  params.set("stage", state.stage.toLowerCase());
  if (state.nodeFilter !== null) {
    params.set("collections", [...state.nodeFilter].sort().join(","));
  }
  if (state.edgeFilter !== null) {
    params.set("edge_types", [...state.edgeFilter].sort().join(","));
  }
  if (state.selectedNode !== null) {
    params.set("selected", state.selectedNode);
  }
  params.set("layout", state.layoutMode.toLowerCase());
  return params.toString();
}

export function decodeState(query: string): ExplorerState {
  const params = new URLSearchParams(query);
  const center = params.get("center");
  if (!center) {
    throw new Error("explorer URL lacks a center");
  }
  const stageRaw = (params.get("stage") ?? "star").toUpperCase();
  if (!STAGE_ORDER.includes(stageRaw as StageName)) {
    throw new Error(`unknown stage in URL: ${stageRaw}`);
  }
  const splitList = (value: string | null): string[] | null =>
    value === null ? null : value.split(",").filter((s) => s.length > 0).sort();
  const layoutRaw = (params.get("layout") ?? "concentric").toUpperCase();
  return {
    center,
    stage: stageRaw as StageName,
    nodeFilter: splitList(params.get("collections")),
    edgeFilter: splitList(params.get("edge_types")),
    selectedNode: params.get("selected"),
    layoutMode: layoutRaw === "FORCE" ? "FORCE" : "CONCENTRIC",
  };
}
