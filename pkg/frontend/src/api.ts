/** Typed client for the lexgraph HTTP API; the explorer's only backend. */

import type { GraphPayload, StageName } from "./types.js";

export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  text(): Promise<string>;
}>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  graphUrl(
    center: string,
    stage: StageName,
    collections: string[] | null,
    edgeTypes: string[] | null,
  ): string {
    const params = new URLSearchParams();
    params.set("stage", stage.toLowerCase());
    if (collections !== null) {
      params.set("collections", [...collections].sort().join(","));
    }
    if (edgeTypes !== null) {
      params.set("edge_types", [...edgeTypes].sort().join(","));
    }
    return `${this.baseUrl}/graph/${encodeURIComponent(center)}?${params.toString()}`;
  }

  async graph(
    center: string,
    stage: StageName,
    collections: string[] | null = null,
    edgeTypes: string[] | null = null,
  ): Promise<GraphPayload> {
    const response = await this.fetchFn(
      this.graphUrl(center, stage, collections, edgeTypes),
    );
    if (!response.ok) {
      throw new ApiError(response.status, `graph request failed (${response.status})`);
    }
    return JSON.parse(await response.text()) as GraphPayload;
  }

  async decorated(celex: string): Promise<string> {
    const response = await this.fetchFn(
      `${this.baseUrl}/documents/${encodeURIComponent(celex)}/decorated`,
    );
    if (!response.ok) {
      throw new ApiError(response.status, `document request failed (${response.status})`);
    }
    return response.text();
  }
}
