// Typed client for the definition-store HTTP API (see docs/formats.md in
// the repository root). All endpoints are read-only JSON.

export interface DepthSummary {
  [column: string]: number;
}

export interface DagNode {
  id: string;
  label: string;
  symbol: string;
  book: string;
  kind: string;
  infix: boolean;
  arity: number;
  dependencies: string[];
  subtree_size: number;
  subtree_depth: number;
  depth_summary: DepthSummary;
}

export interface FrontierEntry {
  id: string;
  symbol: string;
  size: number;
  depth: number;
}

export interface DagResponse {
  root: string;
  radius: number;
  nodes: DagNode[];
  frontier: FrontierEntry[];
}

export interface DefinitionListing {
  id: string;
  label: string;
  symbol: string;
  kind: string;
  book: string;
}

export interface DefinitionDetail {
  id: string;
  label: string;
  symbol: string;
  kind: string;
  params: string[];
  role: string | null;
  pst_source: string;
  pst_latex: string;
  dzfc_latex: string;
  dzfc_json: unknown;
  dependencies: string[];
  dag: { size: number; depth: number };
  depth_summary: DepthSummary;
  nl?: string;
  nl_error?: string;
}

export class ApiClient {
  constructor(private readonly base: string) {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.base + path);
    if (!response.ok) {
      throw new ApiError(response.status, `${path}: ${response.statusText}`);
    }
    return (await response.json()) as T;
  }

  listDefinitions(): Promise<DefinitionListing[]> {
    return this.get("/definitions");
  }

  definition(id: string): Promise<DefinitionDetail> {
    return this.get(`/definitions/${encodeURIComponent(id)}`);
  }

  dag(id: string, radius = 1): Promise<DagResponse> {
    return this.get(`/dag/${encodeURIComponent(id)}?radius=${radius}`);
  }
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}
