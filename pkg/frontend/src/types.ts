// Wire types for the /v1 analysis API. Field names mirror the decision-graph
// file schema, so records from either source are interchangeable.

export interface ConnectionRecord {
  id: number;
  round: number;
  from_cluster: number;
  to_cluster: number;
  from_mass: number;
  to_mass: number;
  distance: number;
  mass_product: number;
  square_distance: number;
  torque: number;
  redundant: boolean;
  sample_a: number;
  sample_b: number;
}

export interface SessionSummary {
  session_id: string;
  n: number;
  d: number | null;
  k: number;
  removed: number[];
  rounds: number[];
  version: number;
  projection_available: boolean;
}

export interface GraphResponse {
  connections: ConnectionRecord[];
  removed: number[];
  rounds: number[];
  version: number;
}

export interface PartitionResponse {
  k: number;
  cluster_sizes: number[];
  labels: number[] | null;
  labels_path: string | null;
  removed: number[];
  version: number;
  warnings: string[];
}

export interface ProjectionResponse {
  points: [number, number][];
}

export interface GammaRankEntry {
  rank: number;
  id: number;
  torque: number;
  redundant: boolean;
}

export interface GammaResponse {
  ranking: GammaRankEntry[];
}

export type CutRequest =
  | { mode: 'auto' }
  | { mode: 'topk'; k: number }
  | { mode: 'toggle'; id: number }
  | { mode: 'set'; ids: number[] };

export interface ApiErrorBody {
  code: string;
  message: string;
}
