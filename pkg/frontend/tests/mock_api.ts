// Replays captured service responses keyed by the removed-id set, so the
// mock answers exactly what the real service answered for the same state.
import { readFileSync } from 'node:fs';

import { ApiError } from '../src/api.js';
import type { SessionApi } from '../src/explorer.js';
import type {
  CutRequest,
  GammaResponse,
  GraphResponse,
  PartitionResponse,
  ProjectionResponse,
  SessionSummary,
} from '../src/types.js';

export function loadFixture<T = Record<string, unknown>>(name: string): T {
  const url = new URL(`../../tests/fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, 'utf-8')) as T;
}

function key(ids: Iterable<number>): string {
  return JSON.stringify([...ids].sort((a, b) => a - b));
}

export class MockApi implements SessionApi {
  private removed = new Set<number>();
  private partitions = new Map<string, PartitionResponse>();
  failNextCut: string | null = null;
  cutLog: CutRequest[] = [];

  constructor(
    private readonly summary: SessionSummary,
    private readonly graph: GraphResponse,
    partitions: PartitionResponse[],
    private readonly gamma: GammaResponse,
    private readonly projection: ProjectionResponse | null,
    private readonly autoPartition: PartitionResponse | null = null,
  ) {
    for (const partition of partitions) {
      this.partitions.set(key(partition.removed), partition);
    }
    if (autoPartition) {
      this.partitions.set(key(autoPartition.removed), autoPartition);
    }
  }

  private partitionFor(ids: Set<number>): PartitionResponse {
    const hit = this.partitions.get(key(ids));
    if (!hit) {
      throw new ApiError(400, 'invalid_input', `no captured partition for ${key(ids)}`);
    }
    return hit;
  }

  async getSummary(): Promise<SessionSummary> {
    return this.summary;
  }

  async getGraph(): Promise<GraphResponse> {
    return { ...this.graph, removed: [...this.removed] };
  }

  async getPartition(): Promise<PartitionResponse> {
    return this.partitionFor(this.removed);
  }

  async getProjection(): Promise<ProjectionResponse> {
    if (!this.projection) {
      throw new ApiError(409, 'unsupported_mode', 'no raw features');
    }
    return this.projection;
  }

  async getGamma(): Promise<GammaResponse> {
    return this.gamma;
  }

  async postCut(_sessionId: string, cut: CutRequest): Promise<PartitionResponse> {
    this.cutLog.push(cut);
    if (this.failNextCut) {
      const message = this.failNextCut;
      this.failNextCut = null;
      throw new ApiError(400, 'invalid_input', message);
    }
    const target = new Set(this.removed);
    if (cut.mode === 'toggle') {
      if (target.has(cut.id)) target.delete(cut.id);
      else target.add(cut.id);
    } else if (cut.mode === 'set') {
      target.clear();
      for (const id of cut.ids) target.add(id);
    } else if (cut.mode === 'topk') {
      target.clear();
      const ranked = this.graph.connections
        .filter((c) => !c.redundant)
        .sort((a, b) => b.torque - a.torque || a.id - b.id);
      for (const c of ranked.slice(0, cut.k - 1)) target.add(c.id);
    } else {
      if (!this.autoPartition) {
        throw new ApiError(400, 'invalid_input', 'auto not captured in mock');
      }
      this.removed = new Set(this.autoPartition.removed);
      return this.autoPartition;
    }
    const partition = this.partitionFor(target);
    this.removed = new Set(partition.removed);
    return partition;
  }
}
