// The decision-graph explorer: one session, three cut tabs, two scatters.
//
// Every view is redrawn from the most recent server responses only. Cuts go
// through a single-flight queue so a burst of clicks serializes into ordered
// requests, and a rejected mutation reverts to the server's last good state.

import { ApiError } from './api.js';
import {
  CutTab,
  ScaleMode,
  distinctColors,
  gammaBarHeights,
  partitionLayout,
  scatterLayout,
} from './state.js';
import type {
  ConnectionRecord,
  CutRequest,
  GammaResponse,
  GraphResponse,
  PartitionResponse,
  ProjectionResponse,
  SessionSummary,
} from './types.js';

/** The slice of the HTTP client the explorer needs; tests substitute mocks. */
export interface SessionApi {
  getSummary(sessionId: string): Promise<SessionSummary>;
  getGraph(sessionId: string): Promise<GraphResponse>;
  getPartition(sessionId: string): Promise<PartitionResponse>;
  getProjection(sessionId: string): Promise<ProjectionResponse>;
  getGamma(sessionId: string): Promise<GammaResponse>;
  postCut(sessionId: string, cut: CutRequest): Promise<PartitionResponse>;
}

const SVG_NS = 'http://www.w3.org/2000/svg';
const GRAPH_W = 520;
const GRAPH_H = 360;
const PARTITION_W = 420;
const PARTITION_H = 360;
const GAMMA_BARS = 40;
const GAMMA_H = 120;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class ExplorerApp {
  readonly root: HTMLElement;
  private summary: SessionSummary | null = null;
  private graph: GraphResponse | null = null;
  private partition: PartitionResponse | null = null;
  private projection: ProjectionResponse | null = null;
  private gamma: GammaResponse | null = null;
  private scale: ScaleMode = 'linear';
  private tab: CutTab = 'manual';
  private queue: Promise<void> = Promise.resolve();

  private kReadout!: HTMLElement;
  private toast!: HTMLElement;
  private hoverDetail!: HTMLElement;
  private graphSvg!: SVGSVGElement;
  private partitionSvg!: SVGSVGElement;
  private gammaDiv!: HTMLElement;
  private emptyState!: HTMLElement;
  private topkInput!: HTMLInputElement;

  constructor(private readonly api: SessionApi, container: HTMLElement) {
    this.root = container;
    this.buildSkeleton();
  }

  /** Resolves once every queued mutation has been processed. */
  flush(): Promise<void> {
    return this.queue;
  }

  async load(sessionId: string): Promise<void> {
    this.summary = await this.api.getSummary(sessionId);
    this.graph = await this.api.getGraph(sessionId);
    this.partition = await this.api.getPartition(sessionId);
    this.gamma = await this.api.getGamma(sessionId);
    this.projection = this.summary.projection_available
      ? await this.api.getProjection(sessionId)
      : null;
    this.render();
  }

  get currentK(): number | null {
    return this.partition ? this.partition.k : null;
  }

  get removedSet(): Set<number> {
    return new Set(this.partition ? this.partition.removed : this.summary?.removed ?? []);
  }

  /** Queue a cut; at most one request is in flight at a time. */
  applyCut(cut: CutRequest): Promise<void> {
    const run = async () => {
      if (!this.summary) return;
      try {
        this.partition = await this.api.postCut(this.summary.session_id, cut);
        for (const warning of this.partition.warnings) this.showToast(warning);
      } catch (error) {
        // selection stays whatever the server last confirmed
        const message = error instanceof ApiError ? error.message : String(error);
        this.showToast(message);
      }
      this.render();
    };
    this.queue = this.queue.then(run);
    return this.queue;
  }

  toggleConnection(id: number): Promise<void> {
    return this.applyCut({ mode: 'toggle', id });
  }

  setScale(scale: ScaleMode): void {
    this.scale = scale;
    this.render(); // view-only change; the selection set is untouched
  }

  setTab(tab: CutTab): void {
    this.tab = tab;
    this.render();
  }

  // --- rendering -----------------------------------------------------------

  private buildSkeleton(): void {
    this.root.textContent = '';
    const header = el('div', 'header');
    this.kReadout = el('span', 'k-readout', 'K=?');
    header.append(el('span', 'title', 'decision-graph explorer'), this.kReadout);

    const tabs = el('div', 'tabs');
    for (const tab of ['manual', 'auto', 'topk'] as CutTab[]) {
      const button = el('button', `tab tab-${tab}`, tab);
      button.addEventListener('click', () => {
        this.setTab(tab);
        if (tab === 'auto') void this.applyCut({ mode: 'auto' });
      });
      tabs.append(button);
    }
    this.topkInput = el('input', 'topk-input');
    this.topkInput.type = 'number';
    this.topkInput.min = '1';
    this.topkInput.value = '2';
    const topkApply = el('button', 'topk-apply', 'apply top-K');
    topkApply.addEventListener('click', () => {
      const k = parseInt(this.topkInput.value, 10);
      if (k >= 1) void this.applyCut({ mode: 'topk', k });
    });
    const scaleToggle = el('button', 'scale-toggle', 'log scale');
    scaleToggle.addEventListener('click', () => {
      this.setScale(this.scale === 'linear' ? 'log' : 'linear');
      scaleToggle.textContent = this.scale === 'linear' ? 'log scale' : 'linear scale';
    });
    tabs.append(this.topkInput, topkApply, scaleToggle);

    const panels = el('div', 'panels');
    this.graphSvg = document.createElementNS(SVG_NS, 'svg');
    this.graphSvg.setAttribute('class', 'decision-graph');
    this.graphSvg.setAttribute('viewBox', `0 0 ${GRAPH_W} ${GRAPH_H}`);
    this.partitionSvg = document.createElementNS(SVG_NS, 'svg');
    this.partitionSvg.setAttribute('class', 'partition-view');
    this.partitionSvg.setAttribute('viewBox', `0 0 ${PARTITION_W} ${PARTITION_H}`);
    panels.append(this.graphSvg, this.partitionSvg);

    this.emptyState = el('div', 'empty-state', 'no connections to show');
    this.emptyState.style.display = 'none';
    this.gammaDiv = el('div', 'gamma-panel');
    this.hoverDetail = el('div', 'hover-detail');
    this.toast = el('div', 'toast');

    this.root.append(header, tabs, panels, this.emptyState, this.gammaDiv,
                     this.hoverDetail, this.toast);
  }

  private render(): void {
    this.renderTabs();
    this.renderK();
    this.renderGraph();
    this.renderPartition();
    this.renderGamma();
  }

  private renderTabs(): void {
    for (const button of this.root.querySelectorAll('button.tab')) {
      button.classList.toggle('active',
        button.classList.contains(`tab-${this.tab}`));
    }
  }

  private renderK(): void {
    const k = this.currentK ?? this.summary?.k;
    this.kReadout.textContent = k === undefined || k === null ? 'K=?' : `K=${k}`;
  }

  private renderGraph(): void {
    this.graphSvg.textContent = '';
    const connections = this.graph?.connections ?? [];
    if (connections.length === 0) {
      this.emptyState.style.display = '';
      return;
    }
    this.emptyState.style.display = 'none';
    const removed = this.removedSet;
    const layout = scatterLayout(connections, removed, this.scale, GRAPH_W, GRAPH_H);
    const byId = new Map(connections.map((c) => [c.id, c]));
    for (const point of layout) {
      const circle = document.createElementNS(SVG_NS, 'circle');
      circle.setAttribute('cx', String(point.cx));
      circle.setAttribute('cy', String(point.cy));
      circle.setAttribute('r', point.removed ? '7' : '4'); // removed drawn bold
      const classes = ['connection'];
      if (point.removed) classes.push('removed');
      if (point.redundant) classes.push('redundant'); // dimmed via CSS
      circle.setAttribute('class', classes.join(' '));
      circle.setAttribute('data-id', String(point.id));
      circle.addEventListener('click', () => void this.toggleConnection(point.id));
      circle.addEventListener('mouseenter', () => this.showDetail(byId.get(point.id)!));
      this.graphSvg.append(circle);
    }
  }

  private renderPartition(): void {
    this.partitionSvg.textContent = '';
    if (!this.projection || !this.partition || !this.partition.labels) return;
    const layout = partitionLayout(
      this.projection.points, this.partition.labels, PARTITION_W, PARTITION_H);
    for (const point of layout) {
      const circle = document.createElementNS(SVG_NS, 'circle');
      circle.setAttribute('cx', String(point.cx));
      circle.setAttribute('cy', String(point.cy));
      circle.setAttribute('r', '3');
      circle.setAttribute('fill', point.color);
      circle.setAttribute('class', `sample label-${point.label}`);
      this.partitionSvg.append(circle);
    }
  }

  partitionColors(): Set<string> {
    if (!this.projection || !this.partition || !this.partition.labels) {
      return new Set();
    }
    return distinctColors(partitionLayout(
      this.projection.points, this.partition.labels, PARTITION_W, PARTITION_H));
  }

  private renderGamma(): void {
    this.gammaDiv.textContent = '';
    const ranking = this.gamma?.ranking ?? [];
    if (ranking.length === 0) {
      this.gammaDiv.style.display = 'none'; // hidden for empty sessions
      return;
    }
    this.gammaDiv.style.display = '';
    const bars = gammaBarHeights(ranking, GAMMA_BARS, GAMMA_H);
    for (const { entry, height } of bars) {
      const bar = el('div', 'gamma-bar');
      bar.style.height = `${height}px`;
      bar.title = `rank ${entry.rank}: torque ${entry.torque}`;
      bar.setAttribute('data-rank', String(entry.rank));
      // clicking rank r asks the server for a top-K cut with K = r + 1
      bar.addEventListener('click', () => void this.applyCut({
        mode: 'topk', k: entry.rank + 1,
      }));
      this.gammaDiv.append(bar);
    }
  }

  private showDetail(record: ConnectionRecord): void {
    this.hoverDetail.textContent =
      `#${record.id} round ${record.round}: masses ${record.from_mass}x${record.to_mass}` +
      ` (product ${record.mass_product}), squared distance ${record.square_distance}` +
      `, torque ${record.torque}${record.redundant ? ' [redundant]' : ''}`;
  }

  private showToast(message: string): void {
    this.toast.textContent = message;
    this.toast.classList.add('visible');
  }
}
