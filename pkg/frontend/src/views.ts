// Dashboard composition. Static views (original dataset, encoder map,
// evolution, comparison) refetch only when the selection changes; live views
// (trained map, performance chart) redraw on every store update. A failed
// fetch badges its own panel and leaves the rest of the dashboard alive.

import { Client } from "./api.js";
import { renderChart } from "./chart.js";
import { renderEvolution } from "./evolution.js";
import { flatToRows, renderHeatmap } from "./heatmap.js";
import { renderScatter } from "./scatter.js";
import { Store } from "./state.js";
import type { DatasetInfo, EvolutionDoc } from "./types.js";

export const MAP_RESOLUTION = 16;

function viewBody(root: ParentNode, id: string): HTMLElement {
  const body = root.querySelector<HTMLElement>(`#${id} .view-body`);
  if (!body) throw new Error(`missing view container #${id}`);
  return body;
}

function setBadge(root: ParentNode, id: string, message: string | null): void {
  const panel = root.querySelector<HTMLElement>(`#${id}`);
  if (!panel) return;
  let badge = panel.querySelector<HTMLElement>(".error-badge");
  if (message === null) {
    badge?.remove();
    return;
  }
  if (!badge) {
    badge = document.createElement("div");
    badge.className = "error-badge";
    panel.prepend(badge);
  }
  badge.textContent = message;
}

export class Dashboard {
  private root: ParentNode;
  private client: Client;
  private store: Store;
  private datasets = new Map<string, DatasetInfo>();
  private evolutionCache: { key: string; doc: EvolutionDoc } | null = null;
  private staticKey = "";

  constructor(root: ParentNode, client: Client, store: Store) {
    this.root = root;
    this.client = client;
    this.store = store;
    store.subscribe(() => {
      void this.renderStatic();
      this.renderLive();
    });
  }

  async start(): Promise<void> {
    const datasets = await this.client.getDatasets();
    for (const d of datasets) this.datasets.set(d.id, d);
    await this.renderStatic();
    this.renderLive();
  }

  datasetInfo(id: string): DatasetInfo | undefined {
    return this.datasets.get(id);
  }

  private async renderStatic(): Promise<void> {
    const { selectedDataset, selectedEncoder, activeEvolutionStep } = this.store.state;
    const key = `${selectedDataset}|${selectedEncoder}|${activeEvolutionStep}`;
    if (key === this.staticKey) return;
    this.staticKey = key;

    const dataset = this.datasets.get(selectedDataset);
    if (dataset) {
      renderHeatmap(
        viewBody(this.root, "view-original"),
        flatToRows(dataset.labels, dataset.resolution),
        "labels",
      );
      setBadge(this.root, "view-original", null);
    } else {
      setBadge(this.root, "view-original", `unknown dataset ${selectedDataset}`);
    }

    await Promise.all([
      this.renderEncoderMap(selectedEncoder),
      this.renderEvolutionView(selectedEncoder, activeEvolutionStep),
      this.renderComparison(selectedEncoder, selectedDataset),
    ]);
  }

  private async renderEncoderMap(encoder: string): Promise<void> {
    try {
      const doc = await this.client.getEncoderMap(encoder, MAP_RESOLUTION);
      renderHeatmap(viewBody(this.root, "view-encoder-map"), doc.values, "expectation");
      setBadge(this.root, "view-encoder-map", null);
    } catch {
      setBadge(this.root, "view-encoder-map", "encoder map unavailable");
    }
  }

  private async renderEvolutionView(encoder: string, activeStep: number): Promise<void> {
    try {
      if (this.evolutionCache?.key !== encoder) {
        this.evolutionCache = {
          key: encoder,
          doc: await this.client.getEvolution(encoder, MAP_RESOLUTION),
        };
      }
      renderEvolution(
        viewBody(this.root, "view-evolution"),
        this.evolutionCache.doc.frames,
        activeStep,
        (step) => this.store.update((s) => (s.activeEvolutionStep = step)),
      );
      setBadge(this.root, "view-evolution", null);
    } catch {
      setBadge(this.root, "view-evolution", "evolution unavailable");
    }
  }

  private async renderComparison(encoder: string, dataset: string): Promise<void> {
    try {
      const doc = await this.client.getComparison(encoder, dataset, MAP_RESOLUTION);
      renderScatter(viewBody(this.root, "view-comparison"), doc.points);
      setBadge(this.root, "view-comparison", null);
    } catch {
      setBadge(this.root, "view-comparison", "comparison map unavailable");
    }
  }

  private renderLive(): void {
    const session = this.store.state.session;
    const trainedBody = viewBody(this.root, "view-trained-map");
    const records = session?.records ?? [];
    if (records.length > 0) {
      const flat = records[records.length - 1].trained_map;
      const resolution = Math.round(Math.sqrt(flat.length));
      renderHeatmap(trainedBody, flatToRows(flat, resolution), "expectation");
    } else {
      renderHeatmap(trainedBody, [], "expectation");
    }
    renderChart(viewBody(this.root, "view-performance"), records);

    const status = this.root.querySelector<HTMLElement>("#session-status");
    if (status) {
      status.textContent = session
        ? `${session.runState} at epoch ${records.length}`
        : "no session";
    }
  }
}
