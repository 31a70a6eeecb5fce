// Grid views are plain CSS grids of square cells: gap 0, aspect-ratio 1/1,
// so any resolution tiles without seams.

import { labelColor, valueToColor } from "./palette.js";

export type HeatmapMode = "expectation" | "labels";

export function renderHeatmap(container: HTMLElement, rows: number[][], mode: HeatmapMode): void {
  container.textContent = "";
  if (rows.length === 0 || rows.every((r) => r.length === 0)) {
    const placeholder = document.createElement("div");
    placeholder.className = "heatmap-empty";
    placeholder.textContent = "no grid data";
    container.appendChild(placeholder);
    return;
  }
  const resolution = rows.length;
  const grid = document.createElement("div");
  grid.className = "heatmap";
  grid.style.display = "grid";
  grid.style.gap = "0";
  grid.style.gridTemplateColumns = `repeat(${resolution}, 1fr)`;
  for (const row of rows) {
    for (const value of row) {
      const cell = document.createElement("div");
      cell.className = "heatmap-cell";
      cell.style.aspectRatio = "1 / 1";
      cell.style.background = mode === "labels" ? labelColor(value) : valueToColor(value);
      grid.appendChild(cell);
    }
  }
  container.appendChild(grid);
}

/** Reshape a flat row-major list (as epoch events carry) into grid rows. */
export function flatToRows(flat: number[], resolution: number): number[][] {
  const rows: number[][] = [];
  for (let r = 0; r < resolution; r++) {
    rows.push(flat.slice(r * resolution, (r + 1) * resolution));
  }
  return rows;
}

/** Probabilities in [0, 1] shown through the same scale as expectations. */
export function probabilityToExpectation(rows: number[][]): number[][] {
  return rows.map((row) => row.map((p) => 2 * p - 1));
}
