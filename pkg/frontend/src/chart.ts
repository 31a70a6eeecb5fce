// Performance chart: training loss in blue on its own scale, accuracy in
// orange on a fixed [0, 1] scale. Redrawn from the full record list on every
// update, so it always equals the received epoch events exactly.

import { ACCURACY_COLOR, LOSS_COLOR } from "./palette.js";
import type { EpochEvent } from "./types.js";

const W = 320;
const H = 160;
const PAD = 22;

function polyline(values: number[], yMax: number, color: string, cssClass: string): SVGElement {
  const line = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
  const span = values.length > 1 ? values.length - 1 : 1;
  const pts = values
    .map((v, i) => {
      const x = PAD + (i / span) * (W - 2 * PAD);
      const y = H - PAD - (v / (yMax || 1)) * (H - 2 * PAD);
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");
  line.setAttribute("points", pts);
  line.setAttribute("fill", "none");
  line.setAttribute("stroke", color);
  line.setAttribute("stroke-width", "1.5");
  line.setAttribute("class", cssClass);
  return line;
}

export function renderChart(container: HTMLElement, records: EpochEvent[]): void {
  container.textContent = "";
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
  svg.setAttribute("class", "performance-chart");

  const axis = document.createElementNS("http://www.w3.org/2000/svg", "path");
  axis.setAttribute("d", `M ${PAD} ${PAD} V ${H - PAD} H ${W - PAD}`);
  axis.setAttribute("fill", "none");
  axis.setAttribute("stroke", "#9ca3af");
  axis.setAttribute("stroke-width", "1");
  svg.appendChild(axis);

  if (records.length > 0) {
    const losses = records.map((r) => r.loss);
    const lossMax = Math.max(...losses);
    svg.appendChild(polyline(losses, lossMax, LOSS_COLOR, "loss-line"));
    svg.appendChild(polyline(records.map((r) => r.accuracy), 1, ACCURACY_COLOR, "accuracy-line"));
  }
  container.appendChild(svg);

  const caption = document.createElement("div");
  caption.className = "chart-caption";
  caption.textContent =
    records.length > 0
      ? `epoch ${records.length}: loss ${records[records.length - 1].loss.toFixed(4)}, ` +
        `accuracy ${records[records.length - 1].accuracy.toFixed(4)}`
      : "no epochs yet";
  container.appendChild(caption);
}
