// State comparison scatter: one SVG circle per grid cell in principal
// coordinates, filled with its class color.

import { labelColor } from "./palette.js";
import type { ComparisonPoint } from "./types.js";

const SIZE = 100;
const PAD = 6;

export function renderScatter(container: HTMLElement, points: ComparisonPoint[]): void {
  container.textContent = "";
  if (points.length === 0) {
    const placeholder = document.createElement("div");
    placeholder.className = "heatmap-empty";
    placeholder.textContent = "no points";
    container.appendChild(placeholder);
    return;
  }
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(...ys);
  const yMax = Math.max(...ys);
  const xSpan = xMax - xMin || 1;
  const ySpan = yMax - yMin || 1;

  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
  svg.setAttribute("class", "comparison-scatter");
  for (const point of points) {
    const circle = document.createElementNS("http://www.w3.org/2000/svg", "circle");
    const cx = PAD + ((point.x - xMin) / xSpan) * (SIZE - 2 * PAD);
    // flip y so the first principal axis reads bottom-up like a plot
    const cy = SIZE - PAD - ((point.y - yMin) / ySpan) * (SIZE - 2 * PAD);
    circle.setAttribute("cx", cx.toFixed(2));
    circle.setAttribute("cy", cy.toFixed(2));
    circle.setAttribute("r", "1.1");
    circle.setAttribute("fill", labelColor(point.label));
    circle.setAttribute("fill-opacity", "0.75");
    circle.setAttribute("class", "comparison-point");
    svg.appendChild(circle);
  }
  container.appendChild(svg);
}
