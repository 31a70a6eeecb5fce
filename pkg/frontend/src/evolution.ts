// Per-gate evolution of the encoded state. One group per step (the initial
// frame plus one per gate), each with three rows: expectation, Pr(|0>),
// Pr(|1>) on qubit 0. Up to 5 steps all groups render side by side; longer
// encoders get a step slider instead.

import { probabilityToExpectation, renderHeatmap } from "./heatmap.js";
import type { EvolutionFrame } from "./types.js";

const INLINE_LIMIT = 5;

function renderGroup(frame: EvolutionFrame): HTMLElement {
  const group = document.createElement("div");
  group.className = "evolution-step";

  const title = document.createElement("div");
  title.className = "evolution-step-title";
  title.textContent = frame.step_index === 0 ? "initial" : `${frame.step_index}. ${frame.gate_label}`;
  group.appendChild(title);

  const rows: Array<[string, number[][]]> = [
    ["expectation", frame.expectation.values],
    ["Pr(|0>)", probabilityToExpectation(frame.prob0)],
    ["Pr(|1>)", probabilityToExpectation(frame.prob1)],
  ];
  for (const [label, values] of rows) {
    const caption = document.createElement("div");
    caption.className = "evolution-row-label";
    caption.textContent = label;
    group.appendChild(caption);
    const map = document.createElement("div");
    map.className = "evolution-map";
    renderHeatmap(map, values, "expectation");
    group.appendChild(map);
  }
  return group;
}

export function renderEvolution(
  container: HTMLElement,
  frames: EvolutionFrame[],
  activeStep: number,
  onStep: (step: number) => void,
): void {
  container.textContent = "";
  if (frames.length === 0) {
    const placeholder = document.createElement("div");
    placeholder.className = "heatmap-empty";
    placeholder.textContent = "no evolution frames";
    container.appendChild(placeholder);
    return;
  }

  if (frames.length <= INLINE_LIMIT) {
    const strip = document.createElement("div");
    strip.className = "evolution-strip";
    for (const frame of frames) strip.appendChild(renderGroup(frame));
    container.appendChild(strip);
    return;
  }

  const step = Math.max(0, Math.min(activeStep, frames.length - 1));
  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "0";
  slider.max = String(frames.length - 1);
  slider.value = String(step);
  slider.className = "evolution-slider";
  slider.addEventListener("input", () => onStep(Number(slider.value)));
  container.appendChild(slider);

  const sliderLabel = document.createElement("div");
  sliderLabel.className = "evolution-slider-label";
  sliderLabel.textContent = `step ${step} of ${frames.length - 1}`;
  container.appendChild(sliderLabel);

  const strip = document.createElement("div");
  strip.className = "evolution-strip";
  strip.appendChild(renderGroup(frames[step]));
  container.appendChild(strip);
}
