// One shared color scale for every map view. Two keypoints, straight RGB
// interpolation between them; the midpoint is a muted purple, never white,
// so near-zero expectations stay visible against the page background.

interface Rgb {
  r: number;
  g: number;
  b: number;
}

export const NEG_COLOR: Rgb = { r: 37, g: 99, b: 235 }; // label/value -1
export const POS_COLOR: Rgb = { r: 220, g: 38, b: 38 }; // label/value +1

export const LOSS_COLOR = "rgb(37, 99, 235)";
export const ACCURACY_COLOR = "rgb(249, 115, 22)";

function lerp(a: number, b: number, t: number): number {
  return Math.round(a + (b - a) * t);
}

/** Map an expectation value in [-1, 1] to a CSS color. Out-of-range clamps. */
export function valueToColor(value: number): string {
  const v = Math.max(-1, Math.min(1, value));
  const t = (v + 1) / 2;
  const r = lerp(NEG_COLOR.r, POS_COLOR.r, t);
  const g = lerp(NEG_COLOR.g, POS_COLOR.g, t);
  const b = lerp(NEG_COLOR.b, POS_COLOR.b, t);
  return `rgb(${r}, ${g}, ${b})`;
}

/** Solid class color for a +1/-1 label, matching the scale endpoints. */
export function labelColor(label: number): string {
  const c = label > 0 ? POS_COLOR : NEG_COLOR;
  return `rgb(${c.r}, ${c.g}, ${c.b})`;
}
