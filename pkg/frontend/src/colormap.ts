/**
 * Deterministic diverging colormap for signed log-scale fields, plus a
 * sequential map for nonnegative fields.  Fixed anchor tables, linear
 * interpolation; no runtime dependencies.
 */

type Rgb = [number, number, number];

// blue -> white -> red, centered on zero (sub- vs super-Poissonian)
const DIVERGING: Rgb[] = [
  [33, 53, 135],
  [70, 112, 190],
  [140, 176, 222],
  [214, 229, 240],
  [247, 247, 247],
  [244, 216, 196],
  [227, 148, 118],
  [188, 75, 64],
  [128, 15, 38],
];

// dark -> bright sequential (for contrast in [0, 1])
const SEQUENTIAL: Rgb[] = [
  [13, 8, 135],
  [84, 2, 163],
  [139, 10, 165],
  [185, 50, 137],
  [219, 92, 104],
  [244, 136, 73],
  [254, 188, 43],
  [240, 249, 33],
];

function sample(table: Rgb[], t: number): Rgb {
  const clamped = Math.min(1, Math.max(0, t));
  const x = clamped * (table.length - 1);
  const i = Math.min(table.length - 2, Math.floor(x));
  const frac = x - i;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * frac);
  return [
    mix(table[i][0], table[i + 1][0]),
    mix(table[i][1], table[i + 1][1]),
    mix(table[i][2], table[i + 1][2]),
  ];
}

function toHex([r, g, b]: Rgb): string {
  const h = (v: number) => v.toString(16).padStart(2, "0");
  return `#${h(r)}${h(g)}${h(b)}`;
}

/** Map value in [lo, hi] onto the diverging palette (midpoint at (lo+hi)/2). */
export function diverging(value: number, lo: number, hi: number): string {
  if (!Number.isFinite(value)) {
    return "#bbbbbb";
  }
  return toHex(sample(DIVERGING, (value - lo) / (hi - lo)));
}

/** Map value in [lo, hi] onto the sequential palette. */
export function sequential(value: number, lo: number, hi: number): string {
  if (!Number.isFinite(value)) {
    return "#bbbbbb";
  }
  return toHex(sample(SEQUENTIAL, (value - lo) / (hi - lo)));
}
