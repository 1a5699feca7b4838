/**
 * Minimal deterministic SVG document builder: fixed canvas, plot frame with
 * linear axes, and a handful of primitives.  Coordinates are emitted with
 * two decimals so identical inputs yield identical bytes.
 */

const fmt = (x: number): string => x.toFixed(2);

export interface Frame {
  x0: number;
  y0: number;
  width: number;
  height: number;
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export class Svg {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {}

  raw(element: string): void {
    this.parts.push(element);
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, style: string): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${style}/>`,
    );
  }

  polyline(points: Array<[number, number]>, style: string): void {
    const coords = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polyline points="${coords}" fill="none" ${style}/>`);
  }

  text(x: number, y: number, content: string, style = ""): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-family="sans-serif" ${style}>${escapeXml(content)}</text>`,
    );
  }

  toString(): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">`,
      `<rect x="0" y="0" width="${this.width}" height="${this.height}" fill="white"/>`,
      ...this.parts,
      "</svg>",
    ].join("\n");
  }
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

export function frameTransform(frame: Frame) {
  const sx = frame.width / (frame.xMax - frame.xMin);
  const sy = frame.height / (frame.yMax - frame.yMin);
  return {
    x: (v: number) => frame.x0 + (v - frame.xMin) * sx,
    y: (v: number) => frame.y0 + frame.height - (v - frame.yMin) * sy,
  };
}

function niceTicks(lo: number, hi: number, target = 6): number[] {
  const span = hi - lo;
  if (!(span > 0) || !Number.isFinite(span)) {
    return [lo];
  }
  const rawStep = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    if (mag * mult >= rawStep) {
      step = mag * mult;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

const tickLabel = (v: number): string =>
  Math.abs(v) >= 1000 || (v !== 0 && Math.abs(v) < 0.01) ? v.toExponential(1) : String(Number(v.toPrecision(10)));

export function drawFrame(svg: Svg, frame: Frame, xLabel: string, yLabel: string): void {
  const { x, y } = frameTransform(frame);
  const axisStyle = 'stroke="black" stroke-width="1"';
  svg.line(frame.x0, frame.y0, frame.x0, frame.y0 + frame.height, axisStyle);
  svg.line(
    frame.x0, frame.y0 + frame.height,
    frame.x0 + frame.width, frame.y0 + frame.height,
    axisStyle,
  );
  for (const tick of niceTicks(frame.xMin, frame.xMax)) {
    const px = x(tick);
    svg.line(px, frame.y0 + frame.height, px, frame.y0 + frame.height + 4, axisStyle);
    svg.text(px, frame.y0 + frame.height + 16, tickLabel(tick),
             'font-size="10" text-anchor="middle"');
  }
  for (const tick of niceTicks(frame.yMin, frame.yMax)) {
    const py = y(tick);
    svg.line(frame.x0 - 4, py, frame.x0, py, axisStyle);
    svg.text(frame.x0 - 6, py + 3, tickLabel(tick), 'font-size="10" text-anchor="end"');
  }
  svg.text(frame.x0 + frame.width / 2, frame.y0 + frame.height + 32, xLabel,
           'font-size="12" text-anchor="middle"');
  svg.raw(
    `<text x="${fmt(frame.x0 - 40)}" y="${fmt(frame.y0 + frame.height / 2)}" ` +
    `font-family="sans-serif" font-size="12" text-anchor="middle" ` +
    `transform="rotate(-90 ${fmt(frame.x0 - 40)} ${fmt(frame.y0 + frame.height / 2)})">` +
    `${escapeXml(yLabel)}</text>`,
  );
}
