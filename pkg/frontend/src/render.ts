/**
 * Figure renderers: deterministic SVG from the simulator's CSV files.
 *
 * Numeric values are never transformed beyond choosing plot coordinates;
 * the data placed on the canvas is exactly what the CSV holds, and
 * `plotData` exposes the consumed rows byte-for-byte for verification.
 */

import {
  AxisMeta,
  CsvFormatError,
  DataFile,
  axes,
  column,
  directions,
  plotData,
  requireColumns,
} from "./csv.js";
import { diverging, sequential } from "./colormap.js";
import { Segment, marchingSquares } from "./contour.js";
import { Frame, Svg, drawFrame, frameTransform } from "./svg.js";

export type FigureKind = "heatmap" | "slice" | "contrast" | "spectra";

export interface RenderOptions {
  kind: FigureKind;
  /** Value column for heatmaps (default log10_g2). */
  column?: string;
  /** Direction row offset for heatmaps on two-direction files. */
  direction?: number;
}

export interface RenderResult {
  svg: string;
  /** Number of unity-contour segments drawn (heatmaps only). */
  contourSegments: number;
  /** The numeric rows consumed, byte-equal to the CSV body. */
  plotData: string;
}

const SWEEP_COLUMNS = [
  "delta", "gamma_diss", "theta", "g2", "log10_g2", "occupation",
  "contrast", "residual",
];

const AXIS_LABELS: Record<string, string> = {
  delta: "Δ/2π (MHz)",
  gamma_diss: "Γ/2π (MHz)",
  xi: "drive strength",
  theta: "port phase (rad)",
};

const CANVAS_W = 640;
const CANVAS_H = 480;
const MARGIN = { left: 70, right: 30, top: 40, bottom: 60 };

function plotFrame(xMin: number, xMax: number, yMin: number, yMax: number): Frame {
  return {
    x0: MARGIN.left,
    y0: MARGIN.top,
    width: CANVAS_W - MARGIN.left - MARGIN.right,
    height: CANVAS_H - MARGIN.top - MARGIN.bottom,
    xMin, xMax, yMin, yMax,
  };
}

function finiteRange(values: number[]): [number, number] {
  const finite = values.filter(Number.isFinite);
  if (finite.length === 0) {
    throw new CsvFormatError("no finite values to plot");
  }
  return [Math.min(...finite), Math.max(...finite)];
}

const CURVE_COLORS = ["#c62828", "#1565c0", "#616161", "#2e7d32", "#6a1b9a", "#ef6c00"];

function title(svg: Svg, text: string): void {
  svg.text(CANVAS_W / 2, 20, text, 'font-size="13" text-anchor="middle"');
}

// ---------------------------------------------------------------- heatmap

function gridFromSweep(
  file: DataFile,
  valueColumn: string,
  direction: number,
): { grid: number[][]; ax: AxisMeta[]; dirCount: number } {
  requireColumns(file, SWEEP_COLUMNS, "heatmap");
  const ax = axes(file);
  if (ax.length !== 2) {
    throw new CsvFormatError(`heatmap needs a two-axis sweep, file has ${ax.length}`);
  }
  const dirCount = Math.max(1, directions(file).length);
  if (direction >= dirCount) {
    throw new CsvFormatError(`file has ${dirCount} directions, asked for index ${direction}`);
  }
  const [rowsAxis, colsAxis] = ax;
  if (rowsAxis.count < 2 || colsAxis.count < 2) {
    throw new CsvFormatError("heatmap grid must be at least 2x2");
  }
  const values = column(file, valueColumn);
  const expected = rowsAxis.count * colsAxis.count * dirCount;
  if (values.length !== expected) {
    throw new CsvFormatError(
      `row count ${values.length} does not match the declared ${rowsAxis.count}x${colsAxis.count} grid`,
    );
  }
  const grid: number[][] = [];
  for (let r = 0; r < rowsAxis.count; r++) {
    const row: number[] = [];
    for (let c = 0; c < colsAxis.count; c++) {
      row.push(values[(r * colsAxis.count + c) * dirCount + direction]);
    }
    grid.push(row);
  }
  return { grid, ax, dirCount };
}

function axisCoordinate(axis: AxisMeta, index: number): number {
  if (axis.count === 1) {
    return axis.start;
  }
  return axis.start + ((axis.stop - axis.start) * index) / (axis.count - 1);
}

function renderHeatmap(file: DataFile, options: RenderOptions): RenderResult {
  const valueColumn = options.column ?? "log10_g2";
  const { grid, ax } = gridFromSweep(file, valueColumn, options.direction ?? 0);
  const [yAxis, xAxis] = ax;
  const frame = plotFrame(xAxis.start, xAxis.stop, yAxis.start, yAxis.stop);
  const svg = new Svg(CANVAS_W, CANVAS_H);
  const { x, y } = frameTransform(frame);

  const flat = grid.flat();
  let lo: number, hi: number;
  let paint: (v: number) => string;
  if (valueColumn === "contrast") {
    [lo, hi] = [0, 1];
    paint = (v) => sequential(v, lo, hi);
  } else {
    const [mn, mx] = finiteRange(flat);
    const extreme = Math.max(Math.abs(mn), Math.abs(mx), 1e-12);
    [lo, hi] = [-extreme, extreme]; // symmetric about the unity boundary
    paint = (v) => diverging(v, lo, hi);
  }

  const cellW = frame.width / (xAxis.count - 1);
  const cellH = frame.height / (yAxis.count - 1);
  for (let r = 0; r < yAxis.count; r++) {
    for (let c = 0; c < xAxis.count; c++) {
      const cx = x(axisCoordinate(xAxis, c));
      const cy = y(axisCoordinate(yAxis, r));
      svg.rect(cx - cellW / 2, cy - cellH / 2, cellW, cellH, paint(grid[r][c]));
    }
  }

  let segments: Segment[] = [];
  if (valueColumn === "log10_g2") {
    segments = marchingSquares(grid, 0.0);
    for (const [a, b] of segments) {
      svg.line(
        x(axisCoordinate(xAxis, a.c)), y(axisCoordinate(yAxis, a.r)),
        x(axisCoordinate(xAxis, b.c)), y(axisCoordinate(yAxis, b.r)),
        'stroke="black" stroke-width="1.5" stroke-dasharray="2,3"',
      );
    }
  }

  drawFrame(svg, frame,
    AXIS_LABELS[xAxis.name] ?? xAxis.name, AXIS_LABELS[yAxis.name] ?? yAxis.name);
  const preset = (file.meta["preset"] as string) ?? "";
  title(svg, `${valueColumn} ${preset ? `(${preset})` : ""}`.trim());
  return { svg: svg.toString(), contourSegments: segments.length, plotData: plotData(file) };
}

// ------------------------------------------------------------------ slice

function renderSlice(files: DataFile[], _options: RenderOptions): RenderResult {
  const curves: Array<{ label: string; xs: number[]; ys: number[] }> = [];
  for (const file of files) {
    requireColumns(file, SWEEP_COLUMNS, "slice");
    const ax = axes(file);
    if (ax.length !== 1) {
      throw new CsvFormatError(`slice needs a one-axis sweep, file has ${ax.length}`);
    }
    if (ax[0].count < 2) {
      throw new CsvFormatError("slice needs at least two grid points");
    }
    const dirs = directions(file);
    const dirCount = Math.max(1, dirs.length);
    const values = column(file, "log10_g2");
    const preset = (file.meta["preset"] as string) ?? "";
    for (let d = 0; d < dirCount; d++) {
      const xs: number[] = [];
      const ys: number[] = [];
      for (let i = 0; i < ax[0].count; i++) {
        xs.push(axisCoordinate(ax[0], i));
        ys.push(values[i * dirCount + d]);
      }
      curves.push({ label: `${preset} ${dirs[d] ?? ""}`.trim(), xs, ys });
    }
  }
  const allX = curves.flatMap((c) => c.xs);
  const allY = curves.flatMap((c) => c.ys);
  const [xMin, xMax] = finiteRange(allX);
  const [yMin, yMax] = finiteRange(allY);
  const pad = 0.05 * (yMax - yMin || 1);
  const frame = plotFrame(xMin, xMax, Math.min(yMin - pad, -pad), yMax + pad);
  const svg = new Svg(CANVAS_W, CANVAS_H);
  const { x, y } = frameTransform(frame);

  // unity reference: log10 g2 = 0
  svg.line(x(frame.xMin), y(0), x(frame.xMax), y(0),
    'stroke="#2e7d32" stroke-width="1" stroke-dasharray="6,4"');

  curves.forEach((curve, i) => {
    const pts: Array<[number, number]> = [];
    for (let k = 0; k < curve.xs.length; k++) {
      if (Number.isFinite(curve.ys[k])) {
        pts.push([x(curve.xs[k]), y(curve.ys[k])]);
      }
    }
    svg.polyline(pts, `stroke="${CURVE_COLORS[i % CURVE_COLORS.length]}" stroke-width="1.5"`);
    svg.text(CANVAS_W - MARGIN.right - 4, MARGIN.top + 14 * (i + 1),
      curve.label || `curve ${i + 1}`,
      `font-size="10" text-anchor="end" fill="${CURVE_COLORS[i % CURVE_COLORS.length]}"`);
  });

  const xAxisMeta = axes(files[0])[0];
  drawFrame(svg, frame, AXIS_LABELS[xAxisMeta.name] ?? xAxisMeta.name, "log10 g2(0)");
  title(svg, "second-order correlation slice");
  const joined = files.map(plotData).join("");
  return { svg: svg.toString(), contourSegments: 0, plotData: joined };
}

// --------------------------------------------------------------- contrast

function renderContrast(file: DataFile, _options: RenderOptions): RenderResult {
  requireColumns(file, SWEEP_COLUMNS, "contrast");
  if (file.meta["kind"] !== "cmax") {
    throw new CsvFormatError("contrast rendering expects a maximized-contrast scan file");
  }
  // two rows (forward, backward) per coupling; contrast and delta repeat
  const gammas: number[] = [];
  const cmax: number[] = [];
  const deltaMax: number[] = [];
  const gammaCol = column(file, "gamma_diss");
  const contrastCol = column(file, "contrast");
  const deltaCol = column(file, "delta");
  for (let i = 0; i < gammaCol.length; i += 2) {
    gammas.push(gammaCol[i]);
    cmax.push(contrastCol[i]);
    deltaMax.push(deltaCol[i]);
  }
  const [gLo, gHi] = finiteRange(gammas);
  const frame = plotFrame(gLo, gHi || gLo + 1, 0, 1);
  const svg = new Svg(CANVAS_W, CANVAS_H);
  const { x, y } = frameTransform(frame);
  const pts: Array<[number, number]> = gammas.map((g, i) => [x(g), y(cmax[i])]);
  if (pts.length > 1) {
    svg.polyline(pts, 'stroke="#1565c0" stroke-width="1.5"');
  }
  for (const [px, py] of pts) {
    svg.raw(`<circle cx="${px.toFixed(2)}" cy="${py.toFixed(2)}" r="3" fill="#1565c0"/>`);
  }
  drawFrame(svg, frame, AXIS_LABELS["gamma_diss"], "maximized contrast");

  // inset: maximizing detuning versus coupling
  const inset: Frame = {
    x0: CANVAS_W - 220, y0: CANVAS_H - 200, width: 150, height: 100,
    xMin: gLo, xMax: gHi || gLo + 1,
    yMin: Math.min(...deltaMax, -12), yMax: Math.max(...deltaMax, 12),
  };
  svg.rect(inset.x0, inset.y0, inset.width, inset.height, "#f6f6f6");
  const it = frameTransform(inset);
  const ipts: Array<[number, number]> = gammas.map((g, i) => [it.x(g), it.y(deltaMax[i])]);
  if (ipts.length > 1) {
    svg.polyline(ipts, 'stroke="#c62828" stroke-width="1.2"');
  }
  for (const [px, py] of ipts) {
    svg.raw(`<circle cx="${px.toFixed(2)}" cy="${py.toFixed(2)}" r="2" fill="#c62828"/>`);
  }
  svg.text(inset.x0 + inset.width / 2, inset.y0 + inset.height + 12,
    "maximizing detuning", 'font-size="9" text-anchor="middle"');
  title(svg, "bidirectional contrast scan");
  return { svg: svg.toString(), contourSegments: 0, plotData: plotData(file) };
}

// ---------------------------------------------------------------- spectra

const SPECTRA_COLUMNS = ["gamma_diss", "theta", "n", "branch", "re", "im"];

function renderSpectra(file: DataFile, _options: RenderOptions): RenderResult {
  requireColumns(file, SPECTRA_COLUMNS, "spectra");
  const gamma = column(file, "gamma_diss");
  const theta = column(file, "theta");
  const n = column(file, "n");
  const branch = column(file, "branch");
  const im = column(file, "im");

  // group curves by (branch, theta, n), sorted for determinism
  const key = (i: number) => `${branch[i]}|${theta[i]}|${n[i]}`;
  const grouped = new Map<string, number[]>();
  for (let i = 0; i < gamma.length; i++) {
    const k = key(i);
    if (!grouped.has(k)) {
      grouped.set(k, []);
    }
    grouped.get(k)!.push(i);
  }
  const keys = [...grouped.keys()].sort();

  const [gLo, gHi] = finiteRange(gamma);
  const [iLo, iHi] = finiteRange(im);
  const pad = 0.05 * (iHi - iLo || 1);
  const panelW = (CANVAS_W - MARGIN.left - MARGIN.right - 40) / 2;
  const svg = new Svg(CANVAS_W, CANVAS_H);
  let panelIndex = 0;
  for (const wantBranch of [-1, 1]) {
    const frame: Frame = {
      x0: MARGIN.left + panelIndex * (panelW + 40),
      y0: MARGIN.top,
      width: panelW,
      height: CANVAS_H - MARGIN.top - MARGIN.bottom,
      xMin: gLo, xMax: gHi || gLo + 1, yMin: iLo - pad, yMax: iHi + pad,
    };
    const { x, y } = frameTransform(frame);
    let colorIndex = 0;
    for (const k of keys) {
      const idx = grouped.get(k)!;
      if (branch[idx[0]] !== wantBranch) {
        continue;
      }
      const ordered = [...idx].sort((a, b) => gamma[a] - gamma[b]);
      const pts: Array<[number, number]> = ordered.map((i) => [x(gamma[i]), y(im[i])]);
      const dash = theta[idx[0]] === 0 ? "" : ' stroke-dasharray="5,3"';
      const color = CURVE_COLORS[colorIndex % CURVE_COLORS.length];
      if (pts.length > 1) {
        svg.polyline(pts, `stroke="${color}" stroke-width="1.5"${dash}`);
      }
      colorIndex += 1;
    }
    drawFrame(svg, frame, AXIS_LABELS["gamma_diss"],
      wantBranch < 0 ? "Im (lower branch)" : "Im (upper branch)");
    panelIndex += 1;
  }
  title(svg, "dressed-level linewidths (solid: port 1, dashed: port 2)");
  return { svg: svg.toString(), contourSegments: 0, plotData: plotData(file) };
}

// ------------------------------------------------------------------ entry

export function render(files: DataFile[], options: RenderOptions): RenderResult {
  if (files.length === 0) {
    throw new CsvFormatError("no input files");
  }
  switch (options.kind) {
    case "heatmap":
      if (files.length !== 1) {
        throw new CsvFormatError("heatmap takes exactly one input file");
      }
      return renderHeatmap(files[0], options);
    case "slice":
      return renderSlice(files, options);
    case "contrast":
      if (files.length !== 1) {
        throw new CsvFormatError("contrast takes exactly one input file");
      }
      return renderContrast(files[0], options);
    case "spectra":
      if (files.length !== 1) {
        throw new CsvFormatError("spectra takes exactly one input file");
      }
      return renderSpectra(files[0], options);
    default:
      throw new CsvFormatError(`unknown figure kind ${JSON.stringify(options.kind)}`);
  }
}
