/**
 * Line-chart rendering for run metrics.  Pure layout and pixel work; the
 * caller decides where the bytes go.
 */

import { MetricSeries } from "./series.js";
import { Point, Raster, Rgb, textHeight, textWidth } from "./raster.js";

export interface ChartOptions {
  title: string;
  width?: number;
  height?: number;
}

export interface RenderedChart {
  raster: Raster;
  /** Exactly the series that were drawn, in draw order. */
  series: MetricSeries[];
  xDomain: [number, number];
  yDomain: [number, number];
}

const BACKGROUND: Rgb = [255, 255, 255];
const TEXT: Rgb = [40, 40, 40];
const AXIS: Rgb = [70, 70, 70];
const GRID: Rgb = [225, 225, 225];
const LEGEND_BORDER: Rgb = [160, 160, 160];

const X_LABEL = "time (s)";
const Y_LABEL = "metric value";

/** Round a raw interval up to the nearest 1/2/5 times a power of ten. */
export function niceStep(span: number, target: number): number {
  const raw = span / Math.max(1, target);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [1, 2, 5]) {
    if (raw <= m * mag) {
      return m * mag;
    }
  }
  return 10 * mag;
}

export function ticks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) {
    throw new Error(`bad tick range [${lo}, ${hi}]`);
  }
  const step = niceStep(hi - lo, target);
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function formatTick(v: number, step: number): string {
  if (v === 0) {
    return "0";
  }
  if (step < 1e-3 || Math.abs(v) >= 1e5) {
    return v.toExponential(1).replace(/\.0e/, "e");
  }
  const decimals = step >= 1 ? 0 : Math.min(6, Math.ceil(-Math.log10(step) - 1e-9));
  return v.toFixed(decimals);
}

export function renderChart(series: MetricSeries[], opts: ChartOptions): RenderedChart {
  if (series.length === 0) {
    throw new Error("nothing to plot: no series");
  }
  const width = opts.width ?? 800;
  const height = opts.height ?? 480;
  const raster = new Raster(width, height, BACKGROUND);

  const left = 72;
  const right = width - 20;
  const top = 44;
  const bottom = height - 48;

  let xMax = 0;
  let yMax = 0;
  for (const s of series) {
    for (const t of s.t) {
      xMax = Math.max(xMax, t);
    }
    for (const v of s.values) {
      yMax = Math.max(yMax, v);
    }
  }
  const xDomain: [number, number] = [0, xMax > 0 ? xMax : 1];
  const yDomain: [number, number] = [0, yMax > 0 ? yMax * 1.05 : 1];

  const px = (x: number) => left + ((x - xDomain[0]) / (xDomain[1] - xDomain[0])) * (right - left);
  const py = (y: number) => bottom - ((y - yDomain[0]) / (yDomain[1] - yDomain[0])) * (bottom - top);

  // Grid and tick labels.
  const xStep = niceStep(xDomain[1] - xDomain[0], 8);
  const yStep = niceStep(yDomain[1] - yDomain[0], 6);
  for (const tx of ticks(xDomain[0], xDomain[1], 8)) {
    const x = Math.round(px(tx));
    raster.drawLine(x, top, x, bottom, GRID);
    raster.drawLine(x, bottom, x, bottom + 4, AXIS);
    const label = formatTick(tx, xStep);
    raster.drawText(x - textWidth(label) / 2, bottom + 8, label, TEXT);
  }
  for (const ty of ticks(yDomain[0], yDomain[1], 6)) {
    const y = Math.round(py(ty));
    raster.drawLine(left, y, right, y, GRID);
    raster.drawLine(left - 4, y, left, y, AXIS);
    const label = formatTick(ty, yStep);
    raster.drawText(left - 8 - textWidth(label), y - textHeight() / 2, label, TEXT);
  }

  // Plot frame.
  raster.drawLine(left, top, left, bottom, AXIS);
  raster.drawLine(left, bottom, right, bottom, AXIS);
  raster.drawLine(left, top, right, top, GRID);
  raster.drawLine(right, top, right, bottom, GRID);

  // Curves.
  for (const s of series) {
    const pts: Point[] = s.t.map((t, i) => ({ x: px(t), y: py(s.values[i]!) }));
    raster.drawPolyline(pts, s.color, 2);
  }

  // Legend, top-right inside the frame.
  const swatch = 18;
  const pad = 6;
  const rowH = textHeight() + 5;
  let legendW = 0;
  for (const s of series) {
    legendW = Math.max(legendW, swatch + 6 + textWidth(s.label));
  }
  const legendX = right - legendW - 2 * pad - 8;
  const legendY = top + 8;
  raster.fillRect(legendX, legendY, legendW + 2 * pad, series.length * rowH + 2 * pad - 5, BACKGROUND);
  raster.drawLine(legendX, legendY, legendX + legendW + 2 * pad, legendY, LEGEND_BORDER);
  raster.drawLine(legendX, legendY + series.length * rowH + 2 * pad - 5, legendX + legendW + 2 * pad, legendY + series.length * rowH + 2 * pad - 5, LEGEND_BORDER);
  raster.drawLine(legendX, legendY, legendX, legendY + series.length * rowH + 2 * pad - 5, LEGEND_BORDER);
  raster.drawLine(legendX + legendW + 2 * pad, legendY, legendX + legendW + 2 * pad, legendY + series.length * rowH + 2 * pad - 5, LEGEND_BORDER);
  series.forEach((s, i) => {
    const y = legendY + pad + i * rowH;
    raster.drawLine(legendX + pad, y + 3, legendX + pad + swatch, y + 3, s.color, 2);
    raster.drawText(legendX + pad + swatch + 6, y - 1, s.label, TEXT);
  });

  // Title and axis labels.
  raster.drawText((width - textWidth(opts.title, 2)) / 2, 12, opts.title, TEXT, 2);
  raster.drawText((left + right - textWidth(X_LABEL)) / 2, height - 16, X_LABEL, TEXT);
  raster.drawText(8, top - 16, Y_LABEL, TEXT);

  return { raster, series, xDomain, yDomain };
}
