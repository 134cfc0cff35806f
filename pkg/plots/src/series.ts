import type { RunRow } from "./csv.js";

/** One curve: time stamps, values, and how to draw it. */
export interface MetricSeries {
  label: string;
  color: [number, number, number];
  t: number[];
  values: number[];
}

export const MEAS_NOISE_COLOR: [number, number, number] = [31, 119, 180];
export const TRACKING_ERROR_COLOR: [number, number, number] = [214, 39, 40];

/**
 * The two per-step diagnostic curves of a run, in a fixed order:
 * measurement noise first, tracking error second.  Values are taken from the
 * CSV unchanged unless a smoothing window > 1 is given.
 */
export function metricSeries(rows: RunRow[], smoothWindow = 1): MetricSeries[] {
  const t = rows.map((r) => r.t);
  const meas = rows.map((r) => r.measNoise);
  const te = rows.map((r) => r.trackingError);
  return [
    {
      label: smoothLabel("measurement noise", smoothWindow),
      color: MEAS_NOISE_COLOR,
      t,
      values: movingAverage(meas, smoothWindow),
    },
    {
      label: smoothLabel("tracking error", smoothWindow),
      color: TRACKING_ERROR_COLOR,
      t,
      values: movingAverage(te, smoothWindow),
    },
  ];
}

function smoothLabel(base: string, window: number): string {
  return window > 1 ? `${base} (avg ${window})` : base;
}

/**
 * Centered moving average; the window shrinks near the ends so the output
 * has the same length as the input.  A window of 1 returns the input as-is.
 */
export function movingAverage(values: number[], window: number): number[] {
  if (!Number.isInteger(window) || window < 1) {
    throw new Error(`smoothing window must be a positive integer, got ${window}`);
  }
  if (window === 1) return values;
  const half = Math.floor(window / 2);
  return values.map((_, i) => {
    const lo = Math.max(0, i - half);
    const hi = Math.min(values.length - 1, i + half);
    let sum = 0;
    for (let j = lo; j <= hi; j++) sum += values[j]!;
    return sum / (hi - lo + 1);
  });
}
