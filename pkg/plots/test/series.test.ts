import { describe, expect, it } from "vitest";
import { RunRow } from "../src/csv.js";
import {
  MEAS_NOISE_COLOR,
  metricSeries,
  movingAverage,
  TRACKING_ERROR_COLOR,
} from "../src/series.js";

const EYE = [1, 0, 0, 0, 1, 0, 0, 0, 1];

function rows(mn: number[], te: number[]): RunRow[] {
  return mn.map((m, i) => ({
    t: 0.1 * (i + 1),
    measNoise: m,
    trackingError: te[i]!,
    value: 0,
    termCount: 1,
    rhat: EYE,
    rtrue: EYE,
    y: EYE,
  }));
}

describe("metricSeries", () => {
  it("produces measurement noise then tracking error", () => {
    const out = metricSeries(rows([0.1, 0.2], [0.3, 0.4]));
    expect(out).toHaveLength(2);
    expect(out[0]!.label).toBe("measurement noise");
    expect(out[1]!.label).toBe("tracking error");
    expect(out[0]!.color).toEqual(MEAS_NOISE_COLOR);
    expect(out[1]!.color).toEqual(TRACKING_ERROR_COLOR);
  });

  it("passes values through untouched without smoothing", () => {
    const mn = [0.5, 0.25, 0.125];
    const te = [1e-300, 2.220446049250313e-16, 4.0];
    const out = metricSeries(rows(mn, te));
    expect(out[0]!.values).toEqual(mn);
    expect(out[1]!.values).toEqual(te);
    out[1]!.values.forEach((v, i) => {
      expect(Object.is(v, te[i])).toBe(true);
    });
    expect(out[0]!.t).toEqual([1, 2, 3].map((k) => 0.1 * k));
  });

  it("labels smoothed series with the window size", () => {
    const out = metricSeries(rows([1, 1, 1, 1], [2, 2, 2, 2]), 3);
    expect(out[0]!.label).toBe("measurement noise (avg 3)");
    expect(out[1]!.label).toBe("tracking error (avg 3)");
  });
});

describe("movingAverage", () => {
  it("is the identity for window 1", () => {
    const v = [3, 1, 4, 1, 5];
    expect(movingAverage(v, 1)).toBe(v);
  });

  it("averages a centered window, shrinking at the edges", () => {
    expect(movingAverage([1, 2, 3, 4, 5], 3)).toEqual([1.5, 2, 3, 4, 4.5]);
    expect(movingAverage([2, 4], 5)).toEqual([3, 3]);
  });

  it("keeps a constant signal constant", () => {
    expect(movingAverage([7, 7, 7, 7], 4)).toEqual([7, 7, 7, 7]);
  });

  it("rejects a non-positive or fractional window", () => {
    expect(() => movingAverage([1], 0)).toThrow(/window/);
    expect(() => movingAverage([1], 2.5)).toThrow(/window/);
  });
});
