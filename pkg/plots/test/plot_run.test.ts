import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterEach, describe, expect, it, vi } from "vitest";
import { renderChart } from "../src/chart.js";
import { parseRunCsv, RUN_CSV_HEADER } from "../src/csv.js";
import { metricSeries } from "../src/series.js";
import { main } from "../src/plot_run.js";
import { decodePng } from "./helpers.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));
const PRESETS = ["case1", "case2", "case3", "case4", "case5-uniform"];

const haveGenerator = spawnSync("minplus-so3", ["--help"]).error === undefined;

function tmpFile(name: string): string {
  return join(mkdtempSync(join(tmpdir(), "plot-run-")), name);
}

function quiet(): { out: string[]; err: string[] } {
  const out: string[] = [];
  const err: string[] = [];
  vi.spyOn(console, "log").mockImplementation((...args) => {
    out.push(args.join(" "));
  });
  vi.spyOn(console, "error").mockImplementation((...args) => {
    err.push(args.join(" "));
  });
  return { out, err };
}

afterEach(() => {
  vi.restoreAllMocks();
});

describe("plot_run on the preset runs", () => {
  for (const preset of PRESETS) {
    it(`renders ${preset} with series that mirror the CSV exactly`, () => {
      const csvPath = join(FIXTURES, `${preset}.csv`);
      const outPath = tmpFile(`${preset}.png`);
      const { out } = quiet();

      expect(main(["--csv", csvPath, "--out", outPath])).toBe(0);
      expect(out.join("\n")).toContain(outPath);
      const png = decodePng(readFileSync(outPath));
      expect(png.width).toBe(800);
      expect(png.height).toBe(480);
      expect(png.colorType).toBe(6);

      // Independent read of the raw text: the plotted series must carry the
      // CSV columns bit for bit, in the documented order.
      const text = readFileSync(csvPath, "utf8");
      const chart = renderChart(metricSeries(parseRunCsv(text)), { title: preset });
      expect(chart.series).toHaveLength(2);
      expect(chart.series[0]!.label).toBe("measurement noise");
      expect(chart.series[1]!.label).toBe("tracking error");

      const lines = text.split("\n").filter((l) => l.length > 0);
      const body = lines.slice(1).map((l) => l.split(","));
      expect(chart.series[0]!.values).toHaveLength(body.length);
      body.forEach((cells, i) => {
        expect(Object.is(chart.series[0]!.t[i], Number(cells[0]))).toBe(true);
        expect(Object.is(chart.series[0]!.values[i], Number(cells[1]))).toBe(true);
        expect(Object.is(chart.series[1]!.values[i], Number(cells[2]))).toBe(true);
      });

      // The time axis starts at zero and ends at the final sample.
      expect(chart.xDomain[0]).toBe(0);
      expect(chart.xDomain[1]).toBe(Number(body[body.length - 1]![0]));
    });
  }

  it.skipIf(!haveGenerator)("fixtures are reproducible from the run CLI", () => {
    const outPath = tmpFile("regen.csv");
    const res = spawnSync("minplus-so3", [
      "run",
      "--preset",
      "case1",
      "--seed",
      "1",
      "--out",
      outPath,
    ]);
    expect(res.status).toBe(0);
    expect(readFileSync(outPath)).toEqual(readFileSync(join(FIXTURES, "case1.csv")));
  });
});

describe("plot_run failure modes", () => {
  it("rejects missing required flags with usage", () => {
    const { err } = quiet();
    expect(main([])).toBe(2);
    expect(main(["--csv", "x.csv"])).toBe(2);
    expect(err.join("\n")).toContain("usage:");
  });

  it("rejects an unknown flag", () => {
    const { err } = quiet();
    expect(main(["--csv", "a", "--out", "b", "--wat"])).toBe(2);
    expect(err.join("\n")).toContain("--wat");
  });

  it("rejects a non-integer smoothing window", () => {
    const { err } = quiet();
    expect(main(["--csv", "a", "--out", "b", "--smooth", "2.5"])).toBe(2);
    expect(main(["--csv", "a", "--out", "b", "--smooth", "0"])).toBe(2);
    expect(err.join("\n")).toContain("--smooth");
  });

  it("fails on a missing input file", () => {
    const { err } = quiet();
    expect(main(["--csv", "/no/such/file.csv", "--out", tmpFile("x.png")])).toBe(1);
    expect(err.join("\n")).toContain("no such file");
  });

  it("reports the offending row of a malformed CSV", () => {
    const csvPath = tmpFile("bad.csv");
    const good = readFileSync(join(FIXTURES, "case1.csv"), "utf8").split("\n");
    writeFileSync(csvPath, [good[0], good[1], "1,2,3"].join("\n") + "\n");
    const { err } = quiet();
    expect(main(["--csv", csvPath, "--out", tmpFile("x.png")])).toBe(1);
    expect(err.join("\n")).toContain("row 3");
  });

  it("fails on a header-only file instead of plotting nothing", () => {
    const csvPath = tmpFile("empty.csv");
    writeFileSync(csvPath, RUN_CSV_HEADER + "\n");
    const { err } = quiet();
    expect(main(["--csv", csvPath, "--out", tmpFile("x.png")])).toBe(1);
    expect(err.join("\n")).toContain("no data rows");
  });

  it("fails when the output directory does not exist", () => {
    const { err } = quiet();
    const csvPath = join(FIXTURES, "case2.csv");
    expect(main(["--csv", csvPath, "--out", "/no/such/dir/x.png"])).toBe(1);
    expect(err.length).toBeGreaterThan(0);
  });

  it("accepts a smoothing window and a custom title", () => {
    quiet();
    const outPath = tmpFile("smooth.png");
    const args = ["--csv", join(FIXTURES, "case4.csv"), "--out", outPath];
    expect(main([...args, "--smooth", "9", "--title", "smoothed run"])).toBe(0);
    expect(decodePng(readFileSync(outPath)).width).toBe(800);
  });
});
