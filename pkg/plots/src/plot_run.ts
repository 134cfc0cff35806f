#!/usr/bin/env node
/**
 * Render a run CSV to a PNG line chart of measurement noise and tracking
 * error over time.
 *
 *   plot_run --csv run.csv --out run.png [--smooth N] [--title text]
 */

import { parseArgs } from "node:util";
import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";
import { pathToFileURL } from "node:url";
import { parseRunCsv } from "./csv.js";
import { metricSeries } from "./series.js";
import { renderChart } from "./chart.js";
import { encodePng } from "./png.js";

const USAGE = "usage: plot_run --csv <path> --out <path> [--smooth N] [--title text]";

export function main(argv: string[]): number {
  let values: { csv?: string; out?: string; smooth?: string; title?: string };
  try {
    values = parseArgs({
      args: argv,
      options: {
        csv: { type: "string" },
        out: { type: "string" },
        smooth: { type: "string" },
        title: { type: "string" },
      },
      strict: true,
    }).values;
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    console.error(USAGE);
    return 2;
  }
  if (values.csv === undefined || values.out === undefined) {
    console.error(USAGE);
    return 2;
  }
  let smooth = 1;
  if (values.smooth !== undefined) {
    smooth = Number(values.smooth);
    if (!Number.isInteger(smooth) || smooth < 1) {
      console.error(`--smooth must be a positive integer, got ${values.smooth}`);
      return 2;
    }
  }

  try {
    const text = readFileSync(values.csv, "utf8");
    const rows = parseRunCsv(text);
    if (rows.length === 0) {
      throw new Error(`${values.csv}: no data rows`);
    }
    const title = values.title ?? basename(values.csv).replace(/\.[^.]*$/, "");
    const chart = renderChart(metricSeries(rows, smooth), { title });
    const png = encodePng(chart.raster.pixels, chart.raster.width, chart.raster.height);
    writeFileSync(values.out, png);
    console.log(`wrote: ${values.out}`);
    return 0;
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    return 1;
  }
}

const isEntryPoint =
  process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href;
if (isEntryPoint) {
  process.exitCode = main(process.argv.slice(2));
}
