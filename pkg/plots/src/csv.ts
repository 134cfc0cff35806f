/**
 * Parser for the attitude-filter run log CSV.
 *
 * The wire format is fixed: a 32-column header (five scalar columns, then
 * three row-major 3x3 matrices), LF newlines, one row per filter step.
 */

export const RUN_CSV_HEADER =
  "t,meas_noise,tracking_error,value,term_count," +
  ["rhat", "rtrue", "y"]
    .flatMap((name) => [0, 1, 2].flatMap((i) => [0, 1, 2].map((j) => `${name}_${i}${j}`)))
    .join(",");

export const COLUMNS = 32;

export interface RunRow {
  t: number;
  measNoise: number;
  trackingError: number;
  value: number;
  termCount: number;
  rhat: number[];
  rtrue: number[];
  y: number[];
}

/** Parse failure; `row` is the 1-based line number in the file. */
export class CsvError extends Error {
  readonly row: number;

  constructor(row: number, message: string) {
    super(`row ${row}: ${message}`);
    this.row = row;
  }
}

function num(cell: string, row: number, name: string): number {
  if (cell === "" || isNaN(Number(cell))) {
    throw new CsvError(row, `column ${name} is not a number: ${JSON.stringify(cell)}`);
  }
  return Number(cell);
}

export function parseRunCsv(text: string): RunRow[] {
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0 || lines[0] !== RUN_CSV_HEADER) {
    throw new CsvError(1, "missing or mismatched header");
  }
  const rows: RunRow[] = [];
  for (let k = 1; k < lines.length; k++) {
    const row = k + 1;
    const cells = lines[k]!.split(",");
    if (cells.length !== COLUMNS) {
      throw new CsvError(row, `expected ${COLUMNS} columns, got ${cells.length}`);
    }
    const termCount = num(cells[4]!, row, "term_count");
    if (!Number.isInteger(termCount) || termCount < 1) {
      throw new CsvError(row, `term_count must be a positive integer, got ${cells[4]}`);
    }
    rows.push({
      t: num(cells[0]!, row, "t"),
      measNoise: num(cells[1]!, row, "meas_noise"),
      trackingError: num(cells[2]!, row, "tracking_error"),
      value: num(cells[3]!, row, "value"),
      termCount,
      rhat: cells.slice(5, 14).map((c, i) => num(c, row, `rhat[${i}]`)),
      rtrue: cells.slice(14, 23).map((c, i) => num(c, row, `rtrue[${i}]`)),
      y: cells.slice(23, 32).map((c, i) => num(c, row, `y[${i}]`)),
    });
  }
  return rows;
}
