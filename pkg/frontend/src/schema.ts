/**
 * Benchmark CSV contract.
 *
 * The producer writes a fixed 18-column header; optional knobs are empty
 * strings when a variant does not expose them. This parser is the only
 * coupling to the producer: everything downstream works on BenchRow.
 */

export const REQUIRED_COLUMNS = [
  "variant",
  "M",
  "K",
  "N",
  "sparsity_num",
  "sparsity_den",
  "UF",
  "MR",
  "NR",
  "B",
  "g",
  "reps",
  "median_ns",
  "flops",
  "flops_per_sec",
  "flops_per_cycle",
  "adds",
  "mults",
] as const;

export interface BenchRow {
  variant: string;
  M: number;
  K: number;
  N: number;
  sparsityNum: number;
  sparsityDen: number;
  UF: number | null;
  MR: number | null;
  NR: number | null;
  B: number | null;
  g: number | null;
  reps: number;
  medianNs: number;
  flops: number;
  flopsPerSec: number;
  flopsPerCycle: number | null;
  adds: number | null;
  mults: number | null;
}

/** Header is missing required columns. Carries their names for reporting. */
export class SchemaError extends Error {
  readonly missing: string[];

  constructor(missing: string[]) {
    super(`CSV is missing required columns: ${missing.join(", ")}`);
    this.name = "SchemaError";
    this.missing = missing;
  }
}

/** A structurally broken data row (wrong field count, non-numeric value). */
export class RowError extends Error {
  constructor(line: number, detail: string) {
    super(`CSV row ${line}: ${detail}`);
    this.name = "RowError";
  }
}

function requireNumber(raw: string, line: number, column: string): number {
  const v = Number(raw);
  if (raw === "" || !Number.isFinite(v)) {
    throw new RowError(line, `column ${column} has non-numeric value ${JSON.stringify(raw)}`);
  }
  return v;
}

function optionalNumber(raw: string, line: number, column: string): number | null {
  return raw === "" ? null : requireNumber(raw, line, column);
}

/**
 * Parse CSV text into rows. Throws SchemaError when the header lacks any
 * required column, RowError on malformed data lines. A header-only file
 * parses to an empty row list; that case is the caller's to report.
 */
export function parseCsv(text: string): BenchRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError([...REQUIRED_COLUMNS]);
  }
  const header = (lines[0] ?? "").split(",");
  const position = new Map<string, number>();
  header.forEach((name, i) => position.set(name, i));
  const missing = REQUIRED_COLUMNS.filter((c) => !position.has(c));
  if (missing.length > 0) {
    throw new SchemaError(missing);
  }

  const take = (fields: string[], column: string): string =>
    fields[position.get(column) as number] ?? "";

  const rows: BenchRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = (lines[i] ?? "").split(",");
    if (fields.length !== header.length) {
      throw new RowError(i + 1, `expected ${header.length} fields, found ${fields.length}`);
    }
    const lineNo = i + 1;
    rows.push({
      variant: take(fields, "variant"),
      M: requireNumber(take(fields, "M"), lineNo, "M"),
      K: requireNumber(take(fields, "K"), lineNo, "K"),
      N: requireNumber(take(fields, "N"), lineNo, "N"),
      sparsityNum: requireNumber(take(fields, "sparsity_num"), lineNo, "sparsity_num"),
      sparsityDen: requireNumber(take(fields, "sparsity_den"), lineNo, "sparsity_den"),
      UF: optionalNumber(take(fields, "UF"), lineNo, "UF"),
      MR: optionalNumber(take(fields, "MR"), lineNo, "MR"),
      NR: optionalNumber(take(fields, "NR"), lineNo, "NR"),
      B: optionalNumber(take(fields, "B"), lineNo, "B"),
      g: optionalNumber(take(fields, "g"), lineNo, "g"),
      reps: requireNumber(take(fields, "reps"), lineNo, "reps"),
      medianNs: requireNumber(take(fields, "median_ns"), lineNo, "median_ns"),
      flops: requireNumber(take(fields, "flops"), lineNo, "flops"),
      flopsPerSec: requireNumber(take(fields, "flops_per_sec"), lineNo, "flops_per_sec"),
      flopsPerCycle: optionalNumber(take(fields, "flops_per_cycle"), lineNo, "flops_per_cycle"),
      adds: optionalNumber(take(fields, "adds"), lineNo, "adds"),
      mults: optionalNumber(take(fields, "mults"), lineNo, "mults"),
    });
  }
  return rows;
}

/** Density as a display string, e.g. "1/2". */
export function sparsityLabel(row: BenchRow): string {
  return `${row.sparsityNum}/${row.sparsityDen}`;
}

/** Density as a number in (0, 1]. */
export function sparsityValue(row: BenchRow): number {
  return row.sparsityNum / row.sparsityDen;
}
