/**
 * CLI: render one benchmark CSV to one SVG figure.
 *
 *   node dist/main.js --in fig8.csv --kind lines_vs_k --out fig8.svg [--peak 8.0]
 *
 * Exit codes: 0 success (including an empty but schema-valid CSV, which
 * only warns), 2 usage or schema errors, 3 I/O errors.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { parseCsv, RowError, SchemaError } from "./schema.js";
import { PLOT_KINDS, PlotDataError, PlotKind, renderPlot } from "./plots.js";

interface Args {
  input: string;
  kind: PlotKind;
  output: string;
  peak: number | null;
}

function usage(): string {
  return `usage: --in <csv> --kind <${PLOT_KINDS.join("|")}> --out <svg> [--peak <flops/cycle>]`;
}

function parseArgs(argv: string[]): Args {
  let input: string | undefined;
  let kind: string | undefined;
  let output: string | undefined;
  let peak: number | null = null;
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      throw new Error(`flag ${flag} needs a value\n${usage()}`);
    }
    switch (flag) {
      case "--in":
        input = value;
        break;
      case "--kind":
        kind = value;
        break;
      case "--out":
        output = value;
        break;
      case "--peak": {
        const v = Number(value);
        if (!Number.isFinite(v) || v <= 0) {
          throw new Error(`--peak must be a positive number, got ${value}`);
        }
        peak = v;
        break;
      }
      default:
        throw new Error(`unknown flag ${flag}\n${usage()}`);
    }
    i++;
  }
  if (!input || !kind || !output) {
    throw new Error(`--in, --kind, and --out are required\n${usage()}`);
  }
  if (!(PLOT_KINDS as readonly string[]).includes(kind)) {
    throw new Error(`unknown kind ${kind}; expected one of ${PLOT_KINDS.join(", ")}`);
  }
  return { input, kind: kind as PlotKind, output, peak };
}

export function run(argv: string[], log: (msg: string) => void = console.error): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    log(`error: ${(err as Error).message}`);
    return 2;
  }

  let text: string;
  try {
    text = readFileSync(args.input, "utf8");
  } catch (err) {
    log(`io error: ${(err as Error).message}`);
    return 3;
  }

  let svg: string;
  let empty = false;
  try {
    const rows = parseCsv(text);
    empty = rows.length === 0;
    svg = renderPlot(args.kind, rows, args.peak);
  } catch (err) {
    if (err instanceof SchemaError || err instanceof RowError || err instanceof PlotDataError) {
      log(`schema error: ${err.message}`);
      return 2;
    }
    throw err;
  }

  try {
    writeFileSync(args.output, svg);
  } catch (err) {
    log(`io error: ${(err as Error).message}`);
    return 3;
  }
  if (empty) {
    log(`warning: ${args.input} has no data rows; wrote an empty figure`);
  }
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
